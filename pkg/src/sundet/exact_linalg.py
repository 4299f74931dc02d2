"""Exact integer matrix kernels.

Two independent determinant routes (fraction-free elimination and a
multi-modular CRT reconstruction) and a Smith normal form with transforms.
Matrices are plain lists of rows of Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, DomainError
from .fp_linalg import rank_fp, reduce_mod

IntMatrix = list[list[int]]

# Below 2**31 so every product of two residues fits in an int64.
_POOL_TOP = 2**31
_POOL_WINDOW = 2**16


def _check_square(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    if n == 0:
        raise DomainError("empty matrix")
    if any(len(row) != n for row in A):
        raise DomainError("matrix is not square")
    return n


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def det_bareiss(A: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination; every division is exact."""
    n = _check_square(A)
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            a_ik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - a_ik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def hadamard_bound(A: Sequence[Sequence[int]]) -> int:
    """Integer upper bound on |det A|: ceil of the product of row norms."""
    sq = prod(sum(x * x for x in row) for row in A)
    r = isqrt(sq)
    return r if r * r == sq else r + 1


@lru_cache(maxsize=None)
def _pool_window(k: int) -> tuple[int, ...]:
    """Primes in the k-th window below 2**31, descending; a plain segmented sieve."""
    hi = _POOL_TOP - k * _POOL_WINDOW
    lo = hi - _POOL_WINDOW
    small = _small_primes(isqrt(hi) + 1)
    mark = np.ones(hi - lo, dtype=bool)
    for q in small:
        start = max(q * q, (lo + q - 1) // q * q)
        mark[start - lo :: q] = False
    return tuple(int(lo + i) for i in np.nonzero(mark)[0][::-1])


@lru_cache(maxsize=1)
def _small_primes(limit: int) -> tuple[int, ...]:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, isqrt(limit) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return tuple(int(q) for q in np.nonzero(sieve)[0])


def crt_primes(bound: int) -> list[int]:
    """Fixed descending pool of primes below 2**31, taken until the product exceeds ``bound``."""
    out = []
    product = 1
    k = 0
    while True:
        for q in _pool_window(k):
            out.append(q)
            product *= q
            if product > bound:
                return out
        k += 1


def _vec_pow(base: np.ndarray, exp: np.ndarray, mod: np.ndarray) -> np.ndarray:
    result = np.ones_like(base)
    base = base % mod
    exp = exp.copy()
    while exp.any():
        odd = (exp & 1).astype(bool)
        result = np.where(odd, result * base % mod, result)
        base = base * base % mod
        exp >>= 1
    return result


def det_mod_primes(A: Sequence[Sequence[int]], primes: Sequence[int]) -> list[int]:
    """Determinant of A modulo each prime, eliminating for all primes at once.

    Pivot choice is per prime (first nonzero entry in the column).
    """
    n = _check_square(A)
    k = len(primes)
    P = np.array(primes, dtype=np.int64)
    obj = np.array([[int(x) for x in row] for row in A], dtype=object)
    M = (obj[None, :, :] % np.array(primes, dtype=object)[:, None, None]).astype(np.int64)
    det = np.ones(k, dtype=np.int64)
    idx = np.arange(k)
    Pc = P[:, None]
    for col in range(n):
        nz = M[:, col:, col] != 0
        has = nz.any(axis=1)
        det[~has] = 0
        piv = nz.argmax(axis=1) + col
        moved = piv != col
        if moved.any():
            r_col = M[idx, col].copy()
            M[idx, col] = M[idx, piv]
            M[idx, piv] = r_col
            det = np.where(moved & has, (P - det) % P, det)
        pivot = M[:, col, col]
        det = det * pivot % P
        if col == n - 1:
            break
        inv = _vec_pow(pivot, P - 2, P)
        factor = M[:, col + 1 :, col] * inv[:, None] % Pc
        M[:, col + 1 :, col:] = (
            M[:, col + 1 :, col:] - factor[:, :, None] * M[:, col : col + 1, col:] % P[:, None, None]
        ) % P[:, None, None]
    return [int(x) for x in det]


def crt_combine(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Combine pairwise-coprime congruences; returns (x, M) with 0 <= x < M."""
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        # x + m*t = r (mod q)
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
    return x, m


def det_crt(A: Sequence[Sequence[int]]) -> int:
    """Determinant from residues modulo word-size primes, lifted symmetrically."""
    _check_square(A)
    primes = crt_primes(2 * hadamard_bound(A) + 1)
    x, m = crt_combine(det_mod_primes(A, primes), primes)
    return x - m if x > m // 2 else x


def det_checked(A: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant cross-checked against the CRT route."""
    a = det_bareiss(A)
    b = det_crt(A)
    if a != b:
        raise ConsistencyError(f"determinant routes disagree: bareiss={a} crt={b}")
    return a


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    s: list[int]
    V: IntMatrix


def smith_normal_form(A: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form ``U A V = diag(s)`` with unimodular U and V.

    Pivots on the smallest nonzero absolute value left in the trailing block.
    Invariant factors are nonnegative and form a divisibility chain with
    zeros at the end.
    """
    n = _check_square(A)
    M = [list(row) for row in A]
    U = identity(n)
    V = identity(n)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (M, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for X in (M, U):
            X[dst] = [a + q * b for a, b in zip(X[dst], X[src])]

    def add_col(dst, src, q):
        for X in (M, V):
            for row in X:
                row[dst] += q * row[src]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    v = abs(M[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            pivot = M[t][t]
            clean = True
            for i in range(t + 1, n):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // pivot))
                    clean = clean and M[i][t] == 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // pivot))
                    clean = clean and M[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if M[i][j] % pivot),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
    return SnfResult(U, [M[i][i] for i in range(n)], V)


def rank_defect_divisibility_check(A: Sequence[Sequence[int]], p: int) -> tuple[int, int, bool]:
    """Rank of A mod p, the defect r = N - rank, and whether p**r divides det A."""
    n = _check_square(A)
    rank = rank_fp(reduce_mod(A, p))
    r = n - rank
    return rank, r, det_bareiss(A) % p**r == 0
