"""The binary quadratic form ``X^2 + cXY + dY^2`` raised to ``p-2`` over F_p.

Covers the coefficient vector of ``(T^2 + cT + d)^(p-2)``, the cancellation
at the middle index, the weighted power sum and involution behind it, and
the low-degree representative ``R(X, Y)`` together with its coefficient
matrix. The matrix is built twice: once from the index map and once by
interpolating the tabulated function, so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConsistencyError, DomainError, HypothesisNotMetError
from .fp_linalg import FpMatrix, rank_fp
from .modmath import jacobi_symbol, mod_inverse, mod_pow, require_prime


@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p; ``coeffs[k]`` is the coefficient of ``T**k``."""

    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], p: int) -> FpPoly:
        c = [x % p for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return cls(p, tuple(c) or (0,))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __mul__(self, other: FpPoly) -> FpPoly:
        if self.p != other.p:
            raise DomainError("modulus mismatch")
        p = self.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly.from_coeffs(out, p)

    def __call__(self, t: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * t + a) % self.p
        return acc


def poly_pow_mod_p(f: FpPoly, e: int) -> FpPoly:
    if e < 0:
        raise DomainError("negative exponent")
    result = FpPoly.from_coeffs([1], f.p)
    base = f
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def quadratic(c: int, d: int, p: int) -> FpPoly:
    """``f(T) = T^2 + cT + d``."""
    return FpPoly.from_coeffs([d, c, 1], p)


@dataclass(frozen=True)
class AlphaCoeffs:
    p: int
    c: int
    d: int
    alpha: tuple[int, ...]  # alpha[a] is the coefficient of T**a, a = 0 .. 2p-4
    m: int  # (p - 3) // 2


def _check_p(p: int) -> None:
    require_prime(p, minimum=5)


def alpha_coeffs(c: int, d: int, p: int) -> AlphaCoeffs:
    _check_p(p)
    c, d = c % p, d % p
    f = poly_pow_mod_p(quadratic(c, d, p), p - 2)
    alpha = f.coeffs + (0,) * (2 * p - 3 - len(f.coeffs))
    if len(alpha) != 2 * p - 3 or alpha[-1] != 1:
        raise ConsistencyError(f"(T^2+cT+d)^(p-2) is not monic of degree 2p-4 for p={p}")
    return AlphaCoeffs(p, c, d, alpha, (p - 3) // 2)


def critical_cancellation(c: int, d: int, p: int) -> int:
    """``alpha_m + alpha_{m+p-1} mod p``; zero whenever d is a non-residue."""
    ac = alpha_coeffs(c, d, p)
    return (ac.alpha[ac.m] + ac.alpha[ac.m + p - 1]) % p


def involution_identity_check(c: int, d: int, p: int, t: int) -> bool:
    """Evaluate both sides of ``f(d/t) = d t^-2 f(t)`` in F_p."""
    require_prime(p, minimum=3)
    if d % p == 0:
        raise DomainError("d must be nonzero mod p")
    if t % p == 0:
        raise DomainError("t must be nonzero mod p")
    f = quadratic(c, d, p)
    t_inv = mod_inverse(t, p)
    lhs = f(d * t_inv % p)
    rhs = d * t_inv * t_inv * f(t) % p
    return lhs == rhs


def weighted_power_sum(c: int, d: int, p: int) -> int:
    """Direct sum of ``f(t)^(p-2) * t^(-m)`` over the nonzero residues."""
    _check_p(p)
    if d % p == 0:
        raise DomainError("d must be nonzero mod p")
    f = quadratic(c, d, p)
    m = (p - 3) // 2
    return sum(mod_pow(f(t), p - 2, p) * mod_pow(mod_inverse(t, p), m, p) for t in range(1, p)) % p


def exponent_reduce(e: int, p: int) -> int:
    """Exponent in ``{0} | {1..p-1}`` with ``z**e == z**reduced`` on all of F_p."""
    if e < 0:
        raise DomainError("negative exponent")
    if e == 0:
        return 0
    return (e - 1) % (p - 1) + 1


def reduced_coeff_matrix(c: int, d: int, p: int) -> FpMatrix:
    """Coefficient matrix of R(X, Y), assembled from the alpha vector.

    Entry (r, s) is the coefficient of ``X^r Y^s``. The monomial
    ``X^a Y^(2p-4-a)`` lands on the reduced exponent pair; since the total
    degree is below 2p-2 at most one exponent ever wraps.
    """
    ac = alpha_coeffs(c, d, p)
    a = ac.alpha
    placed: dict[tuple[int, int], int] = {}

    def put(r, s, value):
        if (r, s) in placed:
            raise ConsistencyError(f"index groups overlap at {(r, s)} for p={p}")
        placed[(r, s)] = value % p

    put(0, p - 3, a[0])
    for r in range(1, p - 3):
        put(r, p - 3 - r, a[r] + a[r + p - 1])
    put(p - 3, 0, a[2 * p - 4])
    put(p - 3, p - 1, a[p - 3])
    put(p - 2, p - 2, a[p - 2])
    put(p - 1, p - 3, a[p - 1])

    rows = [[0] * p for _ in range(p)]
    for (r, s), v in placed.items():
        rows[r][s] = v
    return FpMatrix(p, tuple(map(tuple, rows)))


def _lagrange_basis(p: int) -> list[list[int]]:
    """Row k holds the coefficients of the Lagrange basis polynomial for node k."""
    basis = []
    for k in range(p):
        num = FpPoly.from_coeffs([1], p)
        denom = 1
        for j in range(p):
            if j != k:
                num = num * FpPoly.from_coeffs([-j, 1], p)
                denom = denom * (k - j) % p
        scale = mod_inverse(denom, p)
        coeffs = list(num.coeffs) + [0] * (p - len(num.coeffs))
        basis.append([x * scale % p for x in coeffs])
    return basis


def lagrange_interpolate(values: Sequence[int], p: int) -> list[int]:
    """Coefficients (length p) of the polynomial of degree < p taking ``values[k]`` at k."""
    basis = _lagrange_basis(p)
    out = [0] * p
    for v, row in zip(values, basis):
        if v:
            out = [(o + v * b) % p for o, b in zip(out, row)]
    return out


def interpolate_representative(c: int, d: int, p: int) -> FpMatrix:
    """Coefficient matrix recovered from the values of the form on F_p x F_p.

    Interpolates in x for each fixed y, then interpolates each resulting
    coefficient as a function of y.
    """
    _check_p(p)
    table = [
        [mod_pow(x * x + c * x * y + d * y * y, p - 2, p) for y in range(p)] for x in range(p)
    ]
    # by_y[y][r] = coefficient of X^r once y is fixed
    by_y = [lagrange_interpolate([table[x][y] for x in range(p)], p) for y in range(p)]
    rows = [lagrange_interpolate([by_y[y][r] for y in range(p)], p) for r in range(p)]
    return FpMatrix(p, tuple(map(tuple, rows)))


def evaluate_representative(C: FpMatrix, x: int, y: int) -> int:
    p = C.p
    xs = [pow(x, r, p) for r in range(C.shape[0])]
    ys = [pow(y, s, p) for s in range(C.shape[1])]
    return sum(xs[r] * C[r, s] * ys[s] for r in range(C.shape[0]) for s in range(C.shape[1])) % p


def rank_bound_C(c: int, d: int, p: int) -> int:
    """Rank of the coefficient matrix, refused unless d is a non-residue mod p."""
    _check_p(p)
    if jacobi_symbol(d, p) != -1:
        raise HypothesisNotMetError(f"({d}/{p}) != -1")
    rank = rank_fp(reduced_coeff_matrix(c, d, p))
    if rank > p - 2:
        raise ConsistencyError(f"rank {rank} exceeds p-2 for (c, d, p) = {(c, d, p)}")
    return rank
