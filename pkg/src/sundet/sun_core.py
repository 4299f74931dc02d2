"""The determinant ``D_n(c, d) = det[(i^2 + cij + dj^2)^(n-2)]`` and its proof steps.

Composite n goes through the Vandermonde factor ``V_n`` and its valuations;
prime n through the mod-p factorization ``M = V C V^T`` and the rank of C.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Optional, Sequence

from .errors import ConsistencyError, DomainError, TheoremViolation
from .exact_linalg import IntMatrix, det_bareiss, det_checked
from .fp_linalg import matmul_fp, rank_fp, reduce_mod, vandermonde_fp
from .modmath import factorize, is_prime, jacobi_symbol, require_prime, valuation
from .quadform_fp import reduced_coeff_matrix

COMPOSITE = "composite"
PRIME = "prime"


@dataclass(frozen=True, order=True)
class SunParams:
    n: int
    c: int
    d: int

    def __post_init__(self):
        if self.n <= 3:
            raise DomainError(f"n must exceed 3, got {self.n}")


@dataclass(frozen=True)
class VerificationRecord:
    params: SunParams
    n_class: str
    symbol_d: Optional[int]  # None for composite n
    hypothesis_met: bool
    d_mod_n2: int
    theorem_holds: bool
    decomposition_rank: Optional[int] = None
    ms: Optional[float] = None

    def __post_init__(self):
        if (self.symbol_d is None) != (self.n_class == COMPOSITE):
            raise DomainError("symbol_d is defined exactly for prime n")

    @property
    def violated(self) -> bool:
        return self.hypothesis_met and not self.theorem_holds


def build_sun_matrix(params: SunParams) -> IntMatrix:
    n, c, d = params.n, params.c, params.d
    e = n - 2
    return [[(i * i + c * i * j + d * j * j) ** e for j in range(n)] for i in range(n)]


def compute_dn(params: SunParams) -> int:
    """Exact D_n(c, d); Bareiss and CRT must agree or ConsistencyError is raised."""
    return det_checked(build_sun_matrix(params))


def vandermonde_product(xs: Sequence[int]) -> int:
    """``prod_{r<s} (x_s - x_r)``."""
    return prod(xs[s] - xs[r] for r, s in combinations(range(len(xs)), 2))


def vn_product(n: int) -> int:
    if n < 2:
        raise DomainError(f"V_n needs n >= 2, got {n}")
    pairwise = vandermonde_product(range(n))
    powers = prod(k ** (n - k) for k in range(1, n))
    if pairwise != powers:
        raise ConsistencyError(f"V_{n}: pairwise product {pairwise} != power product {powers}")
    return powers


def vn_valuation(n: int, p: int) -> int:
    """``nu_p(V_n)`` as ``sum_k (n - k) nu_p(k)``, without forming V_n."""
    require_prime(p)
    return sum((n - k) * valuation(k, p) for k in range(p, n, p))


def composite_audit(n: int) -> dict[int, tuple[int, int]]:
    """For each ``p^alpha || n``, the pair ``(alpha, nu_p(V_n))``."""
    if n <= 3 or is_prime(n):
        raise DomainError(f"expected a composite n > 3, got {n}")
    return {p: (alpha, vn_valuation(n, p)) for p, alpha in sorted(factorize(n).items())}


def check_composite_case(n: int) -> bool:
    """Whether n divides V_n, decided prime power by prime power."""
    return all(v >= alpha for alpha, v in composite_audit(n).values())


def specialization_divisibility(
    n: int, c: int, d: int, x: Sequence[int], y: Sequence[int]
) -> bool:
    """Whether ``V(x) V(y)`` divides ``det[(x_i^2 + c x_i y_j + d y_j^2)^(n-2)]``."""
    if len(x) != n or len(y) != n:
        raise DomainError(f"node vectors must have length {n}")
    if len(set(x)) != n or len(set(y)) != n:
        raise DomainError("node vectors must have pairwise distinct entries")
    e = n - 2
    phi = det_bareiss([[(xi * xi + c * xi * yj + d * yj * yj) ** e for yj in y] for xi in x])
    return phi % (vandermonde_product(x) * vandermonde_product(y)) == 0


def prime_decomposition_check(p: int, c: int, d: int) -> tuple[int, bool]:
    """Check ``M = V C V^T`` over F_p and return ``(rank M, True)``.

    A factorization mismatch is a bug, not a mathematical outcome, and raises.
    """
    require_prime(p, minimum=5)
    M = reduce_mod(build_sun_matrix(SunParams(p, c, d)), p)
    V = vandermonde_fp(p)
    C = reduced_coeff_matrix(c, d, p)
    if matmul_fp(matmul_fp(V, C), V.transpose()) != M:
        raise ConsistencyError(f"M != V C V^T for (p, c, d) = {(p, c, d)}")
    return rank_fp(M), True


def verify_theorem(
    params: SunParams, *, strict: bool = True, decompose: bool = False
) -> VerificationRecord:
    """Evaluate one (n, c, d) cell.

    With ``strict`` an in-hypothesis failure raises TheoremViolation; without
    it the record is returned for the caller to judge. ``decompose`` also runs
    the mod-p factorization for prime n and stores the rank of M.
    """
    start = time.perf_counter()
    n = params.n
    if is_prime(n):
        n_class = PRIME
        symbol = jacobi_symbol(params.d, n)
        hypothesis = symbol == -1
    else:
        n_class = COMPOSITE
        symbol = None
        hypothesis = True
    residue = compute_dn(params) % (n * n)
    rank = None
    if decompose and n_class == PRIME:
        rank, _ = prime_decomposition_check(n, params.c, params.d)
    rec = VerificationRecord(
        params=params,
        n_class=n_class,
        symbol_d=symbol,
        hypothesis_met=hypothesis,
        d_mod_n2=residue,
        theorem_holds=residue == 0,
        decomposition_rank=rank,
        ms=(time.perf_counter() - start) * 1000.0,
    )
    if strict and rec.violated:
        raise TheoremViolation(rec)
    return rec
