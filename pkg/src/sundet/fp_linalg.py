"""Dense matrices over the prime field F_p."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .modmath import mod_inverse, require_prime


@dataclass(frozen=True)
class FpMatrix:
    """Immutable matrix of residues in ``[0, p)``."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.p < 2:
            raise DomainError(f"modulus must be >= 2, got {self.p}")
        width = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != width:
                raise DomainError("ragged matrix")
            if any(not 0 <= x < self.p for x in row):
                raise DomainError(f"entry outside [0, {self.p})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> FpMatrix:
        return cls(p, tuple(tuple(x % p for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int, p: int) -> FpMatrix:
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> FpMatrix:
        return cls(p, tuple((0,) * cols for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, tuple(zip(*self.rows)))


def reduce_mod(A: Sequence[Sequence[int]], p: int) -> FpMatrix:
    require_prime(p)
    return FpMatrix.from_rows(A, p)


def row_echelon(A: FpMatrix) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form and the pivot columns.

    Pivots on the first nonzero entry of each column.
    """
    p = A.p
    R = A.to_lists()
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i][col]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = mod_inverse(R[r][col], p)
        R[r] = [x * inv % p for x in R[r]]
        pivot_row = R[r]
        for i in range(nrows):
            f = R[i][col]
            if i != r and f:
                R[i] = [(x - f * y) % p for x, y in zip(R[i], pivot_row)]
        pivots.append(col)
        r += 1
    return R, pivots


def rank_fp(A: FpMatrix) -> int:
    return len(row_echelon(A)[1])


def det_fp(A: FpMatrix) -> int:
    n, m = A.shape
    if n != m:
        raise DomainError("determinant of a non-square matrix")
    p = A.p
    R = A.to_lists()
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if R[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            R[col], R[piv] = R[piv], R[col]
            det = -det
        det = det * R[col][col] % p
        inv = mod_inverse(R[col][col], p)
        for i in range(col + 1, n):
            f = R[i][col] * inv % p
            if f:
                R[i] = [(x - f * y) % p for x, y in zip(R[i], R[col])]
    return det % p


def matmul_fp(A: FpMatrix, B: FpMatrix) -> FpMatrix:
    if A.p != B.p:
        raise DomainError(f"modulus mismatch: {A.p} vs {B.p}")
    if A.shape[1] != B.shape[0]:
        raise DomainError(f"cannot multiply {A.shape} by {B.shape}")
    p = A.p
    cols = list(zip(*B.rows))
    return FpMatrix(
        p,
        tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols) for row in A.rows),
    )


def vandermonde_fp(p: int) -> FpMatrix:
    """Matrix with entry (i, r) equal to ``i**r mod p``, using ``0**0 = 1``."""
    require_prime(p)
    return FpMatrix(p, tuple(tuple(pow(i, r, p) for r in range(p)) for i in range(p)))
