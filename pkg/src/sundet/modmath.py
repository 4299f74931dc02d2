"""Scalar modular arithmetic and the quadratic residue symbol."""

from __future__ import annotations

from .errors import DomainError, NotInvertibleError


def mod_pow(base: int, exp: int, p: int) -> int:
    """Return ``base**exp`` reduced into ``[0, p)``.

    ``exp == 0`` gives 1 for every base, zero included.
    """
    if p < 2:
        raise DomainError(f"modulus must be >= 2, got {p}")
    if exp < 0:
        raise DomainError(f"exponent must be nonnegative, got {exp}")
    return pow(base % p, exp, p)


def mod_inverse(a: int, p: int) -> int:
    if p < 2:
        raise DomainError(f"modulus must be >= 2, got {p}")
    try:
        return pow(a % p, -1, p)
    except ValueError:
        raise NotInvertibleError(f"{a} is not invertible modulo {p}") from None


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 3, via the reciprocity loop."""
    if n < 3 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd n >= 3, got {n}")
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def euler_criterion(d: int, p: int) -> int:
    """``d**((p-1)/2) mod p`` mapped onto {-1, 0, +1}."""
    if p < 3 or p % 2 == 0:
        raise DomainError(f"Euler's criterion needs an odd prime, got {p}")
    r = mod_pow(d, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def power_sum(k: int, p: int) -> int:
    """Sum of ``t**k`` over the nonzero residues mod p, by direct summation.

    Negative k uses inverses. The result is ``p - 1`` when ``(p-1) | k`` and 0
    otherwise.
    """
    if p < 3 or p % 2 == 0:
        raise DomainError(f"power_sum needs an odd prime, got {p}")
    total = 0
    for t in range(1, p):
        base = t if k >= 0 else mod_inverse(t, p)
        total += pow(base, abs(k), p)
    return total % p


def is_prime(n: int) -> bool:
    """Deterministic trial division; meant for the small n used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{p: alpha}`` of ``n >= 1`` by trial division."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(m: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if m == 0:
        raise DomainError("valuation of 0 is infinite")
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def require_prime(p: int, *, minimum: int = 2) -> None:
    if p < minimum or not is_prime(p):
        raise DomainError(f"expected a prime >= {minimum}, got {p}")
