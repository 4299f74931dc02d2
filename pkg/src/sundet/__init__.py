"""Exact verification of det[(i^2+cij+dj^2)^(n-2)] = 0 (mod n^2) and its proof steps."""

from .errors import (
    ConsistencyError,
    DomainError,
    HypothesisNotMetError,
    NotInvertibleError,
    SunDetError,
    TheoremViolation,
)
from .sun_core import SunParams, VerificationRecord, compute_dn, verify_theorem

__all__ = [
    "ConsistencyError",
    "DomainError",
    "HypothesisNotMetError",
    "NotInvertibleError",
    "SunDetError",
    "TheoremViolation",
    "SunParams",
    "VerificationRecord",
    "compute_dn",
    "verify_theorem",
]
