"""Exception hierarchy shared by all modules."""


class SunDetError(Exception):
    pass


class DomainError(SunDetError, ValueError):
    """An argument lies outside the domain of the operation."""


class NotInvertibleError(DomainError, ZeroDivisionError):
    """A residue with no multiplicative inverse was inverted."""


class HypothesisNotMetError(DomainError):
    """Refusal: the operation's contract is a conclusion whose hypothesis fails."""


class ConsistencyError(SunDetError, RuntimeError):
    """Two independent computations disagree. Always indicates a bug."""


class TheoremViolation(SunDetError, AssertionError):
    """An in-hypothesis cell failed the congruence."""

    def __init__(self, record):
        super().__init__(f"congruence fails for {record.params}: D mod n^2 = {record.d_mod_n2}")
        self.record = record
