"""Exception hierarchy shared by every module of the package."""


class TuranError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstance(TuranError, ValueError):
    """The pair (p, q) does not describe a valid support length p/q."""


class NotCoprime(InvalidInstance):
    pass


class SupportTooLarge(InvalidInstance):
    pass


class InvalidQ(TuranError, ValueError):
    """A closed form was asked for a denominator outside its range."""


class InfeasibleB(TuranError):
    """Breakpoint heights give a negative cosine polynomial at some residue."""


class ConstraintViolation(TuranError):
    """A residue-class vector violates the Problem 1 constraints."""


class NumericalBreakdown(TuranError):
    """The simplex tableau became too ill-conditioned to continue."""


class MembershipViolation(TuranError):
    """A function fails one of the defining conditions of the class K(h)."""


class FamilyMismatch(TuranError, ValueError):
    """The support length does not belong to the requested expansion family."""


class DegenerateFit(TuranError):
    """Remainders are too small to fit a log-log slope."""


class BudgetExceeded(TuranError):
    """A brute-force oracle was asked for an instance beyond its size budget."""
