"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for bad input
(the CLI maps these to exit code 2) and :class:`NumericalError` for
computations that failed or produced inconsistent results (exit code 3).
"""


class SzegoqError(Exception):
    """Base class for all package errors."""


class ValidationError(SzegoqError, ValueError):
    """Input rejected before any computation."""


class NumericalError(SzegoqError, ArithmeticError):
    """A computation failed to converge or violated an internal check."""


class IndexOutOfRange(ValidationError, IndexError):
    pass


class DomainError(ValidationError):
    pass


class InsufficientLookahead(ValidationError):
    """A band-width rule needs steps beyond the stored ordering."""


class EvalAtZero(ValidationError, ZeroDivisionError):
    pass


class NonUnimodularU(ValidationError):
    pass


class QuasiDefiniteUnsupported(ValidationError):
    pass


class ZeroSchurParameterInDegenerateCase(ValidationError):
    """Three-term recurrence needs delta_{n-1} != 0 when s(n-2) == s(n-1)."""


class MomentRangeExceeded(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


class RootPolishDiverged(NumericalError):
    pass


class WeightFormulaMismatch(NumericalError):
    """The two weight formulas disagree; indicates a bug, not bad input."""


class BandViolation(NumericalError):
    """A matrix entry outside the predicted band is not negligible."""
