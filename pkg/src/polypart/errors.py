"""Exception types shared across the package.

Each carries the exit code the command line front-end maps it to.
"""


class PolypartError(Exception):
    exit_code = 1


class DimensionMismatch(PolypartError, ValueError):
    """Operands live in spaces of different dimension."""


class ParseError(PolypartError, ValueError):
    exit_code = 2


class NoCandidate(PolypartError):
    """No enumerated hyperplane bisects the input (degenerate position)."""

    exit_code = 3


class SearchFailed(PolypartError):
    """The hyperplane search exhausted its budget without a certificate.

    ``residual`` is the best smoothed objective seen; ``partial`` optionally
    holds whatever prefix of work was completed before the failure.
    """

    exit_code = 3

    def __init__(self, message, residual=float("nan"), partial=None):
        super().__init__(message)
        self.residual = residual
        self.partial = partial


class BoundViolation(PolypartError):
    exit_code = 4

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BudgetExceeded(PolypartError):
    exit_code = 5


class GenericPositionViolated(PolypartError):
    """A witness point fell inside the sign tolerance band of a polynomial."""
