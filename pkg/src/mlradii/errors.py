"""Exception hierarchy.

The CLI maps these onto exit codes: invalid input -> 2, parameters outside
the real-zero region -> 3, numerical failure -> 4.
"""


class MLRadiiError(Exception):
    exit_code = 4


class InvalidParameters(MLRadiiError, ValueError):
    exit_code = 2


class DomainError(MLRadiiError, ValueError):
    """Argument outside the interval where a ratio is defined."""

    exit_code = 2


class InvalidBracket(MLRadiiError, ValueError):
    exit_code = 2


class ParamsNotAdmitted(MLRadiiError):
    exit_code = 3


class NonConvergence(MLRadiiError, ArithmeticError):
    exit_code = 4


class PrecisionLoss(NonConvergence):
    """Cancellation in the series is too large to resolve a sign or a zero."""


class ZeroRealityViolation(NonConvergence):
    def __init__(self, msg, location=None):
        super().__init__(msg)
        self.location = location


class ConvergenceFailure(NonConvergence):
    pass


class TailNotConverged(ConvergenceFailure):
    pass


class InsufficientZeroTable(NonConvergence):
    pass
