"""Exception hierarchy shared by the closed-form code, the oracle and the CLI."""


class HKError(Exception):
    """Base class for every error raised by hkdensity."""

    exit_code = 1


class ValidationError(HKError, ValueError):
    """Input violates a structural constraint (ranks, degrees, orderings)."""

    exit_code = 2


class InconsistentHNError(ValidationError):
    """HN data that cannot belong to the syzygy bundle of the given sequence."""


class BudgetExceededError(HKError):
    """An oracle computation would exceed the configured degree/level budget.

    ``partial`` carries whatever was computed before the budget was hit.
    """

    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InvariantViolation(HKError):
    """A cross-check failed: envelope breach or backend disagreement."""

    exit_code = 4
