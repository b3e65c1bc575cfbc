"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates the precondition of an operation."""


class ConditionNotMetError(ValueError):
    """A bound was requested for a generator outside its validity range.

    ``inequality`` carries a human readable form of the failing condition.
    """

    def __init__(self, message, inequality=None):
        super().__init__(message)
        self.inequality = inequality


class BoundViolationError(RuntimeError):
    """A sampled class member exceeded a theoretical bound."""

    def __init__(self, message, spec=None, value=None, bound=None):
        super().__init__(message)
        self.spec = spec
        self.value = value
        self.bound = bound


class SingularJacobianError(ArithmeticError):
    """The denominator ``g(z) + J_g(z) z`` vanished."""
