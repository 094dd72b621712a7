"""Exception types raised by the nclp library."""


class NclpError(Exception):
    """Base class for all nclp errors."""


class ShapeError(NclpError):
    """A block matrix does not match the shape prescribed by its algebra."""


class AlgebraMismatchError(NclpError):
    """Two operands live in incompatible block algebras."""


class NotPositiveError(NclpError):
    """An element required to be positive semidefinite is not, beyond tolerance."""


class NonFaithfulError(NclpError):
    """A weight required to be faithful has a kernel."""


class GradingError(NclpError):
    """A grading violates the constraints of the requested operation."""


class UnsolvableError(NclpError):
    """The division p @ x = y has no solution; carries the best residual."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ConditionViolatedError(NclpError):
    """A numerical precondition (e.g. x*x = y*y) fails beyond tolerance."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class NotModuleMapError(NclpError):
    """A linear map fails right-module linearity; carries the worst residual."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ValidationError(NclpError):
    """An operator-valued weight violates positivity or the bimodule law."""
