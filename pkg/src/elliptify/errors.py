"""Exception hierarchy shared by every module of the package."""


class MappingError(Exception):
    """Base class for all package errors."""


class DomainError(MappingError, ValueError):
    """A point lies outside the domain of the requested mapping."""


class CapabilityError(MappingError):
    """A mapping direction is unavailable (no closed form and no fallback)."""


class ParamError(MappingError, ValueError):
    """A mapping parameter is outside its admissible range."""


class NumericError(MappingError, ArithmeticError):
    """A discriminant or intermediate went negative beyond rounding noise."""


class ConvergenceError(MappingError, ArithmeticError):
    """An iterative method exhausted its iteration budget."""


class NonMonotoneError(ConvergenceError):
    """A 1-D root bracket could not be established."""


class SingularJacobianError(ConvergenceError):
    """The finite-difference Jacobian became singular during Newton steps."""
