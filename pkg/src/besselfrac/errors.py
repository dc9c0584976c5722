"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureError(RuntimeError):
    """A quadrature failed hard (NaN integrand, divergence, ...)."""


class PreconditionError(ValueError):
    """A documented hypothesis of an operator route is violated (strict mode)."""


class PreconditionWarning(UserWarning):
    """Advisory notice that a documented hypothesis may be violated."""
