"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class OutOfBranchError(DomainError):
    """Asymptotic formula requested outside its stated parameter branch."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (eigensolver, non-convergent quadrature)."""
