"""Exception hierarchy shared by the numerical kernels and the CLI."""


class SpectralZetaError(Exception):
    """Base class for all library errors."""


class DomainError(SpectralZetaError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""

    def __init__(self, location, message=None):
        self.location = location
        super().__init__(message or f"pole at s={location}")


class DivergentRegion(DomainError):
    """A Dirichlet series was asked for outside its half-plane of convergence."""


class DivergentExpansion(DomainError):
    """A power-series expansion was used outside its disc of convergence."""


class NonConstantRemainder(SpectralZetaError, ArithmeticError):
    """Polynomial is not a polynomial in the requested u = x^2 + beta*x."""


class ToleranceNotMet(SpectralZetaError, ArithmeticError):
    """Numerical refinement could not reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        self.achieved = achieved
        super().__init__(message)
