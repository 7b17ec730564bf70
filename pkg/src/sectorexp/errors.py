"""Exception types shared across the package."""


class SectorError(ValueError):
    """A point or angle lies outside the admissible sector."""


class AngleDomainError(ValueError):
    """Angles violate the admissible range of a formula."""


class DomainError(ValueError):
    """A spectral point lies outside the half-plane domains of the transform."""


class ContourError(ValueError):
    """Contour construction failed (bad vertex, no chord intersection, ...)."""


class QuadratureError(RuntimeError):
    """Quadrature preconditions violated or the panel budget was exhausted."""


class EvaluationOverflow(ArithmeticError):
    """The function value is not representable; use the log-magnitude channel."""


class AngleMismatchError(AngleDomainError):
    """The argument of z does not match the direction a contour was built for."""
