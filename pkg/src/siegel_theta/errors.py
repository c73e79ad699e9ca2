"""Exception types raised by the library."""


class ThetaError(Exception):
    """Base class for all library errors."""


class DomainError(ThetaError, ValueError):
    """An input lies outside the domain of the requested quantity."""


class NonPositiveDefinite(DomainError):
    pass


class NonSymmetric(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class WrongGenus(DomainError):
    pass


class UnsupportedGenus(DomainError):
    pass


class SingularFactor(DomainError):
    pass


class PoleAt1(DomainError):
    pass


class OnDiscriminantLocus(DomainError):
    pass


class DegenerateOrbit(DomainError):
    pass


class ToleranceUnreachable(ThetaError):
    """The radius cap was hit before the requested tolerance in strict mode."""
