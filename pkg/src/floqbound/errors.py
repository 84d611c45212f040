"""Exception types shared across the package."""


class FloqboundError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(FloqboundError):
    """Shapes or multiplicities are inconsistent with the ambient dimension."""


class NonConvergence(FloqboundError):
    """An iterative eigenvalue computation failed to converge."""


class Singular(FloqboundError):
    """A matrix required to be invertible is singular or too ill-conditioned."""


class NonFinite(FloqboundError):
    """A computation produced NaN or infinity."""


class StepLimitExceeded(FloqboundError):
    """An integration exceeded its step budget."""


class NotDichotomic(FloqboundError):
    """A spectral projection was requested but eigenvalues sit on the unit circle."""


class ParseError(FloqboundError):
    """A system description file could not be parsed."""


class ValidationError(FloqboundError):
    """A parsed or constructed object violates a documented constraint."""
