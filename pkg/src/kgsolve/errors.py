"""Exception types shared across the package."""


class KgsolveError(Exception):
    """Base class for all package-specific errors."""


class DomainError(KgsolveError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NegativeRadicand(KgsolveError, ValueError):
    """A square-root argument in the derived parameter set came out negative."""

    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"radicand {name} = {value!r} is negative")


class ComplexDeltaPrime(KgsolveError, ValueError):
    """Over-critical coupling: the effective angular parameter would be complex."""


class UnboundEnergy(KgsolveError, ValueError):
    """|E| exceeds the asymptotic mass beyond tolerance; no decaying tail exists."""


class NotNormalizable(KgsolveError, ValueError):
    """State sits at (or beyond) the continuum threshold; its norm integral diverges."""


class NoConvergence(KgsolveError, RuntimeError):
    """Adaptive routine stalled above the requested tolerance."""


class NoSignChange(KgsolveError, RuntimeError):
    """Eigenvalue bracket contains no eigenvalue of the requested kind."""


class StiffnessFailure(KgsolveError, RuntimeError):
    """Integrator cannot meet the requested local tolerance within its step budget."""


class ConfigMismatch(KgsolveError, ValueError):
    """Computed result and reference row refer to different configurations."""
