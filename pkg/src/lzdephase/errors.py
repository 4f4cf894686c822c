"""Exception hierarchy for lzdephase."""


class LZDephaseError(Exception):
    """Base class for all package errors."""


class DegenerateSpectrumError(LZDephaseError):
    """Eigenprojections requested for a (numerically) degenerate Hermitian matrix."""


class SingularTransportError(LZDephaseError):
    """Transport solution denominator vanishes (zero dephasing at a closed gap)."""


class IntegrationError(LZDephaseError):
    """ODE integration failed. ``s`` and ``state`` hold the last accepted point."""

    def __init__(self, message, s=None, state=None):
        super().__init__(message)
        self.s = s
        self.state = state


class StepSizeUnderflow(IntegrationError):
    pass


class TooManyEvaluations(IntegrationError):
    pass


class QuadratureError(LZDephaseError):
    """Adaptive quadrature hit its subdivision limit."""


class NumericalQualityError(LZDephaseError):
    """A retained density matrix violated trace, Hermiticity or positivity bounds."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConfigError(LZDephaseError):
    """Invalid user configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
