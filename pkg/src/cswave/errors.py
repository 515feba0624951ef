"""Exception types shared across the package."""


class CSWaveError(Exception):
    """Base class for all library errors."""


class DomainError(CSWaveError):
    """Input violates a documented precondition."""


class PoleError(DomainError):
    """Argument lies on (or too close to) a pole of the evaluated function."""


class ZeroError(DomainError):
    """Argument lies on the zero lattice of the double sine function."""


class DegenerateInput(DomainError):
    """Inputs too close to a singular hyperplane of an exact identity."""


class QuadratureError(CSWaveError):
    """Base class for quadrature failures."""


class DepthExceeded(QuadratureError):
    """Error estimate not met within the allowed subdivision depth."""


class NonFinite(QuadratureError):
    """Integrand returned NaN or Inf."""


class NonConvergence(CSWaveError):
    """A limit or series check failed to converge as required."""


class StepTooLarge(CSWaveError):
    """Finite-difference step failed the Richardson consistency check."""
