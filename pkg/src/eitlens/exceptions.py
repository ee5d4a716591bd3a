"""Exception hierarchy with machine-readable error categories.

Every error carries a short ``category`` string that the CLI prints and
maps to an exit status, so scripted callers can branch on failures
without parsing prose.
"""


class EitlensError(Exception):
    """Base class for all package errors."""

    category = "runtime"


class ConfigError(EitlensError):
    """Invalid configuration file or command-line flags."""

    category = "validation"

    def __init__(self, message, category=None):
        super().__init__(message)
        if category is not None:
            self.category = category


class UnknownPresetError(EitlensError):
    """Requested scenario preset does not exist."""

    category = "unknown-preset"


class DegenerateDenominatorError(EitlensError):
    """Susceptibility denominator vanished (all rates zero)."""

    category = "degenerate-denominator"


class NonUniqueSteadyStateError(EitlensError):
    """Trace-constrained Liouvillian solve is singular or ill conditioned."""

    category = "non-unique-steady-state"


class ResponseRangeError(EitlensError):
    """Field magnitude queried outside the sampled response table."""

    category = "response-out-of-range"


class NonFiniteFieldError(EitlensError):
    """Propagated field developed NaN or Inf values."""

    category = "nonfinite-field"


class QuadratureError(EitlensError):
    """Adaptive quadrature did not reach the requested accuracy."""

    category = "quadrature-nonconvergence"


class OutputError(EitlensError):
    """Failure writing run outputs."""

    category = "io-error"
