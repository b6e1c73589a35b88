"""Exception hierarchy shared by the compute modules and the CLI."""

from __future__ import annotations


class CFLabError(Exception):
    """Base class for every error raised by cflab."""


class ParameterError(CFLabError, ValueError):
    """An argument is outside its admissible domain (e.g. a non-positive period)."""


class SpecError(ParameterError):
    """A serialized object (density, pair, bump) is malformed.

    ``field`` names the offending key so the CLI can report it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class HypothesisViolation(CFLabError):
    """A mathematical hypothesis of a construction or certificate fails.

    ``condition`` is a short machine-readable tag, one of ``window_length``,
    ``support_contains_window``, ``period_bound``, ``endpoint_slope`` or
    ``support_shape``.
    """

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


class SupportViolation(HypothesisViolation):
    """The requested window is not inside the essential support of the density."""

    def __init__(self, message: str):
        super().__init__("support_contains_window", message)


class UnsupportedInput(CFLabError):
    """The density lacks the smoothness an operation requires."""


class ValidationError(CFLabError):
    """Input data fails a consistency check (e.g. a non-Hermitian Gram matrix)."""


class NumericalError(CFLabError):
    """A numerical procedure did not reach its target accuracy."""

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message if estimate is None else f"{message} (achieved {estimate:.3g})")
        self.estimate = estimate
