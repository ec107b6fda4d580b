"""
Error types raised by the fracdiff services.

Every service raises a subclass of FracDiffError so callers (HTTP routes,
CLI) can map failures without inspecting messages.
"""
from typing import Optional


class FracDiffError(Exception):
    """Base class for all solver-library errors."""


class DomainError(FracDiffError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(FracDiffError, ValueError):
    """An index or argument exceeds the supported range (table length, z_max)."""


class AccuracyError(FracDiffError):
    """The requested accuracy cannot be reached; carries the achieved bound."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved bound {achieved:.3e})")
        self.achieved = achieved


class OverflowSignal(FracDiffError):
    """Non-finite field values appeared while stepping."""

    def __init__(self, step: int):
        super().__init__(f"non-finite field values at step {step}")
        self.step = step


class ScanFailureError(FracDiffError):
    """An onset scan passed S = 1 without detecting instability."""


class InsufficientDataError(FracDiffError):
    """Too few refinement levels to fit a convergence order."""


class UndefinedMomentError(FracDiffError):
    """A normalized moment was requested for a field with zero total mass."""


class ConfigError(FracDiffError):
    """An experiment configuration is malformed; names the offending key."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key
