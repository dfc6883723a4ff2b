"""
Exception hierarchy for FSEE.

Library code raises these; only the CLI turns them into exit codes, using
the `exit_code` class attribute.
"""

from typing import Optional


class FSEEError(Exception):
    """Base class for every error raised by FSEE."""
    exit_code: int = 3

    def to_diagnostic(self) -> dict:
        return {
            "status": "error",
            "exit_code": self.exit_code,
            "kind": type(self).__name__,
            "message": str(self),
        }


class ConfigError(FSEEError):
    """Bad flags, config files or inline sea strings."""
    exit_code = 2


class ModelInvalidError(FSEEError):
    """A hopping model or Fermi sea violates its invariants.

    Not a ValueError, so it leaves pydantic validators unwrapped.
    """
    exit_code = 2


class DomainError(FSEEError, ValueError):
    """Argument outside the mathematical domain of a function."""
    exit_code = 3


class NumericError(FSEEError):
    """Eigensolver failure or an internal consistency check that should not fail."""
    exit_code = 3


class AccuracyError(FSEEError):
    """A quadrature self-consistency check exceeded its tolerance."""
    exit_code = 3

    def __init__(self, message: str, estimate: Optional[float] = None, tolerance: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate
        self.tolerance = tolerance

    def to_diagnostic(self) -> dict:
        diagnostic = super().to_diagnostic()
        diagnostic.update({"estimate": self.estimate, "tolerance": self.tolerance})
        return diagnostic


class FitError(FSEEError):
    """Too few rows or an ill-conditioned scaling basis."""
    exit_code = 3


class SizeError(FSEEError):
    """Region or offset larger than the configured cap."""
    exit_code = 3


class AmbiguityError(FSEEError):
    """Degenerate Fermi level or ground space that the caller must resolve."""
    exit_code = 3


class CapabilityError(FSEEError):
    """Operation not implemented for the given variant."""
    exit_code = 4
