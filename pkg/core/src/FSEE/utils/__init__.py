from FSEE.utils.errors import (
    AccuracyError,
    AmbiguityError,
    CapabilityError,
    ConfigError,
    DomainError,
    FitError,
    FSEEError,
    ModelInvalidError,
    NumericError,
    SizeError,
)
from FSEE.utils.logs import event, get_logger

__all__ = [
    "AccuracyError",
    "AmbiguityError",
    "CapabilityError",
    "ConfigError",
    "DomainError",
    "FitError",
    "FSEEError",
    "ModelInvalidError",
    "NumericError",
    "SizeError",
    "event",
    "get_logger",
]
