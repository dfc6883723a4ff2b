"""
Validators applied to pipeline outputs: report contracts, the per-row
entropy sandwich and correlation spectra.
"""

from typing import Any, List, Type

import numpy as np
from pydantic import BaseModel, ValidationError

from FSEE.entropy.block_entropy import Spectrum
from FSEE.pipelines.base_pipeline import DataValidator, ValidationResult
from FSEE.utils.logs import get_logger

L = get_logger()

SANDWICH_TOL = 1e-9
SPECTRUM_TOL = 1e-9
AGREEMENT_TOL = 1e-9


def _as_dict(data: Any) -> dict:
    if isinstance(data, dict):
        return data
    if hasattr(data, 'model_dump'):
        return data.model_dump()
    raise TypeError(f"Unsupported record type {type(data).__name__}")


class SchemaValidator(DataValidator):
    """Validates data against a pydantic model."""

    def __init__(self, model: Type[BaseModel], strict: bool = True):
        self.model = model
        self.strict = strict

    def validate(self, data: Any) -> ValidationResult:
        try:
            if isinstance(data, dict):
                self.model(**data)
            elif hasattr(data, 'model_dump'):
                self.model(**data.model_dump())
            else:
                self.model.model_validate(data)
            return ValidationResult(is_valid=True)

        except ValidationError as e:
            errors, warnings = [], []
            for error in e.errors():
                error_msg = f"Field '{'.'.join(str(loc) for loc in error['loc'])}': {error['msg']}"
                # Non-strict: missing and extra fields only warn
                if not self.strict and error['type'] in ['missing', 'extra']:
                    warnings.append(error_msg)
                else:
                    errors.append(error_msg)
            return ValidationResult(is_valid=len(errors) == 0, errors=errors, warnings=warnings)
        except Exception as e:
            return ValidationResult(is_valid=False, errors=[f"Validation error: {e}"])


class SandwichValidator(DataValidator):
    """
    purity_lower <= S <= tangent_upper for an entropy row.

    Strict mode reports violations as errors, otherwise as warnings.
    """

    def __init__(self, tolerance: float = SANDWICH_TOL, strict: bool = True):
        self.tolerance = tolerance
        self.strict = strict

    def validate(self, data: Any) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        try:
            row = _as_dict(data)
            S, lower, upper = float(row['S']), float(row['purity_lower']), float(row['tangent_upper'])
        except (KeyError, TypeError, ValueError) as e:
            result.add_error(f"Not an entropy row: {e}")
            return result

        messages: List[str] = []
        if lower > S + self.tolerance:
            messages.append(f"L={row.get('L')}: purity_lower {lower:.12g} exceeds S {S:.12g}")
        if S > upper + self.tolerance:
            messages.append(f"L={row.get('L')}: S {S:.12g} exceeds tangent_upper {upper:.12g}")
        for message in messages:
            if self.strict:
                result.add_error(message)
            else:
                result.add_warning(message)
        return result


class SpectrumValidator(DataValidator):
    """Correlation eigenvalues inside [-1, 1] up to the tolerance."""

    def __init__(self, tolerance: float = SPECTRUM_TOL):
        self.tolerance = tolerance

    def validate(self, data: Any) -> ValidationResult:
        values = data.eigenvalues if isinstance(data, Spectrum) else np.asarray(data, dtype=float)
        result = ValidationResult(is_valid=True)
        if values.size == 0:
            return result
        if not np.all(np.isfinite(values)):
            result.add_error("Spectrum contains non-finite eigenvalues")
            return result
        outside = np.abs(values) > 1.0 + self.tolerance
        if np.any(outside):
            worst = float(values[np.argmax(np.abs(values))])
            result.add_error(f"{int(outside.sum())} eigenvalues outside [-1, 1], worst {worst:.12g}")
        return result


class EntropyAgreementValidator(DataValidator):
    """Spin and fermion entropies of JW check rows agree within the tolerance."""

    def __init__(self, tolerance: float = AGREEMENT_TOL, strict: bool = True):
        self.tolerance = tolerance
        self.strict = strict

    def validate(self, data: Any) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        rows = data if isinstance(data, list) else [data]
        for row in rows:
            record = _as_dict(row)
            deviation = abs(float(record["spin"]) - float(record["fermion"]))
            if deviation > self.tolerance:
                message = (f"N={record['N']} m={record['m']} block={record['block']}: "
                           f"spin and fermion entropies differ by {deviation:.3e}")
                if self.strict:
                    result.add_error(message)
                else:
                    result.add_warning(message)
        return result


class CompositeValidator(DataValidator):
    """Combines multiple validators into a single validation step."""

    def __init__(self, validators: List[DataValidator], stop_on_first_error: bool = False):
        self.validators = validators
        self.stop_on_first_error = stop_on_first_error

    def validate(self, data: Any) -> ValidationResult:
        all_errors, all_warnings = [], []
        for validator in self.validators:
            result = validator.validate(data)
            all_errors.extend(result.errors)
            all_warnings.extend(result.warnings)
            if self.stop_on_first_error and result.errors:
                break
        return ValidationResult(is_valid=len(all_errors) == 0, errors=all_errors, warnings=all_warnings)


def create_entropy_row_validators(model: Type[BaseModel], strict_sandwich: bool = False) -> List[DataValidator]:
    """Schema check plus the sandwich check used by sweeps."""
    return [SchemaValidator(model, strict=True), SandwichValidator(strict=strict_sandwich)]
