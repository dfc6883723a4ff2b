"""
Validators and the batch pipeline they plug into, exercised with small
entropy rows and toy work items.
"""

import time

import numpy as np
import pytest

from FSEE.entropy.block_entropy import Spectrum
from FSEE.models.reports import EntropyReport, JWCheckRow
from FSEE.pipelines.base_pipeline import BasePipeline, PipelineStatus, SequenceSource
from FSEE.pipelines.validation import (
    CompositeValidator,
    EntropyAgreementValidator,
    SandwichValidator,
    SchemaValidator,
    SpectrumValidator,
    create_entropy_row_validators,
)
from FSEE.utils.errors import DomainError

EXAMPLE_ROW = EntropyReport.model_config["json_schema_extra"]["example"]


@pytest.mark.unit
class TestValidationFramework:

    def setup_method(self):
        self.row = dict(EXAMPLE_ROW)
        self.report = EntropyReport(**EXAMPLE_ROW)

    def test_schema_validator_success(self):
        validator = SchemaValidator(EntropyReport)
        assert validator.validate(self.row).is_valid
        assert validator.validate(self.report).is_valid

    def test_schema_validator_failure(self):
        bad = dict(self.row, S=-1.0)
        result = SchemaValidator(EntropyReport).validate(bad)
        assert not result.is_valid
        assert any("S" in e for e in result.errors)

    def test_schema_validator_lenient_missing_field(self):
        partial = {k: v for k, v in self.row.items() if k != "x0"}
        result = SchemaValidator(EntropyReport, strict=False).validate(partial)
        assert result.is_valid
        assert len(result.warnings) == 1

    def test_sandwich_validator(self):
        assert SandwichValidator().validate(self.report).is_valid
        broken = dict(self.row, tangent_upper=1.0)
        strict = SandwichValidator(strict=True).validate(broken)
        lenient = SandwichValidator(strict=False).validate(broken)
        assert not strict.is_valid
        assert lenient.is_valid and len(lenient.warnings) == 1

    def test_sandwich_validator_rejects_other_records(self):
        assert not SandwichValidator().validate({"L": 2}).is_valid

    def test_spectrum_validator(self):
        validator = SpectrumValidator()
        assert validator.validate(Spectrum(np.array([-1.0, 0.2, 1.0]))).is_valid
        assert not validator.validate(np.array([0.0, 1.0 + 1e-6])).is_valid
        assert not validator.validate(np.array([np.nan])).is_valid
        assert validator.validate(np.zeros(0)).is_valid

    def test_agreement_validator(self):
        close = JWCheckRow(N=6, m=3, block=2, spin=1.2, fermion=1.2 + 1e-12)
        far = JWCheckRow(N=6, m=3, block=3, spin=1.2, fermion=1.3)
        assert EntropyAgreementValidator().validate(close).is_valid
        assert not EntropyAgreementValidator().validate([close, far]).is_valid
        lenient = EntropyAgreementValidator(strict=False).validate([close, far])
        assert lenient.is_valid and len(lenient.warnings) == 1

    def test_composite_validator(self):
        broken = dict(self.row, S=-1.0, tangent_upper=-2.0)
        every = CompositeValidator([SchemaValidator(EntropyReport), SandwichValidator()])
        first = CompositeValidator([SchemaValidator(EntropyReport), SandwichValidator()], stop_on_first_error=True)
        assert len(every.validate(broken).errors) > len(first.validate(broken).errors)

    def test_factory(self):
        validators = create_entropy_row_validators(EntropyReport)
        assert [type(v) for v in validators] == [SchemaValidator, SandwichValidator]
        assert not validators[1].strict


class SquarePipeline(BasePipeline[int, int]):
    """Squares every item; negative items fail, zero is skipped."""

    def __init__(self, items, threads=1):
        super().__init__(name="square", source=SequenceSource("toy", items), validators=[], threads=threads)
        self.stored = []

    def process_item(self, item):
        if item < 0:
            raise ValueError("negative item")
        if item == 0:
            return None
        # later items finish first
        time.sleep(0.001 * (10 - item))
        return item * item

    def store_item(self, item):
        self.stored.append(item)
        return True


class StrictPipeline(SquarePipeline):
    def process_item(self, item):
        raise DomainError("out of range")


@pytest.mark.unit
class TestBasePipeline:

    def test_output_keeps_input_order(self):
        pipeline = SquarePipeline([1, 2, 3, 4, 5, 6], threads=4)
        result = pipeline.run()
        assert result.status == PipelineStatus.SUCCESS
        assert result.processed_count == 6
        assert pipeline.stored == [1, 4, 9, 16, 25, 36]

    def test_item_errors_are_recorded(self):
        pipeline = SquarePipeline([1, -1, 0, 2])
        result = pipeline.run()
        assert result.status == PipelineStatus.SUCCESS
        assert result.failed_count == 2
        assert len(result.errors) == 1
        assert pipeline.stored == [1, 4]

    def test_all_failed(self):
        result = SquarePipeline([-1, -2]).run()
        assert result.status == PipelineStatus.FAILED

    def test_library_errors_propagate(self):
        with pytest.raises(DomainError):
            StrictPipeline([1]).run()

    def test_source_identifier(self):
        source = SequenceSource("interval(kf=1.5708)", [1, 2])
        assert source.get_identifier() == "interval(kf=1.5708)"
        assert source.items() == [1, 2]
