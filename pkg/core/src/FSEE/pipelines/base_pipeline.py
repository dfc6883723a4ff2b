"""
Batch runner shared by the sweep and JW check pipelines.

Work items come from a `WorkSource`, are processed concurrently on a thread
pool, validated after processing and stored in input order.
"""

import time
import uuid
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Generic, List, Optional, Sequence, TypeVar

from FSEE.utils.errors import FSEEError
from FSEE.utils.logs import event, get_logger

L = get_logger()

InputType = TypeVar('InputType')
OutputType = TypeVar('OutputType')


class PipelineStatus(Enum):
    RUNNING = "running"
    SUCCESS = "success"
    FAILED = "failed"


@dataclass
class ValidationResult:
    is_valid: bool
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def add_error(self, error: str):
        self.errors.append(error)
        self.is_valid = False

    def add_warning(self, warning: str):
        self.warnings.append(warning)


@dataclass
class PipelineResult:
    status: PipelineStatus
    processed_count: int = 0
    failed_count: int = 0
    execution_time: float = 0.0
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)


class DataValidator(ABC):
    @abstractmethod
    def validate(self, data: Any) -> ValidationResult:
        """Validate data and return validation result."""


class WorkSource(ABC):
    """Where a pipeline gets its work items from."""

    @abstractmethod
    def get_identifier(self) -> str:
        """Return unique identifier for this source."""

    @abstractmethod
    def items(self) -> List[Any]:
        """Return the work items in output order."""


class SequenceSource(WorkSource):
    """A fixed list of work items, e.g. the L values of a sweep."""

    def __init__(self, identifier: str, items: Sequence[Any]):
        self.identifier = identifier
        self._items = list(items)

    def get_identifier(self) -> str:
        return self.identifier

    def items(self) -> List[Any]:
        return list(self._items)


class BasePipeline(Generic[InputType, OutputType], ABC):
    """
    Process, validate and store every item of a source.

    `process_item` runs on a pool of `threads` workers; validation and
    `store_item` run on the calling thread in input order, so stored output
    does not depend on scheduling. `FSEEError`s raised while processing
    abort the run and propagate to the caller; other exceptions are recorded
    per item.
    """

    def __init__(
        self,
        name: str,
        source: WorkSource,
        validators: List[DataValidator],
        batch_size: int = 64,
        threads: int = 1,
    ):
        self.name = name
        self.source = source
        self.validators = validators
        self.batch_size = batch_size
        self.threads = max(1, int(threads))
        self.pipeline_id = str(uuid.uuid4())

    @abstractmethod
    def process_item(self, item: InputType) -> Optional[OutputType]:
        """Process a single item."""

    @abstractmethod
    def store_item(self, item: OutputType) -> bool:
        """Store a processed item."""

    def validate_item(self, item: Any) -> ValidationResult:
        result = ValidationResult(is_valid=True)
        for validator in self.validators:
            validation = validator.validate(item)
            if not validation.is_valid:
                result.is_valid = False
                result.errors.extend(validation.errors)
            result.warnings.extend(validation.warnings)
        return result

    def _guarded(self, item: InputType):
        try:
            return self.process_item(item), None
        except FSEEError:
            raise
        except Exception as e:
            return None, f"Error processing item {item!r}: {e}"

    def run(self) -> PipelineResult:
        start_time = time.time()
        result = PipelineResult(status=PipelineStatus.RUNNING)
        items = self.source.items()
        L.info(event("pipeline_start", name=self.name, id=self.pipeline_id,
                     source=self.source.get_identifier(), items=len(items), threads=self.threads))

        processed = failed = 0
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            for i in range(0, len(items), self.batch_size):
                batch = items[i:i + self.batch_size]
                # map preserves input order
                for outcome, error in pool.map(self._guarded, batch):
                    if error is not None:
                        L.error(error)
                        result.errors.append(error)
                        failed += 1
                        continue
                    if outcome is None:
                        failed += 1
                        continue
                    validation = self.validate_item(outcome)
                    result.warnings.extend(validation.warnings)
                    if not validation.is_valid:
                        L.warning(event("validation_failed", name=self.name, errors=validation.errors))
                        result.errors.extend(validation.errors)
                        failed += 1
                        continue
                    if self.store_item(outcome):
                        processed += 1
                    else:
                        failed += 1

        if failed == 0:
            result.status = PipelineStatus.SUCCESS
        elif processed > 0:
            result.status = PipelineStatus.SUCCESS
            result.warnings.append(f"Pipeline completed with {failed} failures")
        else:
            result.status = PipelineStatus.FAILED

        result.processed_count = processed
        result.failed_count = failed
        result.execution_time = time.time() - start_time
        L.info(event("pipeline_done", name=self.name, status=result.status.value,
                     processed=processed, failed=failed, seconds=round(result.execution_time, 3)))
        return result
