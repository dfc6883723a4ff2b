"""
L-sweeps: one EntropyReport per cube (or inscribed ball) edge L.
"""

from typing import List, Literal, Optional, Sequence

from FSEE.entropy.binary_entropy import DEFAULT_BASE
from FSEE.entropy.block_entropy import block_entropy
from FSEE.geometry.purity_fourier import purity_via_fourier
from FSEE.kernel.correlation_kernel import CorrelationKernel, KernelMode
from FSEE.kernel.region_matrix import DEFAULT_SITE_CAP, build_region_matrix
from FSEE.models.fermi_sea import FermiSea
from FSEE.models.region import Region
from FSEE.models.reports import EntropyReport
from FSEE.pipelines.base_pipeline import BasePipeline, PipelineResult, SequenceSource
from FSEE.pipelines.validation import create_entropy_row_validators
from FSEE.utils.errors import ConfigError, NumericError
from FSEE.utils.logs import event, get_logger

L = get_logger()

Shape = Literal["cube", "ball"]


def check_L_list(L_list: Sequence[int]) -> List[int]:
    values = [int(v) for v in L_list]
    if not values:
        raise ConfigError("L list is empty")
    if any(v < 1 for v in values):
        raise ConfigError(f"L values must be >= 1, got {values}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ConfigError(f"L list must be strictly increasing, got {values}")
    return values


class SweepPipeline(BasePipeline[int, EntropyReport]):
    """Entropy rows for every L of a source, sharing one kernel cache."""

    def __init__(
        self,
        sea: FermiSea,
        L_list: Sequence[int],
        kernel: CorrelationKernel,
        shape: Shape = "cube",
        base: float = DEFAULT_BASE,
        cap: int = DEFAULT_SITE_CAP,
        fourier: bool = False,
        threads: int = 1,
    ):
        super().__init__(
            name=f"sweep:{shape}",
            source=SequenceSource(sea.describe(), check_L_list(L_list)),
            validators=create_entropy_row_validators(EntropyReport),
            threads=threads,
        )
        self.sea = sea
        self.kernel = kernel
        self.shape = shape
        self.base = base
        self.cap = cap
        self.fourier = fourier
        self.rows: List[EntropyReport] = []

    def region(self, length: int) -> Region:
        d = self.sea.dimension
        return Region.ball(d, length) if self.shape == "ball" else Region.cube(d, length)

    def process_item(self, length: int) -> Optional[EntropyReport]:
        matrix = build_region_matrix(self.kernel, self.region(length), self.cap)
        report = block_entropy(matrix, self.base, L_edge=length)
        if self.fourier and self.shape == "cube":
            report = report.model_copy(update={"purity_fourier": purity_via_fourier(self.sea, length)})
        L.info(event("sweep_row", sea=self.sea.describe(), L=length, n=report.n, S=report.S,
                     purity=report.purity_trace, upper=report.tangent_upper))
        return report

    def store_item(self, item: EntropyReport) -> bool:
        self.rows.append(item)
        return True


def sweep(
    sea: FermiSea,
    L_list: Sequence[int],
    shape: Shape = "cube",
    base: float = DEFAULT_BASE,
    mode: KernelMode = KernelMode.AUTO,
    resolution: Optional[int] = None,
    max_offset: Optional[int] = None,
    cap: int = DEFAULT_SITE_CAP,
    fourier: bool = False,
    threads: int = 1,
    kernel: Optional[CorrelationKernel] = None,
) -> List[EntropyReport]:
    """
    Entropy reports for Cube(L) (or the inscribed ball) for every L, in the
    order given. Sandwich violations are logged as warnings, not raised.
    """
    if shape not in ("cube", "ball"):
        raise ConfigError(f"Unknown region shape {shape!r}")
    if kernel is None:
        options = {} if max_offset is None else {"max_offset": max_offset}
        kernel = CorrelationKernel(sea, mode=mode, resolution=resolution, **options)

    pipeline = SweepPipeline(sea, L_list, kernel, shape=shape, base=base, cap=cap,
                             fourier=fourier, threads=threads)
    result: PipelineResult = pipeline.run()
    for warning in result.warnings:
        L.warning(event("sweep_warning", sea=sea.describe(), message=warning))
    if result.errors:
        raise NumericError(f"Sweep over {sea.describe()} failed: {'; '.join(result.errors)}")
    return pipeline.rows
