from dataclasses import dataclass
from typing import Optional

import numpy as np

from FSEE.entropy.binary_entropy import DEFAULT_BASE, binary_entropy, tangent_upper_bound, x0_schedule
from FSEE.kernel.region_matrix import RegionMatrix
from FSEE.models.reports import EntropyReport
from FSEE.utils.errors import DomainError, NumericError
from FSEE.utils.logs import event, get_logger

L = get_logger()

CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of a region matrix, clamped into [-1, 1]."""
    eigenvalues: np.ndarray

    def __len__(self) -> int:
        return len(self.eigenvalues)


def spectrum(matrix) -> Spectrum:
    entries = matrix.entries if isinstance(matrix, RegionMatrix) else np.asarray(matrix)
    try:
        values = np.linalg.eigvalsh(entries)
    except np.linalg.LinAlgError as e:
        raise NumericError(f"Eigensolver failed: {e}") from e
    if values.size and (values[0] < -1.0 - CLAMP_TOL or values[-1] > 1.0 + CLAMP_TOL):
        raise DomainError(f"Correlation eigenvalues outside [-1, 1]: [{values[0]:.12g}, {values[-1]:.12g}]")
    return Spectrum(eigenvalues=np.clip(values, -1.0, 1.0))


def purity_lower_bound(matrix) -> float:
    """tr(1 - gamma^2) from the entries, without an eigensolve."""
    entries = matrix.entries if isinstance(matrix, RegionMatrix) else np.asarray(matrix)
    n = entries.shape[0]
    return max(0.0, float(n - np.sum(np.abs(entries) ** 2)))


def block_entropy(matrix: RegionMatrix, base: float = DEFAULT_BASE, L_edge: Optional[int] = None) -> EntropyReport:
    """
    S = sum_j h(lambda_j) together with both bounds.

    The tangent parameters use x0_schedule(max(L, 2)) where L is the edge of
    the nesting cube; blocks of one site share the L = 2 schedule.
    """
    region = matrix.region
    spec = spectrum(matrix)
    S = float(np.sum(binary_entropy(spec.eigenvalues, base)))
    trace = purity_lower_bound(matrix)

    edge = L_edge or region.edge or int(np.max(np.ptp(region.sites, axis=0))) + 1
    bound = tangent_upper_bound(x0_schedule(max(edge, 2)), base)
    report = EntropyReport(
        d=region.dimension,
        L=region.edge if region.edge is not None else L_edge,
        n=region.n,
        shape=region.shape,
        S=S,
        purity_trace=trace,
        purity_lower=trace * np.log(2.0) / np.log(base),
        tangent_upper=bound.a * trace + bound.b * region.n,
        a=bound.a,
        b=bound.b,
        x0=bound.x0,
        base=float(base),
    )
    L.debug(event("block_entropy", n=region.n, S=S, purity=trace))
    return report
