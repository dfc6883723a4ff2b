from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from FSEE.kernel.correlation_kernel import CorrelationKernel
from FSEE.models.region import Region
from FSEE.utils.errors import NumericError, SizeError
from FSEE.utils.logs import event, get_logger

L = get_logger()

DEFAULT_SITE_CAP = 20000
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class RegionMatrix:
    """gamma restricted to a region: entries[a, b] = gamma_{site_a - site_b}."""
    region: Region
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.region.n

    def hermiticity_residue(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))


def build_region_matrix(kernel: CorrelationKernel, region: Region, cap: int = DEFAULT_SITE_CAP) -> RegionMatrix:
    """
    Assemble the region submatrix, evaluating each distinct offset once.

    Contiguous 1-D cubes go through `scipy.linalg.toeplitz`; other regions
    index a table of gamma over the bounding box of all site differences.
    """
    if region.dimension != kernel.dimension:
        raise SizeError(f"Region dimension {region.dimension} does not match sea dimension {kernel.dimension}")
    if region.n > cap:
        raise SizeError(f"Region has {region.n} sites, cap is {cap}")

    if region.dimension == 1 and region.shape == "cube":
        n = region.n
        column = kernel.entries(np.arange(n).reshape(-1, 1))
        row = kernel.entries(-np.arange(n).reshape(-1, 1))
        matrix = toeplitz(column, row)
    else:
        matrix = _from_offset_table(kernel, region.sites)

    residue = float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))
    if residue > HERMITICITY_TOL:
        raise NumericError(f"Assembled region matrix is not Hermitian (residue {residue:.3e})")
    matrix = 0.5 * (matrix + matrix.conj().T)
    L.debug(event("region_matrix", n=region.n, shape=region.shape, cached=kernel.cache_size()))
    return RegionMatrix(region=region, entries=matrix)


def _from_offset_table(kernel: CorrelationKernel, sites: np.ndarray) -> np.ndarray:
    span = sites.max(axis=0) - sites.min(axis=0)
    axes = [np.arange(-s, s + 1) for s in span]
    grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, sites.shape[1])
    table = kernel.entries(grid).reshape(tuple(2 * span + 1))

    index = tuple(
        (sites[:, None, i] - sites[None, :, i]) + span[i]
        for i in range(sites.shape[1])
    )
    return table[index]
