"""
Xi(q) = int theta(k) [1 - theta(k + q)] dk on the torus: the volume of the
Fermi sea uncovered by a shift q. Equals vol - overlap(q).
"""

from typing import Callable, List, Optional

import numpy as np

from FSEE.kernel.cell_grid import CellGrid
from FSEE.models.fermi_sea import FermiSea, GridSea, default_resolution
from FSEE.models.reports import XiProfile
from FSEE.utils.errors import AccuracyError
from FSEE.utils.logs import event, get_logger

L = get_logger()

GRID_TOLERANCE = 1e-3

# Coarser than the kernel default in 3-D; the check doubles M
XI_GRID_RESOLUTION = {1: 4096, 2: 1024, 3: 96}


class _GridOverlap:
    """Overlap from cell grids at M and 2M; every call is checked against GRID_TOLERANCE."""

    def __init__(self, sea: FermiSea, resolution: Optional[int]):
        self.sea = sea
        if isinstance(sea, GridSea):
            self.coarse = CellGrid(sea.values.astype(float))
            self.fine = None
            return
        M = resolution or XI_GRID_RESOLUTION.get(sea.dimension, default_resolution(sea.dimension))
        self.M = M
        self.coarse = CellGrid.from_sea(sea, M)
        self.fine = CellGrid.from_sea(sea, 2 * M)

    def __call__(self, q: np.ndarray) -> np.ndarray:
        coarse = self.coarse.overlap(q)
        if self.fine is None:
            return coarse
        fine = self.fine.overlap(q)
        estimate = float(np.max(np.abs(fine - coarse), initial=0.0))
        L.debug(event("xi_grid_check", sea=self.sea.describe(), M=self.M, estimate=estimate))
        if estimate > GRID_TOLERANCE:
            raise AccuracyError(
                f"Xi grid for {self.sea.describe()} changes by {estimate:.3e} under M -> 2M (M={self.M})",
                estimate=estimate, tolerance=GRID_TOLERANCE)
        return fine


def uses_grid(sea: FermiSea) -> bool:
    return sea.self_overlap(np.zeros((1, sea.dimension))) is None


def xi_function(sea: FermiSea, resolution: Optional[int] = None) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised q -> Xi(q) for q of shape (..., d); grids are built once."""
    volume = sea.volume()
    overlap = _GridOverlap(sea, resolution) if uses_grid(sea) else sea.self_overlap

    def evaluate(q: np.ndarray) -> np.ndarray:
        return np.clip(volume - overlap(np.asarray(q, dtype=float)), 0.0, None)

    return evaluate


def xi(sea: FermiSea, q, resolution: Optional[int] = None):
    """Xi at one shift (shape (d,)) or many (shape (..., d))."""
    q = np.asarray(q, dtype=float)
    single = q.ndim == 1
    values = xi_function(sea, resolution)(np.atleast_2d(q) if single else q)
    return float(values[0]) if single else values


def xi_profile(sea: FermiSea, q, resolution: Optional[int] = None,
               cone: Optional[tuple] = None) -> XiProfile:
    """Xi sampled at q with optional cone bounds (s_minus, s_plus) times |q|."""
    q = np.atleast_2d(np.asarray(q, dtype=float))
    values = xi(sea, q, resolution)
    lower: Optional[List[float]] = None
    upper: Optional[List[float]] = None
    if cone is not None:
        norms = np.linalg.norm(q, axis=-1)
        lower = (cone[0] * norms).tolist()
        upper = (cone[1] * norms).tolist()
    return XiProfile(
        sea=sea.describe(),
        dimension=sea.dimension,
        q=q.tolist(),
        values=np.asarray(values).tolist(),
        cone_lower=lower,
        cone_upper=upper,
    )
