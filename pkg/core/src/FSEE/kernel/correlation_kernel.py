"""
Toeplitz generator x -> gamma_x of the infinite correlation matrix.

    gamma_x = (2 pi)^-d int [1 - 2 theta(k)] exp(i k.x) dk = delta_{x,0} - 2 theta_hat(x)

Three evaluation modes:

- analytic:   closed forms supplied by the sea (`FermiSea.theta_hat`)
- quadrature: cell-exact grid quadrature with an M -> 2M consistency check
              at the largest requested offset
- fft:        the same grid without the consistency check

`auto` picks analytic when the sea has a closed form, fft for seas whose cells
are only sampled at their centres (balls) and quadrature otherwise.
"""

import threading
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from FSEE.kernel.cell_grid import CellGrid
from FSEE.models.fermi_sea import FermiSea, default_resolution
from FSEE.utils.errors import AccuracyError, CapabilityError, SizeError
from FSEE.utils.logs import event, get_logger

L = get_logger()

DEFAULT_MAX_OFFSET = 2 ** 16
DEFAULT_TOLERANCE = 1e-7

# Above this many cells the 2M comparison grid is summed slab by slab
FULL_GRID_CELLS = 2 ** 24


class KernelMode(str, Enum):
    AUTO = "auto"
    ANALYTIC = "analytic"
    QUADRATURE = "quadrature"
    FFT = "fft"


class CorrelationKernel:
    """
    Cached gamma_x for one sea.

    The cache is a plain dict guarded by a re-entrant lock; lookups and the
    numerical evaluation run unlocked, while cache insertion, the lazy grid and
    the consistency check hold the lock. Values do not depend on the order in
    which offsets are requested.
    """

    def __init__(
        self,
        sea: FermiSea,
        mode: KernelMode = KernelMode.AUTO,
        resolution: Optional[int] = None,
        max_offset: int = DEFAULT_MAX_OFFSET,
        tolerance: float = DEFAULT_TOLERANCE,
    ):
        self.sea = sea
        self.dimension = sea.dimension
        self.max_offset = max_offset
        self.tolerance = tolerance
        self.resolution = resolution or default_resolution(sea.dimension)
        self.mode = self._resolve_mode(KernelMode(mode))
        self._cache: Dict[Tuple[int, ...], complex] = {}
        self._lock = threading.RLock()
        self._grid: Optional[CellGrid] = None
        self._checked_extent = -1
        L.debug(event("kernel_init", sea=sea.describe(), mode=self.mode.value, M=self.resolution))

    def _resolve_mode(self, mode: KernelMode) -> KernelMode:
        has_closed_form = self.sea.theta_hat(np.zeros((1, self.dimension))) is not None
        if mode is KernelMode.AUTO:
            if has_closed_form:
                return KernelMode.ANALYTIC
            # centre-sampled cells never pass the M -> 2M comparison
            return KernelMode.FFT if self.sea.centre_sampled else KernelMode.QUADRATURE
        if mode is KernelMode.ANALYTIC and not has_closed_form:
            raise CapabilityError(f"No closed-form kernel for {self.sea.describe()}")
        return mode

    @property
    def grid(self) -> CellGrid:
        with self._lock:
            if self._grid is None:
                grid = CellGrid.from_sea(self.sea, self.resolution)
                grid.theta_hat(np.zeros((1, self.dimension), dtype=np.int64))
                self._grid = grid
            return self._grid

    def _theta_hat(self, offsets: np.ndarray) -> np.ndarray:
        if self.mode is KernelMode.ANALYTIC:
            return self.sea.theta_hat(offsets)
        if self.mode is KernelMode.QUADRATURE:
            self._consistency_check(offsets)
        return self.grid.theta_hat(offsets)

    def _fine_theta_hat(self, target: np.ndarray) -> complex:
        fine = 2 * self.resolution
        if self.dimension >= 3 and fine ** self.dimension > FULL_GRID_CELLS:
            return CellGrid.slab_theta_hat(self.sea, fine, target)[0]
        return CellGrid.from_sea(self.sea, fine).theta_hat(target)[0]

    def _consistency_check(self, offsets: np.ndarray) -> None:
        extent = int(np.max(np.abs(offsets), initial=0))
        with self._lock:
            if extent <= self._checked_extent:
                return
            target = offsets[np.argmax(np.max(np.abs(offsets), axis=1))][None, :]
            coarse = self.grid.theta_hat(target)[0]
            # gamma carries a factor 2
            estimate = 2.0 * abs(self._fine_theta_hat(target) - coarse)
            L.debug(event("kernel_richardson", offset=target[0].tolist(), estimate=estimate, M=self.resolution))
            if estimate > self.tolerance:
                raise AccuracyError(
                    f"Grid quadrature for {self.sea.describe()} did not converge at offset "
                    f"{target[0].tolist()} (M={self.resolution})",
                    estimate=float(estimate), tolerance=self.tolerance)
            self._checked_extent = extent

    def entries(self, offsets) -> np.ndarray:
        """gamma_x for integer offsets of shape (n, d); results are cached."""
        x = np.atleast_2d(np.asarray(offsets, dtype=np.int64))
        if x.shape[1] != self.dimension:
            raise SizeError(f"Offsets must have {self.dimension} components, got {x.shape[1]}")
        if x.size and np.max(np.abs(x)) > self.max_offset:
            raise SizeError(f"Offset component {int(np.max(np.abs(x)))} exceeds the maximum {self.max_offset}")

        keys = [tuple(int(c) for c in row) for row in x]
        missing = sorted({k for k in keys if k not in self._cache})
        if missing:
            todo = np.array(missing, dtype=np.int64).reshape(-1, self.dimension)
            zero = np.all(todo == 0, axis=1)
            values = zero.astype(complex) - 2.0 * self._theta_hat(todo)
            # gamma_0 is real
            values[zero] = values[zero].real
            with self._lock:
                for key, value in zip(missing, values):
                    self._cache.setdefault(key, complex(value))
        return np.array([self._cache[k] for k in keys], dtype=complex)

    def cache_size(self) -> int:
        return len(self._cache)


def gamma_entry(kernel: CorrelationKernel, x) -> complex:
    """Single kernel entry gamma_x."""
    x = np.atleast_1d(np.asarray(x, dtype=np.int64))
    return complex(kernel.entries(x[None, :])[0])
