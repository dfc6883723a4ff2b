"""
Piecewise-constant representation of a Fermi sea on an M^d cell grid.

Cell j on an axis covers [-pi + j h, -pi + (j + 1) h) with h = 2 pi / M and
carries the covered fraction w_j of that cell. Both the Fourier coefficients
and the shifted overlap of such a function are computed exactly:

    theta_hat(x) = ifftn(w)[x mod M] * prod_i exp(i x_i (h/2 - pi)) sinc(x_i / M)
    overlap(q)   = h^d * sum_j w_j w_{j+s}, multilinear in the fractional shift
"""

from itertools import product
from typing import Optional

import numpy as np

from FSEE.models.fermi_sea import TWO_PI, FermiSea, default_resolution
from FSEE.utils.logs import event, get_logger

L = get_logger()


class CellGrid:
    """Cell weights of one sea at one resolution, with lazily built FFT tables."""

    def __init__(self, weights: np.ndarray):
        weights = np.asarray(weights, dtype=float)
        if weights.ndim < 1 or len(set(weights.shape)) != 1:
            raise ValueError(f"Cell weights must form a cube, got shape {weights.shape}")
        self.weights = weights
        self.M = weights.shape[0]
        self.dimension = weights.ndim
        self.h = TWO_PI / self.M
        self._fourier: Optional[np.ndarray] = None
        self._autocorrelation: Optional[np.ndarray] = None

    @classmethod
    def from_sea(cls, sea: FermiSea, M: Optional[int] = None) -> "CellGrid":
        M = M or default_resolution(sea.dimension)
        L.debug(event("cell_grid", sea=sea.describe(), M=M))
        return cls(sea.cell_weights(M))

    @property
    def filling(self) -> float:
        return float(self.weights.mean())

    def theta_hat(self, offsets: np.ndarray) -> np.ndarray:
        """(2 pi)^-d int theta(k) exp(i k.x) dk for integer offsets of shape (n, d)."""
        x = np.atleast_2d(np.asarray(offsets, dtype=np.int64))
        if self._fourier is None:
            self._fourier = np.fft.ifftn(self.weights)
        idx = tuple(np.mod(x, self.M).T)
        return self._fourier[idx] * _cell_factors(x, self.M)

    @staticmethod
    def slab_theta_hat(sea: FermiSea, M: int, offsets: np.ndarray) -> np.ndarray:
        """
        Same values as `CellGrid.from_sea(sea, M).theta_hat(offsets)`, summed one
        first-axis slab at a time so only (M,)^(d-1) weights are alive at once.
        """
        x = np.atleast_2d(np.asarray(offsets, dtype=np.int64))
        d = sea.dimension
        j = np.arange(M)
        phases = [np.exp(TWO_PI * 1j * np.outer(np.mod(x[:, a], M), j) / M) for a in range(d)]
        values = np.zeros(len(x), dtype=complex)
        for i in range(M):
            slab = sea.cell_slab(M, i)
            for n in range(len(x)):
                partial = slab
                for a in range(d - 1, 0, -1):
                    partial = partial @ phases[a][n]
                values[n] += phases[0][n, i] * partial
        L.debug(event("cell_grid_slabs", sea=sea.describe(), M=M, offsets=len(x)))
        return values / M ** d * _cell_factors(x, M)

    def overlap(self, q: np.ndarray) -> np.ndarray:
        """int theta(k) theta(k + q) dk for shifts q of shape (..., d)."""
        q = np.asarray(q, dtype=float)
        if self._autocorrelation is None:
            spectrum = np.fft.rfftn(self.weights)
            self._autocorrelation = np.fft.irfftn(np.abs(spectrum) ** 2, s=self.weights.shape,
                                                  axes=tuple(range(self.dimension)))
        t = q / self.h
        base = np.floor(t)
        frac = t - base
        base = base.astype(np.int64)
        total = np.zeros(q.shape[:-1])
        for corner in product((0, 1), repeat=self.dimension):
            c = np.asarray(corner)
            weight = np.prod(np.where(c == 1, frac, 1.0 - frac), axis=-1)
            idx = tuple(np.moveaxis(np.mod(base + c, self.M), -1, 0))
            total = total + weight * self._autocorrelation[idx]
        return total * self.h ** self.dimension


def _cell_factors(x: np.ndarray, M: int) -> np.ndarray:
    # first cell centre at -pi + h/2; sinc is the cell average of exp(i k.x)
    xf = x.astype(float)
    factors = np.exp(1j * xf * (0.5 * TWO_PI / M - np.pi)) * np.sinc(xf / M)
    return np.prod(factors, axis=-1)
