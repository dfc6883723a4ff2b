"""
Fermi seas: indicator functions theta(k) on the Brillouin-zone torus [-pi, pi)^d.

Each variant knows its own geometry. Where a closed form exists a sea exposes

- `theta_hat(offsets)`: Fourier coefficients (2 pi)^-d int theta(k) exp(i k.x) dk,
- `self_overlap(q)`: int theta(k) theta(k + q) dk on the torus,
- `projected_area(direction)`: silhouette of the Fermi surface, one front per pair,

and returns None (or raises CapabilityError for the projection) otherwise. Grid
based numerics in `FSEE.kernel` and `FSEE.geometry` start from `cell_weights(M)`,
the covered fraction of every cell of an M^d cell-centred grid.
"""

from abc import ABC, abstractmethod
from functools import cached_property
from itertools import product
from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import betainc, gamma

from FSEE.models.hopping_model import HoppingModel
from FSEE.utils.errors import CapabilityError, ModelInvalidError

TWO_PI = 2.0 * np.pi

# Default cells per axis for grid quadrature, by dimension
DEFAULT_GRID_RESOLUTION = {1: 4096, 2: 1024, 3: 256}

# |eps| below this (relative to the hopping scale) counts as a Fermi-surface tie
DISPERSION_TIE_TOL = 1e-12


def default_resolution(dimension: int) -> int:
    return DEFAULT_GRID_RESOLUTION.get(dimension, 64)

#-------------------------------------------------------------------------------
# Torus helpers

def wrap(k) -> np.ndarray:
    """Map momenta into [-pi, pi) componentwise."""
    return np.mod(np.asarray(k, dtype=float) + np.pi, TWO_PI) - np.pi


def cell_centers(M: int) -> np.ndarray:
    return -np.pi + (np.arange(M) + 0.5) * (TWO_PI / M)


def cell_edges(M: int) -> np.ndarray:
    return -np.pi + np.arange(M + 1) * (TWO_PI / M)


def _arc_pieces(start: float, length: float) -> List[Tuple[float, float]]:
    """Split the arc [start, start + length) into pieces inside [-pi, pi)."""
    if length >= TWO_PI:
        return [(-np.pi, np.pi)]
    a = float(wrap(start))
    b = a + length
    if b <= np.pi:
        return [(a, b)]
    return [(a, np.pi), (-np.pi, b - TWO_PI)]


def arc_cell_fractions(M: int, arcs: List[Tuple[float, float]]) -> np.ndarray:
    """Exact covered fraction of each of M cells by a union of disjoint arcs (start, length)."""
    edges = cell_edges(M)
    covered = np.zeros(M + 1)
    for start, length in arcs:
        for lo, hi in _arc_pieces(start, length):
            covered += np.clip(edges - lo, 0.0, hi - lo)
    return np.clip(np.diff(covered) * (M / TWO_PI), 0.0, 1.0)


def arc_overlap(start_a: float, len_a: float, start_b: float, len_b: float, shift=0.0) -> np.ndarray:
    """Length of arc A intersected with arc B translated by -shift, on the circle."""
    shift = np.asarray(shift, dtype=float)
    a0 = np.mod(start_a, TWO_PI)
    b0 = np.mod(start_b - shift, TWO_PI)
    total = np.zeros_like(shift)
    for n in (-1, 0, 1):
        lo = np.maximum(a0, b0 + TWO_PI * n)
        hi = np.minimum(a0 + len_a, b0 + TWO_PI * n + len_b)
        total = total + np.clip(hi - lo, 0.0, None)
    return total


def ball_volume(d: int, r) -> np.ndarray:
    return np.pi ** (d / 2.0) * np.asarray(r, dtype=float) ** d / gamma(d / 2.0 + 1.0)


def _cap_volume(d: int, r: float, a: np.ndarray) -> np.ndarray:
    """Volume of {x in B_r : x_1 > a} for signed plane distance a."""
    a = np.clip(a, -r, r)
    half = 0.5 * ball_volume(d, r) * betainc((d + 1) / 2.0, 0.5, np.clip(1.0 - (a / r) ** 2, 0.0, 1.0))
    return np.where(a >= 0, half, ball_volume(d, r) - half)


def lens_volume(d: int, r1: float, r2: float, dist: np.ndarray) -> np.ndarray:
    """Volume of the intersection of two d-balls with radii r1, r2 at centre distance dist."""
    dist = np.asarray(dist, dtype=float)
    inner = ball_volume(d, min(r1, r2)) * np.ones_like(dist)
    with np.errstate(divide='ignore', invalid='ignore'):
        a1 = (dist ** 2 + r1 ** 2 - r2 ** 2) / (2.0 * dist)
        caps = _cap_volume(d, r1, a1) + _cap_volume(d, r2, dist - a1)
    out = np.where(dist <= abs(r1 - r2), inner, caps)
    return np.where(dist >= r1 + r2, 0.0, out)

#-------------------------------------------------------------------------------
# FermiSea base

class FermiSea(BaseModel, ABC):
    """
    Base class of all Fermi-sea variants.

    Subclasses set a literal `kind` used as the discriminator when seas are
    read from configuration.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: Annotated[
        int,
        Field(ge=1, description="Spatial dimension d")
    ]

    @abstractmethod
    def _theta(self, k: np.ndarray) -> np.ndarray:
        """Indicator for momenta already wrapped into [-pi, pi)^d, shape (..., d) -> (...)."""

    @abstractmethod
    def filling(self) -> float:
        """Volume fraction of the sea, vol(theta = 1) / (2 pi)^d."""

    @abstractmethod
    def describe(self) -> str:
        """Short human readable identifier used in reports."""

    def indicator(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float)
        if k.shape[-1] != self.dimension:
            raise ModelInvalidError(f"Momentum has {k.shape[-1]} components, sea dimension is {self.dimension}")
        return self._theta(wrap(k)).astype(np.int8)

    def volume(self) -> float:
        return self.filling() * TWO_PI ** self.dimension

    def cell_weights(self, M: int) -> np.ndarray:
        """Covered fraction per cell; the default samples the indicator at cell centres."""
        if self.dimension == 1:
            return self._sampled_slab(M, None)
        weights = np.empty((M,) * self.dimension)
        for i in range(M):
            weights[i] = self.cell_slab(M, i)
        return weights

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        """`cell_weights(M)[i]` without building the other slabs."""
        return self._sampled_slab(M, i)

    def _slab_momenta(self, M: int, i: Optional[int]) -> np.ndarray:
        centers = cell_centers(M)
        if i is None:
            return centers[:, None]
        axes = np.meshgrid(*([centers] * (self.dimension - 1)), indexing='ij')
        first = np.full((M,) * (self.dimension - 1), centers[i])
        return np.stack([first, *axes], axis=-1)

    def _sampled_slab(self, M: int, i: Optional[int]) -> np.ndarray:
        return self._theta(self._slab_momenta(M, i)).astype(float)

    @property
    def centre_sampled(self) -> bool:
        """True when `cell_weights` samples cell centres instead of covering cells exactly."""
        return False

    def theta_hat(self, offsets: np.ndarray) -> Optional[np.ndarray]:
        return None

    def self_overlap(self, q: np.ndarray) -> Optional[np.ndarray]:
        return None

    def projected_area(self, direction) -> float:
        raise CapabilityError(f"Projected Fermi-surface area is not available for {self.describe()}")

    def xi_breakpoints(self) -> List[np.ndarray]:
        """Per-axis q values where Xi has kinks, used to align quadrature panels."""
        return [np.zeros(0) for _ in range(self.dimension)]

    @property
    def diagonal_kinks(self) -> bool:
        """True when Xi has kinks along q_x = +-q_y."""
        return False

    def complement(self) -> "ComplementSea":
        return ComplementSea(inner=self)


def _unit(direction, dimension: int) -> np.ndarray:
    u = np.atleast_1d(np.asarray(direction, dtype=float))
    if u.shape != (dimension,):
        raise ModelInvalidError(f"Direction must have {dimension} components")
    norm = np.linalg.norm(u)
    if norm == 0:
        raise ModelInvalidError("Direction must be non-zero")
    return u / norm


def _breakpoints_in_zone(values) -> np.ndarray:
    v = np.unique(np.round(wrap(np.asarray(values, dtype=float)), 14))
    return v[(v > -np.pi) & (v < np.pi)]

#-------------------------------------------------------------------------------
# Parametric seas

class IntervalProductSea(FermiSea):
    """Box sea: |k_i - c_i| < k_F,i on every axis (periodically wrapped)."""
    kind: Literal["interval"] = "interval"
    half_widths: Annotated[
        Tuple[float, ...],
        Field(description="Per-axis half widths k_F,i in [0, pi]")
    ]
    centers: Annotated[
        Optional[Tuple[float, ...]],
        Field(default=None, description="Per-axis centres, zero when omitted")
    ]

    @model_validator(mode="before")
    @classmethod
    def _broadcast(cls, data):
        if isinstance(data, dict):
            d = data.get("dimension", 1)
            kf = np.atleast_1d(np.asarray(data.get("half_widths", ()), dtype=float))
            if kf.size == 1 and d > 1:
                kf = np.repeat(kf, d)
            data = {**data, "half_widths": tuple(kf.tolist())}
            centers = data.get("centers")
            if centers is None:
                centers = np.zeros(len(kf))
            centers = np.atleast_1d(np.asarray(centers, dtype=float))
            if centers.size == 1 and len(kf) > 1:
                centers = np.repeat(centers, len(kf))
            data["centers"] = tuple(centers.tolist())
            data.setdefault("dimension", len(kf))
        return data

    @model_validator(mode="after")
    def _check(self) -> "IntervalProductSea":
        if len(self.half_widths) != self.dimension or len(self.centers) != self.dimension:
            raise ModelInvalidError("IntervalProductSea needs one half width and one centre per axis")
        if any(not (0.0 <= w <= np.pi) for w in self.half_widths):
            raise ModelInvalidError(f"Half widths must lie in [0, pi], got {self.half_widths}")
        return self

    @classmethod
    def empty(cls, dimension: int) -> "IntervalProductSea":
        return cls(dimension=dimension, half_widths=(0.0,) * dimension)

    @classmethod
    def full(cls, dimension: int) -> "IntervalProductSea":
        return cls(dimension=dimension, half_widths=(np.pi,) * dimension)

    def _theta(self, k):
        kf = np.asarray(self.half_widths)
        inside = (np.abs(wrap(k - np.asarray(self.centers))) < kf) | (kf >= np.pi)
        return np.all(inside, axis=-1)

    def filling(self) -> float:
        return float(np.prod(np.asarray(self.half_widths) / np.pi))

    def describe(self) -> str:
        kf = ",".join(f"{w:.6g}" for w in self.half_widths)
        return f"interval(kf={kf})"

    def _axis_fractions(self, M: int) -> List[np.ndarray]:
        return [arc_cell_fractions(M, [(c - w, 2.0 * w)]) if w > 0 else np.zeros(M)
                for w, c in zip(self.half_widths, self.centers)]

    @staticmethod
    def _outer(fractions: List[np.ndarray]) -> np.ndarray:
        weights = np.ones((1,) * len(fractions))
        for axis, frac in enumerate(fractions):
            shape = [1] * len(fractions)
            shape[axis] = frac.size
            weights = weights * frac.reshape(shape)
        return weights

    def cell_weights(self, M: int) -> np.ndarray:
        return self._outer(self._axis_fractions(M))

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        first, *rest = self._axis_fractions(M)
        return first[i] * self._outer(rest)

    def theta_hat(self, offsets):
        x = np.atleast_2d(np.asarray(offsets, dtype=float))
        kf = np.asarray(self.half_widths)
        c = np.asarray(self.centers)
        factors = (kf / np.pi) * np.sinc(kf * x / np.pi) * np.exp(1j * c * x)
        return np.prod(factors, axis=-1)

    def self_overlap(self, q):
        q = np.asarray(q, dtype=float)
        total = np.ones(q.shape[:-1])
        for axis, w in enumerate(self.half_widths):
            total = total * arc_overlap(0.0, 2.0 * w, 0.0, 2.0 * w, q[..., axis])
        return total

    def projected_area(self, direction) -> float:
        u = _unit(direction, self.dimension)
        widths = 2.0 * np.asarray(self.half_widths)
        if np.any(widths == 0):
            return 0.0
        area = 0.0
        for i in range(self.dimension):
            if widths[i] >= TWO_PI:
                continue
            area += abs(u[i]) * float(np.prod(np.delete(widths, i)))
        return area

    def xi_breakpoints(self):
        out = []
        for w in self.half_widths:
            out.append(_breakpoints_in_zone([0.0, 2 * w, -2 * w, TWO_PI - 2 * w, 2 * w - TWO_PI]))
        return out


class ArcUnionSea(FermiSea):
    """One-dimensional sea made of disjoint arcs [start, start + length) of the circle."""
    kind: Literal["arcs"] = "arcs"
    dimension: Literal[1] = 1
    arcs: Annotated[
        Tuple[Tuple[float, float], ...],
        Field(description="(start, length) pairs, lengths in (0, 2 pi]")
    ]

    @model_validator(mode="after")
    def _check(self) -> "ArcUnionSea":
        for start, length in self.arcs:
            if not (0.0 < length <= TWO_PI):
                raise ModelInvalidError(f"Arc length {length} outside (0, 2 pi]")
        for (i, a), (j, b) in product(enumerate(self.arcs), repeat=2):
            if i < j and arc_overlap(a[0], a[1], b[0], b[1]) > 1e-12:
                raise ModelInvalidError(f"Arcs {a} and {b} overlap")
        return self

    def _theta(self, k):
        k = k[..., 0]
        inside = np.zeros(k.shape, dtype=bool)
        for start, length in self.arcs:
            inside |= np.mod(k - start, TWO_PI) < length
        return inside

    def filling(self) -> float:
        return float(sum(length for _, length in self.arcs) / TWO_PI)

    def describe(self) -> str:
        return "arcs(" + ";".join(f"{s:.6g}+{l:.6g}" for s, l in self.arcs) + ")"

    def cell_weights(self, M: int) -> np.ndarray:
        return arc_cell_fractions(M, list(self.arcs))

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        return self.cell_weights(M)[i]

    def theta_hat(self, offsets):
        x = np.asarray(offsets, dtype=float).reshape(-1, 1)[:, 0]
        total = np.zeros(x.shape, dtype=complex)
        for start, length in self.arcs:
            mid = start + 0.5 * length
            total += (length / TWO_PI) * np.sinc(length * x / TWO_PI) * np.exp(1j * mid * x)
        return total

    def self_overlap(self, q):
        shift = np.asarray(q, dtype=float)[..., 0]
        total = np.zeros(shift.shape)
        for a, b in product(self.arcs, repeat=2):
            total = total + arc_overlap(a[0], a[1], b[0], b[1], shift)
        return total

    def projected_area(self, direction) -> float:
        _unit(direction, 1)
        return float(sum(1 for _, length in self.arcs if length < TWO_PI))

    def xi_breakpoints(self):
        ends = [s for s, _ in self.arcs] + [s + l for s, l in self.arcs]
        diffs = [a - b for a in ends for b in ends]
        return [_breakpoints_in_zone(diffs + [0.0])]


class BallUnionSea(FermiSea):
    """Union of balls, pairwise disjoint on the torus, radii in (0, pi]."""
    kind: Literal["balls"] = "balls"
    centers: Annotated[
        Tuple[Tuple[float, ...], ...],
        Field(description="Ball centres, one d-vector each")
    ]
    radii: Annotated[
        Tuple[float, ...],
        Field(description="Ball radii, one per centre")
    ]

    @model_validator(mode="after")
    def _check(self) -> "BallUnionSea":
        if len(self.centers) != len(self.radii) or not self.radii:
            raise ModelInvalidError("BallUnionSea needs at least one ball and one radius per centre")
        for c in self.centers:
            if len(c) != self.dimension:
                raise ModelInvalidError(f"Ball centre {c} does not have {self.dimension} components")
        for r in self.radii:
            if not (0.0 < r <= np.pi):
                raise ModelInvalidError(f"Ball radius {r} outside (0, pi]")
        for i in range(len(self.radii)):
            for j in range(i + 1, len(self.radii)):
                gap = np.linalg.norm(wrap(np.subtract(self.centers[i], self.centers[j])))
                if gap < self.radii[i] + self.radii[j] - 1e-12:
                    raise ModelInvalidError(f"Balls {i} and {j} overlap on the torus")
        return self

    def _theta(self, k):
        inside = np.zeros(k.shape[:-1], dtype=bool)
        for c, r in zip(self.centers, self.radii):
            inside |= np.linalg.norm(wrap(k - np.asarray(c)), axis=-1) < r
        return inside

    def filling(self) -> float:
        return float(sum(ball_volume(self.dimension, r) for r in self.radii) / TWO_PI ** self.dimension)

    def describe(self) -> str:
        return f"balls(d={self.dimension},r=" + ",".join(f"{r:.6g}" for r in self.radii) + ")"

    @property
    def centre_sampled(self) -> bool:
        return True

    def self_overlap(self, q):
        q = np.asarray(q, dtype=float)
        d = self.dimension
        images = np.array(list(product((-1, 0, 1), repeat=d)), dtype=float) * TWO_PI
        total = np.zeros(q.shape[:-1])
        for (ci, ri), (cj, rj) in product(zip(self.centers, self.radii), repeat=2):
            delta = wrap(np.asarray(ci) - np.asarray(cj) + q)
            for image in images:
                dist = np.linalg.norm(delta + image, axis=-1)
                total = total + lens_volume(d, ri, rj, dist)
        return total

    def projected_area(self, direction) -> float:
        _unit(direction, self.dimension)
        return float(sum(ball_volume(self.dimension - 1, r) for r in self.radii))


class CheckerboardSea(FermiSea):
    """Two-dimensional checkerboard of squares with edge l = pi/m; occupied where floor(kx/l) + floor(ky/l) is even."""
    kind: Literal["checkerboard"] = "checkerboard"
    dimension: Literal[2] = 2
    m: Annotated[
        int,
        Field(ge=1, description="Cells per half axis; edge length l = pi/m")
    ]

    @property
    def edge(self) -> float:
        return np.pi / self.m

    def _theta(self, k):
        cells = np.floor(k / self.edge).astype(np.int64)
        return np.mod(cells[..., 0] + cells[..., 1], 2) == 0

    def filling(self) -> float:
        return 0.5

    def describe(self) -> str:
        return f"checkerboard(m={self.m})"

    def _square_wave_primitive(self, u):
        # int_0^u of the +-1 square wave with half period l; periodic with period 2l
        l = self.edge
        tau = np.mod(u, 2.0 * l)
        return np.where(tau <= l, tau, 2.0 * l - tau)

    def _square_wave_autocorrelation(self, t):
        l = self.edge
        tau = np.mod(np.asarray(t, dtype=float), 2.0 * l)
        dist = np.minimum(tau, 2.0 * l - tau)
        return TWO_PI * (1.0 - 2.0 * dist / l)

    def _square_wave_means(self, M: int) -> np.ndarray:
        return np.diff(self._square_wave_primitive(cell_edges(M))) * (M / TWO_PI)

    def cell_weights(self, M: int) -> np.ndarray:
        avg = self._square_wave_means(M)
        return 0.5 * (1.0 + np.outer(avg, avg))

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        avg = self._square_wave_means(M)
        return 0.5 * (1.0 + avg[i] * avg)

    def _square_wave_coefficient(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        ratio = n / self.m
        odd = (np.abs(ratio - np.round(ratio)) < 1e-12) & (np.mod(np.round(ratio), 2) == 1)
        with np.errstate(divide='ignore', invalid='ignore'):
            value = np.where(odd & (n != 0), 2j * self.m / (np.pi * n), 0.0)
        return value

    def theta_hat(self, offsets):
        x = np.atleast_2d(np.asarray(offsets, dtype=float))
        zero = np.all(x == 0, axis=-1)
        return 0.5 * zero + 0.5 * self._square_wave_coefficient(x[:, 0]) * self._square_wave_coefficient(x[:, 1])

    def self_overlap(self, q):
        q = np.asarray(q, dtype=float)
        corr = self._square_wave_autocorrelation(q[..., 0]) * self._square_wave_autocorrelation(q[..., 1])
        return 0.25 * (TWO_PI ** 2 + corr)

    def projected_area(self, direction) -> float:
        # 2 m^2 occupied squares, each a convex component
        u = _unit(direction, 2)
        return float(2 * self.m ** 2 * self.edge * (abs(u[0]) + abs(u[1])))

    def xi_breakpoints(self):
        ticks = np.arange(-2 * self.m, 2 * self.m + 1) * self.edge
        return [_breakpoints_in_zone(ticks), _breakpoints_in_zone(ticks)]


class DiamondSea(FermiSea):
    """Two-dimensional rotated square |k_x - c_x| + |k_y - c_y| < r with r <= pi."""
    kind: Literal["diamond"] = "diamond"
    dimension: Literal[2] = 2
    radius: Annotated[
        float,
        Field(gt=0.0, le=np.pi, description="Half diagonal r of the rotated square")
    ]
    center: Annotated[
        Tuple[float, float],
        Field(default=(0.0, 0.0), description="Centre of the rotated square")
    ]

    def _theta(self, k):
        return np.sum(np.abs(wrap(k - np.asarray(self.center))), axis=-1) < self.radius

    def filling(self) -> float:
        return float(2.0 * self.radius ** 2 / TWO_PI ** 2)

    def describe(self) -> str:
        return f"diamond(r={self.radius:.6g},c={self.center[0]:.6g},{self.center[1]:.6g})"

    def theta_hat(self, offsets):
        x = np.atleast_2d(np.asarray(offsets, dtype=float))
        r = self.radius
        s = x[:, 0] + x[:, 1]
        t = x[:, 0] - x[:, 1]
        phase = np.exp(1j * (x @ np.asarray(self.center)))
        return 2.0 * r ** 2 * np.sinc(r * s / TWO_PI) * np.sinc(r * t / TWO_PI) * phase / TWO_PI ** 2

    def self_overlap(self, q):
        q = np.asarray(q, dtype=float)
        base = wrap(q)
        total = np.zeros(q.shape[:-1])
        for n in product((-1, 0, 1), repeat=2):
            delta = base + TWO_PI * np.asarray(n, dtype=float)
            du = 0.5 * (delta[..., 0] + delta[..., 1])
            dv = 0.5 * (delta[..., 0] - delta[..., 1])
            total = total + 2.0 * np.clip(self.radius - np.abs(du), 0.0, None) * np.clip(self.radius - np.abs(dv), 0.0, None)
        return total

    def projected_area(self, direction) -> float:
        u = _unit(direction, 2)
        return float(2.0 * self.radius * max(abs(u[0]), abs(u[1])))

    def _sampled_slab(self, M: int, i: Optional[int]) -> np.ndarray:
        k = self._slab_momenta(M, i)
        dist = np.sum(np.abs(wrap(k - np.asarray(self.center))), axis=-1)
        # an edge through a cell centre runs along the cell diagonal and halves it
        tol = 1e-9 * (1.0 + self.radius)
        return np.where(dist < self.radius - tol, 1.0, np.where(dist <= self.radius + tol, 0.5, 0.0))

    @property
    def diagonal_kinks(self) -> bool:
        return True

#-------------------------------------------------------------------------------
# Grid and dispersion seas

class GridSea(FermiSea):
    """Sea sampled on an M^d cell-centred grid; cell j covers [-pi + j h, -pi + (j+1) h)."""
    kind: Literal["grid"] = "grid"
    values: Annotated[
        np.ndarray,
        Field(description="Boolean occupation array of shape (M,)*d")
    ]

    @field_validator("values", mode="before")
    @classmethod
    def _as_bool_array(cls, value):
        arr = np.array(value, dtype=bool)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def _check(self) -> "GridSea":
        if self.values.ndim != self.dimension or len(set(self.values.shape)) != 1:
            raise ModelInvalidError(f"Grid must be a cube of dimension {self.dimension}, got shape {self.values.shape}")
        return self

    @property
    def resolution(self) -> int:
        return self.values.shape[0]

    def _theta(self, k):
        M = self.resolution
        idx = np.clip(np.floor((k + np.pi) * (M / TWO_PI)).astype(np.int64), 0, M - 1)
        return self.values[tuple(np.moveaxis(idx, -1, 0))]

    def filling(self) -> float:
        return float(self.values.mean())

    def describe(self) -> str:
        return f"grid(d={self.dimension},M={self.resolution})"

    def cell_weights(self, M: int) -> np.ndarray:
        own = self.resolution
        if M % own == 0:
            out = self.values.astype(float)
            for axis in range(self.dimension):
                out = np.repeat(out, M // own, axis=axis)
            return out
        return super().cell_weights(M)

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        own = self.resolution
        if M % own == 0:
            out = self.values[i // (M // own)].astype(float)
            for axis in range(self.dimension - 1):
                out = np.repeat(out, M // own, axis=axis)
            return out
        return super().cell_slab(M, i)


class DispersionSea(FermiSea):
    """Ground-state sea of a hopping model: theta(k) = 1 iff eps(k) < 0."""
    kind: Literal["dispersion"] = "dispersion"
    model: Annotated[
        HoppingModel,
        Field(description="Hopping model whose negative-energy modes are filled")
    ]

    @model_validator(mode="before")
    @classmethod
    def _dimension_from_model(cls, data):
        if isinstance(data, dict) and "dimension" not in data and data.get("model") is not None:
            model = data["model"]
            dim = model.dimension if isinstance(model, HoppingModel) else model.get("dimension")
            data = {**data, "dimension": dim}
        return data

    @model_validator(mode="after")
    def _check(self) -> "DispersionSea":
        if self.model.dimension != self.dimension:
            raise ModelInvalidError("Sea and model dimensions differ")
        return self

    def _theta(self, k):
        return self.model.dispersion(k) < 0.0

    def _tie_tolerance(self) -> float:
        return DISPERSION_TIE_TOL * (1.0 + float(np.abs(self.model.amplitudes()).sum()) + abs(self.model.chemical_potential))

    @cached_property
    def analytic_shape(self) -> Optional[FermiSea]:
        """Parametric sea with the same indicator (up to measure zero), if one is known."""
        if self.dimension == 1:
            return _arcs_from_dispersion(self.model, self._tie_tolerance())
        t = self.model.nearest_neighbour_amplitude()
        if self.dimension == 2 and t is not None and abs(self.model.onsite) <= self._tie_tolerance():
            phi = float(np.angle(t))
            # eps = 2|t| sum_i cos(k_i - phi); occupied outside the diamond around (phi, phi)
            return DiamondSea(radius=np.pi, center=tuple(float(v) for v in wrap([phi + np.pi, phi + np.pi])))
        return None

    def filling(self) -> float:
        shape = self.analytic_shape
        if shape is not None:
            return shape.filling()
        return float(self.cell_weights(default_resolution(self.dimension)).mean())

    def describe(self) -> str:
        return f"dispersion(d={self.dimension},terms={len(self.model.hoppings)},mu={self.model.chemical_potential:.6g})"

    def cell_weights(self, M: int) -> np.ndarray:
        shape = self.analytic_shape
        if shape is not None:
            return shape.cell_weights(M)
        return super().cell_weights(M)

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        shape = self.analytic_shape
        if shape is not None:
            return shape.cell_slab(M, i)
        return self._sampled_slab(M, i)

    def _sampled_slab(self, M: int, i: Optional[int]) -> np.ndarray:
        eps = self.model.dispersion(self._slab_momenta(M, i))
        tol = self._tie_tolerance()
        # a cell centred on the Fermi surface is split in half to first order
        return np.where(eps < -tol, 1.0, np.where(eps <= tol, 0.5, 0.0))

    def theta_hat(self, offsets):
        shape = self.analytic_shape
        return None if shape is None else shape.theta_hat(offsets)

    def self_overlap(self, q):
        shape = self.analytic_shape
        return None if shape is None else shape.self_overlap(q)

    def projected_area(self, direction) -> float:
        shape = self.analytic_shape
        if shape is None:
            raise CapabilityError(f"Projected Fermi-surface area is not available for {self.describe()}")
        return shape.projected_area(direction)

    def xi_breakpoints(self):
        shape = self.analytic_shape
        return super().xi_breakpoints() if shape is None else shape.xi_breakpoints()

    @property
    def diagonal_kinks(self) -> bool:
        shape = self.analytic_shape
        return shape is not None and shape.diagonal_kinks


def _arcs_from_dispersion(model: HoppingModel, tol: float) -> FermiSea:
    """Exact 1-D sea: zeros of eps(k) are the unit-circle roots of z^R eps(z)."""
    R = model.hopping_range
    if R == 0:
        return IntervalProductSea.full(1) if model.onsite < 0 else IntervalProductSea.empty(1)
    coeffs = np.zeros(2 * R + 1, dtype=complex)
    for offset, amp in model.hoppings.items():
        coeffs[R + offset[0]] += amp
    coeffs[R] += model.chemical_potential
    roots = np.roots(coeffs)
    on_circle = roots[np.abs(np.abs(roots) - 1.0) < 1e-7]
    angles = np.sort(np.unique(np.round(np.angle(on_circle), 12)))
    if angles.size == 0:
        eps0 = model.dispersion(np.zeros((1, 1)))[0]
        return IntervalProductSea.full(1) if eps0 < 0 else IntervalProductSea.empty(1)
    arcs = []
    bounds = np.append(angles, angles[0] + TWO_PI)
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if hi - lo <= 1e-12:
            continue
        mid = np.array([[0.5 * (lo + hi)]])
        if model.dispersion(mid)[0] < -tol:
            arcs.append((float(lo), float(hi - lo)))
    if not arcs:
        return IntervalProductSea.empty(1)
    merged = _merge_adjacent_arcs(arcs)
    if len(merged) == 1 and merged[0][1] >= TWO_PI - 1e-12:
        return IntervalProductSea.full(1)
    return ArcUnionSea(arcs=tuple(merged))


def _merge_adjacent_arcs(arcs: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    # tangential double roots split one occupied arc in two; glue them back
    merged = [list(arcs[0])]
    for start, length in arcs[1:]:
        last = merged[-1]
        if abs(last[0] + last[1] - start) < 1e-9:
            last[1] += length
        else:
            merged.append([start, length])
    if len(merged) > 1:
        first, last = merged[0], merged[-1]
        if abs(np.mod(last[0] + last[1] - first[0], TWO_PI)) < 1e-9:
            first[0], first[1] = last[0], last[1] + first[1]
            merged.pop()
    return [(s, l) for s, l in merged]

#-------------------------------------------------------------------------------
# Particle-hole complement

class ComplementSea(FermiSea):
    """theta -> 1 - theta of an inner sea."""
    kind: Literal["complement"] = "complement"
    inner: Annotated[
        "AnySea",
        Field(description="Sea whose complement this is")
    ]

    @model_validator(mode="before")
    @classmethod
    def _dimension_from_inner(cls, data):
        if isinstance(data, dict) and "dimension" not in data and isinstance(data.get("inner"), FermiSea):
            data = {**data, "dimension": data["inner"].dimension}
        return data

    def _theta(self, k):
        return ~self.inner._theta(k).astype(bool)

    def filling(self) -> float:
        return 1.0 - self.inner.filling()

    def describe(self) -> str:
        return f"complement({self.inner.describe()})"

    def cell_weights(self, M: int) -> np.ndarray:
        return 1.0 - self.inner.cell_weights(M)

    def cell_slab(self, M: int, i: int) -> np.ndarray:
        return 1.0 - self.inner.cell_slab(M, i)

    @property
    def centre_sampled(self) -> bool:
        return self.inner.centre_sampled

    def theta_hat(self, offsets):
        inner = self.inner.theta_hat(offsets)
        if inner is None:
            return None
        zero = np.all(np.atleast_2d(np.asarray(offsets)) == 0, axis=-1)
        return zero.astype(complex) - inner

    def self_overlap(self, q):
        inner = self.inner.self_overlap(q)
        if inner is None:
            return None
        return TWO_PI ** self.dimension - 2.0 * self.inner.volume() + inner

    def projected_area(self, direction) -> float:
        return self.inner.projected_area(direction)

    def xi_breakpoints(self):
        return self.inner.xi_breakpoints()

    @property
    def diagonal_kinks(self) -> bool:
        return self.inner.diagonal_kinks


AnySea = Annotated[
    Union[
        IntervalProductSea,
        ArcUnionSea,
        BallUnionSea,
        CheckerboardSea,
        DiamondSea,
        GridSea,
        DispersionSea,
        ComplementSea,
    ],
    Field(discriminator="kind"),
]

ComplementSea.model_rebuild()

#-------------------------------------------------------------------------------
# Module-level operations

def indicator(sea: FermiSea, k) -> int:
    """theta(k) in {0, 1} at a single momentum (wrapped onto the torus)."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    return int(sea.indicator(k[None, :])[0])


def filling(sea: FermiSea) -> float:
    return sea.filling()
