"""
Projected Fermi-surface area s(q-hat) and the cone bounds s- |q| <= Xi(q) <= s+ |q|.

Projections exist for seas made of convex components (boxes, balls, the
diamond, arcs, checkerboard squares), each front pair counted once. Other
seas fall back to empirical slopes Xi(q)/|q| measured close to q = 0.
"""

from typing import Optional, Tuple

import numpy as np

from FSEE.geometry.xi import xi, xi_profile
from FSEE.models.fermi_sea import TWO_PI, FermiSea
from FSEE.models.reports import ConeReport, ConeViolation, SurfaceProjection
from FSEE.utils.errors import CapabilityError
from FSEE.utils.logs import event, get_logger

L = get_logger()

DEFAULT_DIRECTIONS = 256
CONE_TOL_FACTOR = 1e-3
EMPIRICAL_STEP_FRACTION = 1.0 / 16.0


def sample_directions(dimension: int, count: int = DEFAULT_DIRECTIONS, seed: int = 0) -> np.ndarray:
    """Axes, +-diagonals (d >= 2) and `count` random unit vectors."""
    rng = np.random.default_rng(seed)
    fixed = list(np.eye(dimension))
    if dimension >= 2:
        fixed.append(np.ones(dimension) / np.sqrt(dimension))
        alt = np.ones(dimension)
        alt[1::2] = -1.0
        fixed.append(alt / np.sqrt(dimension))
    random = rng.standard_normal((count, dimension))
    random /= np.linalg.norm(random, axis=1, keepdims=True)
    return np.vstack([np.array(fixed), random])


def projected_area(sea: FermiSea, direction) -> float:
    """s(q-hat); CapabilityError for seas without convex components."""
    return float(sea.projected_area(direction))


def projection_bounds(sea: FermiSea, count: int = DEFAULT_DIRECTIONS, seed: int = 0) -> Tuple[float, float]:
    areas = [sea.projected_area(u) for u in sample_directions(sea.dimension, count, seed)]
    return float(min(areas)), float(max(areas))


def surface_projection(sea: FermiSea, direction, count: int = DEFAULT_DIRECTIONS, seed: int = 0) -> SurfaceProjection:
    u = np.atleast_1d(np.asarray(direction, dtype=float))
    u = u / np.linalg.norm(u)
    s_minus, s_plus = projection_bounds(sea, count, seed)
    area = projected_area(sea, u)
    return SurfaceProjection(
        sea=sea.describe(),
        direction=u.tolist(),
        area=area,
        s_minus=min(s_minus, area),
        s_plus=max(s_plus, area),
    )


def _empirical_bounds(sea: FermiSea, radius: float, directions: np.ndarray) -> Tuple[float, float]:
    step = EMPIRICAL_STEP_FRACTION * radius
    slopes = xi(sea, step * directions) / step
    return float(np.min(slopes)), float(np.max(slopes))


def cone_check(sea: FermiSea, radius: float, samples: int = 512, seed: int = 0,
               tolerance: Optional[float] = None) -> ConeReport:
    """
    Sample Xi on |q| <= radius and compare with s- |q| and s+ |q|.

    Report only: violations are listed, never raised.
    """
    tol = CONE_TOL_FACTOR * TWO_PI ** sea.dimension if tolerance is None else tolerance
    rng = np.random.default_rng(seed)
    directions = sample_directions(sea.dimension, samples, seed)
    try:
        s_minus, s_plus = projection_bounds(sea, seed=seed)
        slopes = "projection"
    except CapabilityError:
        s_minus, s_plus = _empirical_bounds(sea, radius, directions)
        slopes = "empirical"

    lengths = radius * rng.uniform(0.0, 1.0, size=len(directions))
    q = directions * lengths[:, None]
    profile = xi_profile(sea, q, cone=(s_minus, s_plus))

    violations = []
    for qi, value, lo, hi in zip(profile.q, profile.values, profile.cone_lower, profile.cone_upper):
        if value < lo - tol or value > hi + tol:
            violations.append(ConeViolation(q=qi, xi=value, lower=lo, upper=hi))

    L.info(event("cone_check", sea=sea.describe(), s_minus=s_minus, s_plus=s_plus,
                 slopes=slopes, violations=len(violations)))
    return ConeReport(
        sea=sea.describe(),
        radius=radius,
        s_minus=s_minus,
        s_plus=s_plus,
        slopes=slopes,
        tolerance=tol,
        samples=len(q),
        profile=profile,
        violations=violations,
    )
