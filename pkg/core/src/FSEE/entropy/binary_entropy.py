"""
Single-mode entropy h(x) and the quadratic upper bounds used to sandwich S.

h(x) = -(1+x)/2 log((1+x)/2) - (1-x)/2 log((1-x)/2) for x in [-1, 1].

The upper bounds are f(x) = a (1 - x^2) + b, tangent to h at +-x0. As a
function of y = x^2, h is concave on [0, 1], so the tangent line in y
dominates h everywhere; this is additionally checked on a grid.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import entr

from FSEE.utils.errors import DomainError, NumericError

DEFAULT_BASE = 2.0
DOMAIN_TOL = 0.0
DOMINATION_GRID = 10_000
DOMINATION_TOL = 1e-12
X0_CEILING = 1.0 - 1e-12


def _check_base(base: float) -> float:
    base = float(base)
    if not base > 1.0:
        raise DomainError(f"Logarithm base must exceed 1, got {base}")
    return base


def binary_entropy(x, base: float = DEFAULT_BASE):
    """h(x) in the given base; h(+-1) = 0. Accepts scalars or arrays."""
    base = _check_base(base)
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0 + DOMAIN_TOL) or np.any(np.isnan(arr)):
        raise DomainError(f"binary_entropy needs |x| <= 1, got max |x| = {np.max(np.abs(arr))}")
    p = 0.5 * (1.0 + arr)
    value = (entr(p) + entr(1.0 - p)) / np.log(base)
    return float(value) if np.ndim(value) == 0 else value


def binary_entropy_derivative(x, base: float = DEFAULT_BASE):
    """h'(x) = -artanh(x) / ln(base) on (-1, 1)."""
    return -np.arctanh(np.asarray(x, dtype=float)) / np.log(_check_base(base))


@dataclass(frozen=True)
class TangentBound:
    """f(x) = a (1 - x^2) + b, tangent to h at +-x0."""
    a: float
    b: float
    x0: float
    base: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.a * (1.0 - x ** 2) + self.b


@lru_cache(maxsize=256)
def tangent_upper_bound(x0: float, base: float = DEFAULT_BASE) -> TangentBound:
    """
    Tangent quadratic at x0 in (0, 1).

    a = -h'(x0) / (2 x0), b = h(x0) - a (1 - x0^2). Raises NumericError if the
    grid check of f >= h fails.
    """
    base = _check_base(base)
    x0 = float(x0)
    if not (0.0 < x0 < 1.0):
        raise DomainError(f"Tangent point must lie in (0, 1), got {x0}")

    a = float(np.arctanh(x0) / (2.0 * x0 * np.log(base)))
    b = float(binary_entropy(x0, base) - a * (1.0 - x0 ** 2))
    bound = TangentBound(a=a, b=b, x0=x0, base=base)

    grid = np.linspace(-1.0, 1.0, DOMINATION_GRID)
    gap = bound(grid) - binary_entropy(grid, base)
    if np.min(gap) < -DOMINATION_TOL * (1.0 + a):
        raise NumericError(f"Tangent bound at x0={x0} fails to dominate h (min gap {np.min(gap):.3e})")
    return bound


def x0_schedule(L: int) -> float:
    """x0(L) = 1 - ln(L) / L, clipped into [0, 1 - 1e-12]."""
    if L < 2:
        raise DomainError(f"x0_schedule needs L >= 2, got {L}")
    return float(np.clip(1.0 - np.log(L) / L, 0.0, X0_CEILING))
