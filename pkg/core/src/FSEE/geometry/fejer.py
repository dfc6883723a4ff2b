"""
Fejer kernel F_L(x) = sum_{a,b=0}^{L-1} exp(i x (a - b)) = sin^2(L x / 2) / sin^2(x / 2).
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import digamma

from FSEE.models.fermi_sea import wrap
from FSEE.models.reports import FejerLinearSum
from FSEE.utils.errors import DomainError
from FSEE.utils.logs import event, get_logger

L = get_logger()

SERIES_RADIUS = 1e-6


def _check_L(length: int) -> int:
    if int(length) != length or length < 1:
        raise DomainError(f"Fejer kernel needs an integer L >= 1, got {length}")
    return int(length)


def fejer(x, length: int):
    """F_L(x) >= 0; F_L(0) = L^2. Scalars or arrays."""
    n = _check_L(length)
    t = wrap(x)
    small = np.abs(t) < SERIES_RADIUS
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.sin(0.5 * n * t) / np.sin(0.5 * t)
        value = np.where(small, n ** 2 * (1.0 - (n ** 2 - 1.0) * t ** 2 / 12.0), ratio ** 2)
    return float(value) if np.ndim(value) == 0 else value


def fejer_linear_sum(length: int) -> FejerLinearSum:
    """
    int_0^pi F_L(x) x dx three ways: adaptive quadrature on panels of width
    pi / L, the digamma closed form 2 (1 + euler_gamma + ln 2 + psi(L)) and
    the exact cosine series L pi^2 / 2 - 4 sum_{odd n < L} (L - n) / n^2.
    """
    n = _check_L(length)
    edges = np.linspace(0.0, np.pi, n + 1)
    pieces = [quad(lambda x: fejer(x, n) * x, lo, hi, limit=200, epsabs=1e-13, epsrel=1e-12)[0]
              for lo, hi in zip(edges[:-1], edges[1:])]
    quadrature = math.fsum(pieces)

    closed = 2.0 * (1.0 + np.euler_gamma + np.log(2.0) + float(digamma(n)))

    odd = np.arange(1, n, 2, dtype=float)
    series = n * np.pi ** 2 / 2.0 - 4.0 * math.fsum((n - odd) / odd ** 2)

    L.debug(event("fejer_linear_sum", L=n, quadrature=quadrature, digamma=closed, series=series))
    return FejerLinearSum(L=n, quadrature=quadrature, digamma=closed, series=series)
