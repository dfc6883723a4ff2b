"""
tr(1 - gamma^2) for the cube of edge L through k-space:

    4 / (2 pi)^(2d) * int_{[-pi, pi]^d} Xi(q) prod_i F_L(q_i) dq

evaluated with a tensor product of composite Gauss-Legendre rules. Panels
are graded towards q = 0 where the Fejer kernel peaks, and panel edges
include the kinks of Xi along the axes. Seas whose Xi kinks along the
diagonals (the diamond) get the diagonal cells split into two triangles.
"""

from typing import Tuple

import numpy as np

from FSEE.geometry.fejer import fejer
from FSEE.geometry.xi import xi_function
from FSEE.models.fermi_sea import TWO_PI, FermiSea
from FSEE.utils.errors import CapabilityError, DomainError, SizeError
from FSEE.utils.logs import event, get_logger

L = get_logger()

GAUSS_ORDER = 10
REFINEMENT_LEVELS = 8
MAX_DIMENSION = 3
CHUNK_POINTS = 2_000_000
MAX_TENSOR_NODES = 200_000_000


def panel_edges(sea: FermiSea, length: int) -> np.ndarray:
    """Symmetric panel edges on [-pi, pi], identical for every axis."""
    width = min(np.pi / 8.0, np.pi / (2.0 * length))
    points = [0.0, np.pi]
    points += [width * 2.0 ** -j for j in range(1, REFINEMENT_LEVELS + 1)]
    points += list(np.arange(1, int(np.floor(np.pi / width)) + 1) * width)
    for axis_points in sea.xi_breakpoints():
        points += list(np.abs(axis_points))
    positive = np.unique(np.clip(np.round(np.asarray(points, dtype=float), 14), 0.0, np.pi))
    edges = np.unique(np.concatenate([-positive, positive]))
    keep = np.concatenate([[True], np.diff(edges) > 1e-12])
    return edges[keep]


def _gauss_panels(edges: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, weights and panel index of a composite Gauss-Legendre rule."""
    x, w = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (lo + half * (x[None, :] + 1.0)).ravel()
    weights = (half * w[None, :]).ravel()
    panel = np.repeat(np.arange(len(edges) - 1), order)
    return nodes, weights, panel


def _triangle_rule(v0, v1, v2, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Collapsed (Duffy) Gauss rule on the triangle v0 v1 v2."""
    x, w = np.polynomial.legendre.leggauss(order)
    s, ws = 0.5 * (x + 1.0), 0.5 * w
    S, T = np.meshgrid(s, s, indexing='ij')
    WS, WT = np.meshgrid(ws, ws, indexing='ij')
    v0, v1, v2 = (np.asarray(v, dtype=float) for v in (v0, v1, v2))
    e1, e2 = v1 - v0, v2 - v1
    jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
    points = v0 + S[..., None] * e1 + (S * T)[..., None] * e2
    weights = WS * WT * S * jac
    return points.reshape(-1, 2), weights.ravel()


def _diagonal_cells(edges: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Triangle rules for the cells crossed by q_x = q_y and q_x = -q_y."""
    points, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        for tri in (((a, a), (b, a), (b, b)), ((a, a), (b, b), (a, b)),
                    ((a, -a), (b, -b), (b, -a)), ((a, -a), (b, -b), (a, -b))):
            p, w = _triangle_rule(*tri, order)
            points.append(p)
            weights.append(w)
    return np.vstack(points), np.concatenate(weights)


def _fejer_product(q: np.ndarray, length: int) -> np.ndarray:
    return np.prod(fejer(q, length), axis=-1)


def purity_via_fourier(sea: FermiSea, length: int, order: int = GAUSS_ORDER) -> float:
    """Fourier-side tr(1 - gamma^2) of Cube(L); d <= 3."""
    d = sea.dimension
    if d > MAX_DIMENSION:
        raise CapabilityError(f"Fourier purity is implemented for d <= {MAX_DIMENSION}, got d = {d}")
    if length < 1:
        raise DomainError(f"Cube edge must be >= 1, got {length}")

    evaluate = xi_function(sea)
    edges = panel_edges(sea, length)
    nodes, weights, panel = _gauss_panels(edges, order)
    if len(nodes) ** d > MAX_TENSOR_NODES:
        raise SizeError(f"Fourier quadrature needs {len(nodes)}^{d} nodes; cap is {MAX_TENSOR_NODES}")
    n_panels = len(edges) - 1
    axis_weights = weights * fejer(nodes, length)

    if d == 1:
        total = float(np.sum(axis_weights * evaluate(nodes[:, None])))
    elif d == 2:
        total = 0.0
        split = sea.diagonal_kinks
        step = max(1, CHUNK_POINTS // len(nodes))
        for start in range(0, len(nodes), step):
            rows = slice(start, start + step)
            Q1, Q2 = np.meshgrid(nodes[rows], nodes, indexing='ij')
            W = np.outer(axis_weights[rows], axis_weights)
            if split:
                P1, P2 = np.meshgrid(panel[rows], panel, indexing='ij')
                W = np.where((P1 == P2) | (P1 + P2 == n_panels - 1), 0.0, W)
            total += float(np.sum(W * evaluate(np.stack([Q1, Q2], axis=-1))))
        if split:
            points, tri_weights = _diagonal_cells(edges, order)
            total += float(np.sum(tri_weights * _fejer_product(points, length) * evaluate(points)))
    else:
        total = 0.0
        Q2, Q3 = np.meshgrid(nodes, nodes, indexing='ij')
        plane = np.outer(axis_weights, axis_weights)
        for q1, w1 in zip(nodes, axis_weights):
            Q1 = np.full_like(Q2, q1)
            total += w1 * float(np.sum(plane * evaluate(np.stack([Q1, Q2, Q3], axis=-1))))

    value = 4.0 * total / TWO_PI ** (2 * d)
    L.debug(event("purity_via_fourier", sea=sea.describe(), L=length, nodes=len(nodes), value=value))
    return value
