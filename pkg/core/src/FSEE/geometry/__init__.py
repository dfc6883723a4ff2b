from FSEE.geometry.fejer import fejer, fejer_linear_sum
from FSEE.geometry.projection import (
    cone_check,
    projected_area,
    projection_bounds,
    sample_directions,
    surface_projection,
)
from FSEE.geometry.purity_fourier import panel_edges, purity_via_fourier
from FSEE.geometry.xi import xi, xi_function, xi_profile

__all__ = [
    "cone_check",
    "fejer",
    "fejer_linear_sum",
    "panel_edges",
    "projected_area",
    "projection_bounds",
    "purity_via_fourier",
    "sample_directions",
    "surface_projection",
    "xi",
    "xi_function",
    "xi_profile",
]
