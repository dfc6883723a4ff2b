import numpy as np
import pytest

from FSEE.entropy.block_entropy import purity_lower_bound
from FSEE.geometry.purity_fourier import panel_edges, purity_via_fourier
from FSEE.kernel.correlation_kernel import CorrelationKernel
from FSEE.kernel.region_matrix import build_region_matrix
from FSEE.models.fermi_sea import IntervalProductSea
from FSEE.models.region import Region
from FSEE.utils.errors import CapabilityError, DomainError


def matrix_purity(sea, length):
    matrix = build_region_matrix(CorrelationKernel(sea), Region.cube(sea.dimension, length))
    return purity_lower_bound(matrix)


@pytest.mark.unit
class TestFourierPurity:

    @pytest.mark.parametrize("length", [1, 2, 5, 8])
    def test_half_filled_chain(self, half_filled_chain, length):
        fourier = purity_via_fourier(half_filled_chain, length)
        assert fourier == pytest.approx(matrix_purity(half_filled_chain, length), rel=1e-3)

    def test_doped_chain(self):
        sea = IntervalProductSea(dimension=1, half_widths=(1.0,), centers=(0.4,))
        assert purity_via_fourier(sea, 6) == pytest.approx(matrix_purity(sea, 6), rel=1e-3)

    @pytest.mark.parametrize("length", [2, 3])
    def test_half_filled_square(self, half_filled_square, length):
        fourier = purity_via_fourier(half_filled_square, length)
        assert fourier == pytest.approx(matrix_purity(half_filled_square, length), rel=1e-3)

    def test_box_sea_in_two_dimensions(self):
        sea = IntervalProductSea(dimension=2, half_widths=(1.2, 0.7))
        assert purity_via_fourier(sea, 3) == pytest.approx(matrix_purity(sea, 3), rel=1e-3)

    def test_single_site_value(self, half_filled_chain):
        # tr(1 - gamma^2) of one site with gamma_0 = 0
        assert purity_via_fourier(half_filled_chain, 1) == pytest.approx(1.0, rel=1e-6)

    def test_dimension_cap(self):
        sea = IntervalProductSea(dimension=4, half_widths=(1.0,))
        with pytest.raises(CapabilityError):
            purity_via_fourier(sea, 2)

    def test_edge_must_be_positive(self, half_filled_chain):
        with pytest.raises(DomainError):
            purity_via_fourier(half_filled_chain, 0)


@pytest.mark.unit
def test_panel_edges_are_symmetric(half_filled_chain):
    edges = panel_edges(half_filled_chain, 16)
    assert edges[0] == pytest.approx(-np.pi) and edges[-1] == pytest.approx(np.pi)
    assert np.allclose(edges, -edges[::-1])
    assert np.any(np.isclose(edges, 0.0))
    assert np.all(np.diff(edges) > 0)


@pytest.mark.unit
def test_panel_edges_include_kinks():
    sea = IntervalProductSea(dimension=1, half_widths=(1.0,))
    edges = panel_edges(sea, 4)
    assert np.any(np.isclose(edges, 2.0)) and np.any(np.isclose(edges, -2.0))


@pytest.mark.slow
def test_fourier_identity_over_acceptance_range(half_filled_chain, half_filled_square):
    for length in range(1, 65):
        fourier = purity_via_fourier(half_filled_chain, length)
        assert fourier == pytest.approx(matrix_purity(half_filled_chain, length), rel=1e-3)
    for length in range(2, 17):
        fourier = purity_via_fourier(half_filled_square, length)
        assert fourier == pytest.approx(matrix_purity(half_filled_square, length), rel=1e-3)
