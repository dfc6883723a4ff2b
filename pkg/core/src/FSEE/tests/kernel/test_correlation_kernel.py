import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from FSEE.kernel import correlation_kernel
from FSEE.kernel.cell_grid import CellGrid
from FSEE.kernel.correlation_kernel import CorrelationKernel, KernelMode, gamma_entry
from FSEE.models.fermi_sea import (
    BallUnionSea,
    CheckerboardSea,
    DiamondSea,
    DispersionSea,
    GridSea,
    IntervalProductSea,
)
from FSEE.models.hopping_model import HoppingModel
from FSEE.utils.errors import AccuracyError, CapabilityError, SizeError


@pytest.mark.unit
class TestAnalyticKernel:

    def setup_method(self):
        self.chain = CorrelationKernel(IntervalProductSea(dimension=1, half_widths=(np.pi / 2,)))
        self.square = CorrelationKernel(DispersionSea(model=HoppingModel.nearest_neighbour(2, t=1.0)))

    def test_auto_mode_picks_closed_form(self):
        assert self.chain.mode is KernelMode.ANALYTIC
        assert self.square.mode is KernelMode.ANALYTIC

    def test_half_filled_chain_entries(self):
        assert gamma_entry(self.chain, [0]) == pytest.approx(0.0, abs=1e-15)
        assert gamma_entry(self.chain, [1]).real == pytest.approx(-2.0 / np.pi)
        assert gamma_entry(self.chain, [2]) == pytest.approx(0.0, abs=1e-15)

    def test_half_filled_square_entries(self):
        assert gamma_entry(self.square, [1, 1]) == pytest.approx(0.0, abs=1e-14)
        assert gamma_entry(self.square, [1, 0]).real == pytest.approx(4.0 / np.pi ** 2)
        assert gamma_entry(self.square, [0, 1]).real == pytest.approx(4.0 / np.pi ** 2)

    def test_hermiticity(self):
        x = np.array([[a, b] for a in range(-5, 6) for b in range(-5, 6)])
        assert np.allclose(self.square.entries(-x), self.square.entries(x).conj(), atol=1e-14)

    def test_entries_are_cached(self):
        self.chain.entries(np.arange(10).reshape(-1, 1))
        size = self.chain.cache_size()
        self.chain.entries(np.arange(5).reshape(-1, 1))
        assert self.chain.cache_size() == size

    def test_checkerboard_entries(self):
        m = 2
        kernel = CorrelationKernel(CheckerboardSea(m=m))
        # gamma_x = 4 m^2 / (pi^2 x1 x2) when x1/m and x2/m are odd
        assert gamma_entry(kernel, [2, 2]).real == pytest.approx(4 * m ** 2 / (np.pi ** 2 * 4))
        assert gamma_entry(kernel, [2, 6]).real == pytest.approx(4 * m ** 2 / (np.pi ** 2 * 12))
        assert gamma_entry(kernel, [1, 2]) == pytest.approx(0.0, abs=1e-15)
        assert gamma_entry(kernel, [4, 2]) == pytest.approx(0.0, abs=1e-15)

    def test_offset_cap(self):
        kernel = CorrelationKernel(IntervalProductSea(dimension=1, half_widths=(1.0,)), max_offset=10)
        with pytest.raises(SizeError):
            kernel.entries([[11]])

    def test_offset_dimension(self):
        with pytest.raises(SizeError):
            self.chain.entries([[1, 2]])


@pytest.mark.unit
class TestGridKernel:

    def test_grid_matches_closed_form(self):
        sea = IntervalProductSea(dimension=1, half_widths=(np.pi / 2,))
        x = np.arange(0, 65).reshape(-1, 1)
        analytic = CorrelationKernel(sea, mode=KernelMode.ANALYTIC).entries(x)
        grid = CorrelationKernel(sea, mode=KernelMode.QUADRATURE, resolution=4096).entries(x)
        assert np.max(np.abs(analytic - grid)) < 1e-8

    def test_grid_sea_is_reproduced_exactly(self):
        values = np.zeros(16, dtype=bool)
        values[4:12] = True
        sea = GridSea(dimension=1, values=values)
        # cells [-pi/2, pi/2) are the interval of half width pi/2
        reference = CorrelationKernel(IntervalProductSea(dimension=1, half_widths=(np.pi / 2,)))
        kernel = CorrelationKernel(sea)
        assert kernel.mode is KernelMode.QUADRATURE
        x = np.arange(0, 12).reshape(-1, 1)
        assert np.allclose(kernel.entries(x), reference.entries(x), atol=1e-12)

    def test_analytic_mode_requires_closed_form(self):
        model = HoppingModel(dimension=2, hoppings={(1, 1): 1.0, (-1, -1): 1.0, (1, 0): 1.0, (-1, 0): 1.0})
        with pytest.raises(CapabilityError):
            CorrelationKernel(DispersionSea(model=model), mode=KernelMode.ANALYTIC)

    def test_unconverged_quadrature_raises(self):
        sea = BallUnionSea(dimension=2, centers=((0.0, 0.0),), radii=(1.3,))
        kernel = CorrelationKernel(sea, mode=KernelMode.QUADRATURE, resolution=32)
        with pytest.raises(AccuracyError) as info:
            kernel.entries([[3, 1]])
        assert info.value.estimate > info.value.tolerance

    def test_fft_mode_skips_the_check(self):
        sea = BallUnionSea(dimension=2, centers=((0.0, 0.0),), radii=(1.3,))
        kernel = CorrelationKernel(sea, mode=KernelMode.FFT, resolution=32)
        gamma0 = gamma_entry(kernel, [0, 0]).real
        assert abs(gamma0 - (1.0 - 2.0 * sea.filling())) < 0.05

    def test_cell_grid_filling(self):
        grid = CellGrid.from_sea(IntervalProductSea(dimension=2, half_widths=(1.0, 2.0)), M=64)
        assert grid.filling == pytest.approx(2.0 / np.pi ** 2)


@pytest.mark.unit
def test_particle_hole_negates_entries():
    sea = IntervalProductSea(dimension=1, half_widths=(1.1,), centers=(0.4,))
    x = np.arange(-12, 13).reshape(-1, 1)
    gamma = CorrelationKernel(sea).entries(x)
    flipped = CorrelationKernel(sea.complement()).entries(x)
    assert np.allclose(flipped, -gamma, atol=1e-12)


@pytest.mark.unit
@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-200, 200), min_size=2, max_size=2))
def test_entries_are_bounded(offset):
    kernel = CorrelationKernel(IntervalProductSea(dimension=2, half_widths=(0.7, 2.1), centers=(0.3, -1.0)))
    assert abs(gamma_entry(kernel, offset)) <= 1.0 + 1e-12


def _counting_from_sea(monkeypatch):
    calls = []
    original = CellGrid.from_sea.__func__

    def counting(cls, sea, M=None):
        calls.append(M)
        return original(cls, sea, M)

    monkeypatch.setattr(CellGrid, "from_sea", classmethod(counting))
    return calls


def _cubic(mu=0.0):
    return DispersionSea(model=HoppingModel.nearest_neighbour(3, t=1.0, mu=mu))


@pytest.mark.unit
class TestCellSlabs:

    @pytest.mark.parametrize("sea", [
        IntervalProductSea(dimension=2, half_widths=(1.0, 2.5), centers=(0.3, -1.0)),
        CheckerboardSea(m=2),
        DiamondSea(radius=2.0, center=(0.5, -0.5)),
        BallUnionSea(dimension=2, centers=((0.0, 0.0),), radii=(1.3,)),
        GridSea(dimension=2, values=np.eye(4, dtype=bool)),
        IntervalProductSea(dimension=3, half_widths=(1.0,)).complement(),
    ])
    def test_slabs_stack_to_weights(self, sea):
        M = 16
        slabs = np.stack([sea.cell_slab(M, i) for i in range(M)])
        assert np.allclose(slabs, sea.cell_weights(M), atol=1e-15)

    @pytest.mark.parametrize("sea", [
        _cubic(mu=0.3),
        IntervalProductSea(dimension=3, half_widths=(1.0, 2.0, 0.5)),
        BallUnionSea(dimension=3, centers=((0.0, 0.0, 0.0),), radii=(1.1,)),
    ])
    def test_slab_sum_matches_full_grid(self, sea):
        offsets = np.array([[0, 0, 0], [1, 0, 0], [2, -1, 3], [17, 5, -9]])
        full = CellGrid.from_sea(sea, 16).theta_hat(offsets)
        assert np.allclose(CellGrid.slab_theta_hat(sea, 16, offsets), full, atol=1e-13)

    def test_large_check_grid_is_never_built(self, monkeypatch):
        sea = _cubic(mu=0.3)
        with pytest.raises(AccuracyError) as whole:
            CorrelationKernel(sea, mode=KernelMode.QUADRATURE, resolution=8).entries([[2, 1, 0]])

        monkeypatch.setattr(correlation_kernel, "FULL_GRID_CELLS", 1000)
        calls = _counting_from_sea(monkeypatch)
        with pytest.raises(AccuracyError) as sliced:
            CorrelationKernel(sea, mode=KernelMode.QUADRATURE, resolution=8).entries([[2, 1, 0]])
        assert calls == [8]
        assert sliced.value.estimate == pytest.approx(whole.value.estimate, abs=1e-12)


@pytest.mark.unit
def test_cubic_dispersion_at_default_resolution():
    kernel = CorrelationKernel(_cubic(), mode=KernelMode.FFT)
    assert kernel.resolution == 256
    gamma = kernel.entries([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    # eps(k + (pi, pi, pi)) = -eps(k) on the cell centres, so the grid is exactly half filled
    assert abs(gamma[0]) < 1e-12
    assert np.allclose(gamma[1:], gamma[1], atol=1e-12)
    assert abs(gamma[1].imag) < 1e-12
    assert 0.0 < gamma[1].real < 0.5


@pytest.mark.slow
def test_cubic_quadrature_check_at_default_resolution(monkeypatch):
    calls = _counting_from_sea(monkeypatch)
    kernel = CorrelationKernel(_cubic(mu=0.3), mode=KernelMode.QUADRATURE)
    try:
        kernel.entries([[3, 1, 0]])
    except AccuracyError as e:
        assert np.isfinite(e.estimate)
    assert calls == [256]


@pytest.mark.unit
def test_balls_default_to_fft_grid():
    sea = BallUnionSea(dimension=2, centers=((0.0, 0.0),), radii=(1.3,))
    kernel = CorrelationKernel(sea, resolution=256)
    assert kernel.mode is KernelMode.FFT
    assert np.isfinite(gamma_entry(kernel, [3, 1]))
    assert CorrelationKernel(sea.complement(), resolution=64).mode is KernelMode.FFT


@pytest.mark.unit
def test_overlap_raises_no_numpy_warnings():
    grid = CellGrid.from_sea(IntervalProductSea(dimension=2, half_widths=(1.0, 2.0)), M=32)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert grid.overlap(np.zeros((1, 2)))[0] == pytest.approx((grid.weights ** 2).sum() * grid.h ** 2)


@pytest.mark.unit
def test_shared_kernel_builds_grid_and_check_once(monkeypatch):
    values = np.zeros(16, dtype=bool)
    values[4:12] = True
    calls = _counting_from_sea(monkeypatch)
    kernel = CorrelationKernel(GridSea(dimension=1, values=values), resolution=64)
    assert kernel.mode is KernelMode.QUADRATURE
    offsets = np.arange(0, 9).reshape(-1, 1)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: kernel.entries(offsets), range(16)))
    assert all(np.array_equal(r, results[0]) for r in results)
    assert sorted(calls) == [64, 128]
