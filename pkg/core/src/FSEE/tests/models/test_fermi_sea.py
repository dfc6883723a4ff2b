import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from FSEE.models.fermi_sea import (
    ArcUnionSea,
    BallUnionSea,
    CheckerboardSea,
    ComplementSea,
    DiamondSea,
    DispersionSea,
    GridSea,
    IntervalProductSea,
    filling,
    indicator,
    wrap,
)
from FSEE.models.hopping_model import HoppingModel
from FSEE.utils.errors import CapabilityError, ModelInvalidError


@pytest.mark.unit
class TestParametricSeas:

    def setup_method(self):
        self.interval = IntervalProductSea(dimension=1, half_widths=(np.pi / 2,))
        self.box = IntervalProductSea(dimension=2, half_widths=(1.0, 0.5), centers=(0.2, -0.1))
        self.balls = BallUnionSea(dimension=3, centers=((0.0, 0.0, 0.0), (np.pi, np.pi, np.pi)), radii=(0.6, 0.6))
        self.checkerboard = CheckerboardSea(m=4)
        self.diamond = DiamondSea(radius=np.pi, center=(np.pi, np.pi))

    def test_interval_filling(self):
        assert filling(self.interval) == pytest.approx(0.5)
        assert self.box.filling() == pytest.approx(0.5 / np.pi ** 2)

    def test_indicator_wraps_momenta(self):
        assert indicator(self.interval, [0.0]) == 1
        assert indicator(self.interval, [2.0 * np.pi]) == 1
        assert indicator(self.interval, [np.pi]) == 0

    def test_interval_broadcasts_scalar_width(self):
        cube = IntervalProductSea(dimension=3, half_widths=(1.0,))
        assert cube.half_widths == (1.0, 1.0, 1.0)
        assert cube.centers == (0.0, 0.0, 0.0)

    def test_theta_hat_at_origin_is_filling(self):
        for sea in (self.interval, self.box, self.checkerboard, self.diamond):
            value = sea.theta_hat(np.zeros((1, sea.dimension)))[0]
            assert value == pytest.approx(sea.filling(), abs=1e-14)

    def test_ball_filling(self):
        expected = 2 * (4.0 / 3.0) * np.pi * 0.6 ** 3 / (2 * np.pi) ** 3
        assert self.balls.filling() == pytest.approx(expected)

    def test_two_spheres_projected_area(self):
        directions = np.random.default_rng(7).standard_normal((100, 3))
        for u in directions:
            assert self.balls.projected_area(u) == pytest.approx(2 * np.pi * 0.6 ** 2, abs=1e-12)

    def test_checkerboard_geometry(self):
        assert self.checkerboard.edge == pytest.approx(np.pi / 4)
        assert self.checkerboard.filling() == 0.5
        assert indicator(self.checkerboard, [0.1, 0.1]) == 1
        assert indicator(self.checkerboard, [0.1, np.pi / 4 + 0.1]) == 0

    def test_diamond_is_half_filled(self):
        assert self.diamond.filling() == pytest.approx(0.5)
        assert self.diamond.projected_area([1.0, 0.0]) == pytest.approx(2 * np.pi)

    def test_overlapping_balls_are_rejected(self):
        with pytest.raises(ModelInvalidError):
            BallUnionSea(dimension=2, centers=((0.0, 0.0), (0.5, 0.0)), radii=(0.4, 0.4))

    def test_ball_radius_limits(self):
        with pytest.raises(ModelInvalidError):
            BallUnionSea(dimension=2, centers=((0.0, 0.0),), radii=(4.0,))

    def test_half_width_limits(self):
        with pytest.raises(ModelInvalidError):
            IntervalProductSea(dimension=1, half_widths=(4.0,))


@pytest.mark.unit
class TestDerivedSeas:

    def setup_method(self):
        self.chain_model = HoppingModel.nearest_neighbour(1, t=1.0)
        self.square_model = HoppingModel.nearest_neighbour(2, t=1.0)

    def test_half_filled_chain_becomes_one_arc(self):
        sea = DispersionSea(model=self.chain_model)
        shape = sea.analytic_shape
        assert isinstance(shape, ArcUnionSea)
        assert sea.filling() == pytest.approx(0.5)
        assert indicator(sea, [np.pi]) == 1
        assert indicator(sea, [0.0]) == 0

    def test_doped_chain_filling(self):
        # eps = 2 cos k + 1 < 0 on |k| > 2 pi / 3
        model = HoppingModel.nearest_neighbour(1, t=1.0, mu=1.0)
        assert DispersionSea(model=model).filling() == pytest.approx(1.0 / 3.0, abs=1e-10)

    def test_half_filled_square_is_a_diamond(self):
        sea = DispersionSea(model=self.square_model)
        assert isinstance(sea.analytic_shape, DiamondSea)
        assert sea.filling() == pytest.approx(0.5)
        assert sea.diagonal_kinks

    def test_second_neighbour_square_has_no_closed_form(self):
        model = HoppingModel(dimension=2, hoppings={(1, 1): 1.0, (-1, -1): 1.0, (1, 0): 1.0, (-1, 0): 1.0})
        sea = DispersionSea(model=model)
        assert sea.analytic_shape is None
        assert sea.theta_hat(np.zeros((1, 2))) is None
        with pytest.raises(CapabilityError):
            sea.projected_area([1.0, 0.0])

    def test_complement(self):
        inner = IntervalProductSea(dimension=1, half_widths=(1.1,), centers=(0.4,))
        outer = inner.complement()
        assert isinstance(outer, ComplementSea)
        assert outer.filling() == pytest.approx(1.0 - inner.filling())
        x = np.arange(-5, 6).reshape(-1, 1)
        nonzero = x[:, 0] != 0
        assert np.allclose(outer.theta_hat(x)[nonzero], -inner.theta_hat(x)[nonzero])

    def test_empty_and_full(self):
        assert IntervalProductSea.empty(2).filling() == 0.0
        assert IntervalProductSea.full(2).filling() == pytest.approx(1.0)

    def test_grid_sea_from_array(self):
        values = np.zeros((8, 8), dtype=bool)
        values[2:6, 2:6] = True
        sea = GridSea(dimension=2, values=values)
        assert sea.resolution == 8
        assert sea.filling() == pytest.approx(0.25)
        assert indicator(sea, [0.0, 0.0]) == 1

    def test_grid_must_be_a_cube(self):
        with pytest.raises(ModelInvalidError):
            GridSea(dimension=2, values=np.zeros((4, 5), dtype=bool))


@pytest.mark.unit
@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-50.0, 50.0), min_size=1, max_size=8))
def test_wrap_lands_in_zone(values):
    wrapped = wrap(values)
    assert np.all(wrapped >= -np.pi) and np.all(wrapped <= np.pi)
    assert np.allclose(np.cos(wrapped), np.cos(values), atol=1e-9)


@pytest.mark.unit
@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 16 - 1))
def test_random_grid_sea_filling(seed):
    values = np.random.default_rng(seed).random((6, 6)) < 0.5
    sea = GridSea(dimension=2, values=values)
    assert sea.filling() == pytest.approx(values.mean())
    assert sea.complement().filling() == pytest.approx(1.0 - values.mean())
