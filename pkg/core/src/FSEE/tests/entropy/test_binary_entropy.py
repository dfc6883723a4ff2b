import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from FSEE.entropy.binary_entropy import (
    TangentBound,
    binary_entropy,
    binary_entropy_derivative,
    tangent_upper_bound,
    x0_schedule,
)
from FSEE.utils.errors import DomainError


@pytest.mark.unit
class TestBinaryEntropy:

    def test_known_values(self):
        assert binary_entropy(0.0) == pytest.approx(1.0)
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(-1.0) == 0.0
        assert binary_entropy(2.0 / np.pi) == pytest.approx(0.683760, abs=1e-5)

    def test_natural_base(self):
        assert binary_entropy(0.0, base=np.e) == pytest.approx(np.log(2.0))

    def test_vectorised(self):
        values = binary_entropy(np.array([-1.0, 0.0, 1.0]))
        assert values.shape == (3,)
        assert np.allclose(values, [0.0, 1.0, 0.0])

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            binary_entropy(1.0 + 1e-9)
        with pytest.raises(DomainError):
            binary_entropy(np.nan)

    def test_bad_base(self):
        with pytest.raises(DomainError):
            binary_entropy(0.5, base=1.0)

    def test_derivative(self):
        x, step = 0.3, 1e-6
        numeric = (binary_entropy(x + step) - binary_entropy(x - step)) / (2 * step)
        assert binary_entropy_derivative(x) == pytest.approx(numeric, rel=1e-6)


@pytest.mark.unit
class TestTangentBound:

    def test_example_parameters(self):
        bound = tangent_upper_bound(0.9)
        assert isinstance(bound, TangentBound)
        assert bound.a == pytest.approx(1.17998, abs=1e-4)
        assert bound.b == pytest.approx(0.06220, abs=1e-4)

    def test_touches_at_x0(self):
        bound = tangent_upper_bound(0.65)
        assert bound(0.65) == pytest.approx(binary_entropy(0.65), abs=1e-14)
        assert bound(-0.65) == pytest.approx(binary_entropy(-0.65), abs=1e-14)

    def test_dominates_on_grid(self):
        x = np.linspace(-1.0, 1.0, 4001)
        for x0 in (0.1, 0.5, 0.65343, 0.99):
            assert np.min(tangent_upper_bound(x0)(x) - binary_entropy(x)) >= -1e-12

    def test_x0_outside_interval(self):
        with pytest.raises(DomainError):
            tangent_upper_bound(0.0)
        with pytest.raises(DomainError):
            tangent_upper_bound(1.0)


@pytest.mark.unit
class TestSchedule:

    def test_example_values(self):
        assert x0_schedule(2) == pytest.approx(0.65343, abs=1e-5)
        assert x0_schedule(3) == pytest.approx(0.63380, abs=1e-5)

    def test_approaches_one(self):
        assert x0_schedule(10 ** 6) > 0.9999

    def test_needs_two_sites(self):
        with pytest.raises(DomainError):
            x0_schedule(1)


@pytest.mark.unit
@settings(max_examples=100, deadline=None)
@given(x=st.floats(-1.0, 1.0), length=st.integers(2, 10 ** 5))
def test_tangent_dominates_random_points(x, length):
    bound = tangent_upper_bound(x0_schedule(length))
    assert float(bound(x)) >= binary_entropy(x) - 1e-12


@pytest.mark.unit
@settings(max_examples=100, deadline=None)
@given(st.floats(-1.0, 1.0))
def test_entropy_symmetric_and_bounded(x):
    h = binary_entropy(x)
    assert 0.0 <= h <= 1.0 + 1e-15
    assert h == pytest.approx(binary_entropy(-x), abs=1e-12)
