import numpy as np
import pytest

from FSEE.entropy.block_entropy import Spectrum, block_entropy, purity_lower_bound, spectrum
from FSEE.kernel.correlation_kernel import CorrelationKernel
from FSEE.kernel.region_matrix import build_region_matrix
from FSEE.models.fermi_sea import IntervalProductSea
from FSEE.models.region import Region
from FSEE.utils.errors import DomainError


@pytest.mark.unit
class TestHalfFilledChain:

    def setup_method(self):
        self.kernel = CorrelationKernel(IntervalProductSea(dimension=1, half_widths=(np.pi / 2,)))

    def report(self, length, base=2.0):
        return block_entropy(build_region_matrix(self.kernel, Region.cube(1, length)), base=base)

    def test_single_site(self):
        report = self.report(1)
        assert report.S == pytest.approx(1.0, abs=1e-12)
        assert report.purity_trace == pytest.approx(1.0, abs=1e-12)
        assert report.x0 == pytest.approx(0.65343, abs=1e-5)

    def test_two_sites(self):
        report = self.report(2)
        assert report.S == pytest.approx(1.367521, abs=1e-5)
        assert report.purity_trace == pytest.approx(1.189431, abs=1e-5)
        assert report.n == 2 and report.L == 2 and report.d == 1

    def test_sandwich(self):
        for length in (1, 2, 3, 5, 8, 13, 21):
            report = self.report(length)
            assert report.purity_lower <= report.S + 1e-9
            assert report.S <= report.tangent_upper + 1e-9

    def test_natural_base(self):
        bits = self.report(6)
        nats = self.report(6, base=np.e)
        assert nats.S == pytest.approx(bits.S * np.log(2.0))
        assert nats.purity_trace == pytest.approx(bits.purity_trace)
        assert nats.purity_lower <= nats.S + 1e-9

    def test_concavity(self):
        S = [self.report(length).S for length in range(1, 40)]
        for i in range(1, len(S) - 1):
            assert S[i + 1] + S[i - 1] <= 2 * S[i] + 1e-9


@pytest.mark.unit
class TestSpectrum:

    def test_eigenvalues_sorted(self):
        result = spectrum(np.array([[0.0, 0.5], [0.5, 0.0]]))
        assert isinstance(result, Spectrum)
        assert np.allclose(result.eigenvalues, [-0.5, 0.5])
        assert len(result) == 2

    def test_outside_unit_interval(self):
        with pytest.raises(DomainError):
            spectrum(np.array([[1.5]]))

    def test_clamped_within_tolerance(self):
        assert spectrum(np.array([[1.0 + 1e-12]])).eigenvalues[0] == 1.0

    def test_purity_without_eigensolve(self):
        gamma = np.array([[0.2, 0.1j], [-0.1j, -0.4]])
        values = np.linalg.eigvalsh(gamma)
        assert purity_lower_bound(gamma) == pytest.approx(np.sum(1.0 - values ** 2))


@pytest.mark.unit
@pytest.mark.parametrize("sea", [IntervalProductSea.empty(1), IntervalProductSea.full(1),
                                 IntervalProductSea.empty(2), IntervalProductSea.full(2)])
def test_trivial_seas_have_no_entropy(sea):
    kernel = CorrelationKernel(sea)
    for length in (1, 3, 6):
        report = block_entropy(build_region_matrix(kernel, Region.cube(sea.dimension, length)))
        assert report.S == pytest.approx(0.0, abs=1e-12)


@pytest.mark.unit
def test_particle_hole_leaves_entropy_unchanged():
    sea = IntervalProductSea(dimension=2, half_widths=(1.2, 0.7), centers=(0.3, 0.0))
    for length in (2, 4):
        region = Region.cube(2, length)
        S = block_entropy(build_region_matrix(CorrelationKernel(sea), region)).S
        S_c = block_entropy(build_region_matrix(CorrelationKernel(sea.complement()), region)).S
        assert S_c == pytest.approx(S, abs=1e-12)


@pytest.mark.unit
def test_ball_block_reports_nesting_edge():
    kernel = CorrelationKernel(IntervalProductSea(dimension=2, half_widths=(np.pi / 2,)))
    report = block_entropy(build_region_matrix(kernel, Region.ball(2, 6)), L_edge=6)
    assert report.shape == "ball"
    assert report.L == 6
    assert report.n < 36
