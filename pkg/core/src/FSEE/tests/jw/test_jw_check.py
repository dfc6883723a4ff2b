import pytest

from FSEE.jw.jw_check import jw_check, jw_rows, spectrum_deviation
from FSEE.utils.errors import DomainError

AGREEMENT = 1e-9


@pytest.mark.unit
class TestRows:

    @pytest.mark.parametrize("N", [6, 8])
    def test_half_filling_agrees(self, N):
        rows = jw_rows(N)
        assert [r.block for r in rows] == list(range(1, N // 2 + 1))
        assert all(r.m == N // 2 for r in rows)
        assert max(r.deviation for r in rows) <= AGREEMENT

    def test_complex_hopping_and_onsite(self):
        rows = jw_rows(8, T0=0.2, T1=1.0 + 0.5j)
        assert max(r.deviation for r in rows) <= AGREEMENT

    def test_other_filling(self):
        rows = jw_rows(7, m=2, blocks=[1, 3, 5])
        assert max(r.deviation for r in rows) <= AGREEMENT

    def test_no_blocks(self):
        with pytest.raises(DomainError):
            jw_rows(6, blocks=[])


@pytest.mark.unit
class TestSpectrum:

    @pytest.mark.parametrize("N,T0,T1", [(4, 0.0, 1.0), (6, 0.3, 0.7 - 0.4j), (5, -0.5, 1.0j)])
    def test_many_body_energies(self, N, T0, T1):
        assert spectrum_deviation(N, T0, T1) <= AGREEMENT


@pytest.mark.unit
def test_pipeline_keeps_N_order():
    rows = jw_check([4, 6], threads=2)
    assert [r.N for r in rows] == [4, 4, 6, 6, 6]


@pytest.mark.slow
def test_larger_chains():
    rows = jw_check([10, 12])
    assert max(r.deviation for r in rows) <= AGREEMENT
