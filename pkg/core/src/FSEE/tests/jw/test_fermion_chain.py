import numpy as np
import pytest

from FSEE.jw.fermion_chain import chain_matrix, fermion_chain_entropy, free_fermion_many_body_spectrum
from FSEE.utils.errors import AmbiguityError, DomainError, ModelInvalidError, SizeError


@pytest.mark.unit
class TestChainMatrix:

    def test_entries(self):
        T = chain_matrix(3, T0=0.5, T1=1.0 + 2.0j)
        assert T[0, 0] == 0.5
        assert T[1, 0] == 1.0 + 2.0j
        assert T[0, 1] == 1.0 - 2.0j
        assert T[2, 0] == 0.0

    def test_hermitian(self):
        T = chain_matrix(7, T0=-0.3, T1=0.4 - 0.9j)
        assert np.allclose(T, T.conj().T)

    def test_empty_chain(self):
        with pytest.raises(DomainError):
            chain_matrix(0)


@pytest.mark.unit
class TestChainEntropy:

    def setup_method(self):
        self.T = chain_matrix(8)

    def test_two_sites_share_one_bit(self):
        assert fermion_chain_entropy(chain_matrix(2), 1, 1) == pytest.approx(1.0, abs=1e-12)

    def test_empty_and_full_chain(self):
        assert fermion_chain_entropy(self.T, 0, 3) == pytest.approx(0.0, abs=1e-12)
        assert fermion_chain_entropy(self.T, 8, 3) == pytest.approx(0.0, abs=1e-12)

    def test_complementary_blocks(self):
        # pure state: S(A) = S(complement of A)
        left = fermion_chain_entropy(self.T, 4, 3)
        right = fermion_chain_entropy(self.T[::-1, ::-1], 4, 5)
        assert left == pytest.approx(right, abs=1e-10)

    def test_natural_base(self):
        bits = fermion_chain_entropy(self.T, 4, 2)
        nats = fermion_chain_entropy(self.T, 4, 2, base=np.e)
        assert nats == pytest.approx(bits * np.log(2.0))

    def test_degenerate_fermi_level(self):
        T = np.diag([0.0, 1.0, 1.0, 2.0])
        with pytest.raises(AmbiguityError):
            fermion_chain_entropy(T, 2, 1)

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            fermion_chain_entropy(self.T, 9, 1)
        with pytest.raises(DomainError):
            fermion_chain_entropy(self.T, 4, 0)
        with pytest.raises(ModelInvalidError):
            fermion_chain_entropy(np.array([[0.0, 1.0], [0.0, 0.0]]), 1, 1)


@pytest.mark.unit
class TestManyBodySpectrum:

    def test_subset_sums(self):
        values = free_fermion_many_body_spectrum(np.diag([-1.0, 0.5]))
        assert np.allclose(values, [-1.0, -0.5, 0.0, 0.5])

    def test_size_cap(self):
        with pytest.raises(SizeError):
            free_fermion_many_body_spectrum(chain_matrix(17))
