"""
Finite free-fermion chains: ground states with m particles and their block
entropies from the correlation matrix.
"""

import numpy as np

from FSEE.entropy.binary_entropy import DEFAULT_BASE, binary_entropy
from FSEE.entropy.block_entropy import spectrum
from FSEE.utils.errors import AmbiguityError, DomainError, ModelInvalidError, SizeError
from FSEE.utils.logs import event, get_logger

L = get_logger()

MAX_CHAIN_SITES = 2000
MAX_SUBSET_MODES = 16
FERMI_TIE_TOL = 1e-12
HERMITICITY_TOL = 1e-12


def chain_matrix(N: int, T0: float = 0.0, T1: complex = 1.0) -> np.ndarray:
    """Open chain with T[j, j] = T0, T[j+1, j] = T1 and T[j, j+1] = conj(T1)."""
    if N < 1:
        raise DomainError(f"Chain needs at least one site, got {N}")
    T = np.diag(np.full(N, float(T0))).astype(complex)
    j = np.arange(N - 1)
    T[j + 1, j] = complex(T1)
    T[j, j + 1] = np.conj(complex(T1))
    return T


def _check_hopping_matrix(T) -> np.ndarray:
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ModelInvalidError(f"Single-particle matrix must be square, got shape {T.shape}")
    if T.shape[0] > MAX_CHAIN_SITES:
        raise SizeError(f"Chain of {T.shape[0]} sites exceeds the cap {MAX_CHAIN_SITES}")
    residue = float(np.max(np.abs(T - T.conj().T), initial=0.0))
    if residue > HERMITICITY_TOL * (1.0 + np.max(np.abs(T), initial=0.0)):
        raise ModelInvalidError(f"Single-particle matrix is not Hermitian (residue {residue:.3e})")
    return T


def fermion_chain_entropy(T, m: int, block: int, base: float = DEFAULT_BASE) -> float:
    """
    Entropy of sites 0..block-1 when the m lowest modes of T are filled.

    gamma_ab = delta_ab - 2 sum_{occupied nu} phi_nu(a) conj(phi_nu(b)).
    """
    T = _check_hopping_matrix(T)
    N = T.shape[0]
    if not 0 <= m <= N:
        raise DomainError(f"Filling must be in 0..{N}, got {m}")
    if not 1 <= block <= N:
        raise DomainError(f"Block must have between 1 and {N} sites, got {block}")

    energies, modes = np.linalg.eigh(T)
    if 0 < m < N and abs(energies[m] - energies[m - 1]) < FERMI_TIE_TOL:
        raise AmbiguityError(
            f"Degenerate Fermi level: modes {m - 1} and {m} both have energy {energies[m]:.12g}")

    occupied = modes[:block, :m]
    gamma = np.eye(block) - 2.0 * occupied @ occupied.conj().T
    S = float(np.sum(binary_entropy(spectrum(gamma).eigenvalues, base)))
    L.debug(event("fermion_chain_entropy", N=N, m=m, block=block, S=S))
    return S


def free_fermion_many_body_spectrum(T) -> np.ndarray:
    """Sorted sums of single-particle energies over every subset of modes."""
    T = _check_hopping_matrix(T)
    if T.shape[0] > MAX_SUBSET_MODES:
        raise SizeError(f"Many-body spectrum is limited to {MAX_SUBSET_MODES} modes, got {T.shape[0]}")
    sums = np.zeros(1)
    for energy in np.linalg.eigvalsh(T):
        sums = np.concatenate([sums, sums + energy])
    return np.sort(sums)
