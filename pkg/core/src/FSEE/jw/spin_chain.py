"""
Spin-1/2 image of an open nearest-neighbour fermion chain:

    H = h0 sum_j Z_j + sum_j [ h1 (X_j X_{j+1} + Y_j Y_{j+1}) + h2 (X_j Y_{j+1} - Y_j X_{j+1}) ]

Basis index 0 is spin up and site 0 is the most significant bit, so the
reduced state of the first n_b sites is a reshape of the state vector.
Both bond terms conserve the number of up spins, which labels the sectors.

Couplings follow c_j = [prod_{i<j} Z_i] (X_j + i Y_j) / 2 composed with a
global spin flip and a reversal of the chain:

    (h0, h1, h2) = (T_0 / 2, Re T_1 / 2, Im T_1 / 2)

so that m fermions correspond to m up spins and the spin spectrum equals the
free-fermion many-body energies shifted by -N T_0 / 2.
"""

import functools
from dataclasses import dataclass
from typing import Annotated, Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import entr

from FSEE.entropy.binary_entropy import DEFAULT_BASE
from FSEE.models.hopping_model import HoppingModel
from FSEE.utils.errors import AmbiguityError, CapabilityError, DomainError, NumericError, SizeError
from FSEE.utils.logs import event, get_logger

L = get_logger()

MAX_SPIN_SITES = 14
MAX_SPECTRUM_SITES = 8
DEGENERACY_TOL = 1e-9
ENTROPY_TIE_TOL = 1e-9
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-12

PAULI_X = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
PAULI_Y = sp.csr_matrix(np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex))
PAULI_Z = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))
IDENTITY = sp.identity(2, dtype=complex, format='csr')


class SpinChainSpec(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"N": 10, "h0": 0.0, "h1": 0.5, "h2": 0.0}},
    )

    N: Annotated[int, Field(ge=2, le=MAX_SPIN_SITES, description="Number of sites, open boundary")]
    h0: Annotated[float, Field(default=0.0, description="Coefficient of Z_j")]
    h1: Annotated[float, Field(default=0.0, description="Coefficient of X_j X_{j+1} + Y_j Y_{j+1}")]
    h2: Annotated[float, Field(default=0.0, description="Coefficient of X_j Y_{j+1} - Y_j X_{j+1}")]

    @property
    def dimension(self) -> int:
        return 2 ** self.N

    @classmethod
    def from_hopping(cls, N: int, T0: float, T1: complex) -> "SpinChainSpec":
        h0, h1, h2 = couplings_from_hopping(T0, T1)
        return cls(N=N, h0=h0, h1=h1, h2=h2)


def couplings_from_hopping(T0: float, T1: complex) -> Tuple[float, float, float]:
    """(h0, h1, h2) for on-site energy T_0 and forward hopping T_1."""
    T1 = complex(T1)
    return float(T0) / 2.0, T1.real / 2.0, T1.imag / 2.0


def couplings_from_model(model: HoppingModel) -> Tuple[float, float, float]:
    """Couplings of a 1-D nearest-neighbour model; T_0 includes the chemical potential."""
    if model.dimension != 1:
        raise CapabilityError(f"Jordan-Wigner map is 1-D only, model has d = {model.dimension}")
    if model.hopping_range > 1:
        raise CapabilityError(f"Jordan-Wigner strings for hopping range {model.hopping_range} > 1 are not implemented")
    return couplings_from_hopping(model.onsite, model.hoppings.get((1,), 0.0))


def _embed(N: int, ops: Dict[int, sp.csr_matrix]) -> sp.csr_matrix:
    factors = [ops.get(site, IDENTITY) for site in range(N)]
    return functools.reduce(lambda a, b: sp.kron(a, b, format='csr'), factors)


@functools.lru_cache(maxsize=32)
def _hamiltonian_cached(N: int, h0: float, h1: float, h2: float) -> sp.csr_matrix:
    dim = 2 ** N
    H = sp.csr_matrix((dim, dim), dtype=complex)
    if h0:
        H = H + h0 * functools.reduce(lambda a, b: a + b, (_embed(N, {j: PAULI_Z}) for j in range(N)))
    for j in range(N - 1):
        if h1:
            H = H + h1 * (_embed(N, {j: PAULI_X, j + 1: PAULI_X}) + _embed(N, {j: PAULI_Y, j + 1: PAULI_Y}))
        if h2:
            H = H + h2 * (_embed(N, {j: PAULI_X, j + 1: PAULI_Y}) - _embed(N, {j: PAULI_Y, j + 1: PAULI_X}))
    return H.tocsr()


def spin_hamiltonian(spec: SpinChainSpec) -> sp.csr_matrix:
    return _hamiltonian_cached(spec.N, spec.h0, spec.h1, spec.h2)


def up_counts(N: int) -> np.ndarray:
    """Number of up spins of every basis state."""
    index = np.arange(2 ** N)
    down = ((index[:, None] >> np.arange(N)) & 1).sum(axis=1)
    return N - down


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced state of the first `block` sites."""
    values: np.ndarray
    block: int

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.values)))

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.values)

    def entropy(self, base: float = DEFAULT_BASE) -> float:
        p = np.clip(self.spectrum(), 0.0, None)
        return float(np.sum(entr(p)) / np.log(base))


def reduced_density_matrix(state: np.ndarray, N: int, block: int) -> DensityMatrix:
    """Trace out sites block..N-1 of a normalised state vector."""
    if not 1 <= block <= N:
        raise DomainError(f"Block must have between 1 and {N} sites, got {block}")
    psi = np.asarray(state, dtype=complex).reshape(2 ** block, 2 ** (N - block))
    rho = DensityMatrix(values=psi @ psi.conj().T, block=block)
    if abs(rho.trace - 1.0) > TRACE_TOL * 2 ** block:
        raise NumericError(f"Reduced density matrix has trace {rho.trace:.15g}")
    lowest = float(rho.spectrum()[0])
    if lowest < -POSITIVITY_TOL:
        raise NumericError(f"Reduced density matrix has eigenvalue {lowest:.3e} < 0")
    return rho


@dataclass(frozen=True)
class GroundSpace:
    energy: float
    states: List[np.ndarray]
    sectors: List[int]


def _sector_eigh(spec: SpinChainSpec, sector: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    index = np.flatnonzero(up_counts(spec.N) == sector)
    block = spin_hamiltonian(spec)[index][:, index].toarray()
    energies, vectors = np.linalg.eigh(block)
    return energies, vectors, index


def ground_space(spec: SpinChainSpec, sector: Optional[int] = None) -> GroundSpace:
    """Lowest eigenvalue and its eigenvectors, in one up-spin sector or overall."""
    sectors = range(spec.N + 1) if sector is None else [sector]
    if sector is not None and not 0 <= sector <= spec.N:
        raise DomainError(f"Sector must be in 0..{spec.N}, got {sector}")

    candidates = []
    for m in sectors:
        energies, vectors, index = _sector_eigh(spec, m)
        candidates.append((m, energies, vectors, index))
    energy = min(float(c[1][0]) for c in candidates)

    states, labels = [], []
    for m, energies, vectors, index in candidates:
        for k in np.flatnonzero(energies <= energy + DEGENERACY_TOL * (1.0 + abs(energy))):
            psi = np.zeros(spec.dimension, dtype=complex)
            psi[index] = vectors[:, k]
            states.append(psi)
            labels.append(m)
    return GroundSpace(energy=energy, states=states, sectors=labels)


def spin_ground_entropy(spec: SpinChainSpec, block: int, sector: Optional[int] = None,
                        base: float = DEFAULT_BASE, ground: Optional[GroundSpace] = None) -> float:
    """
    Entanglement entropy of the first `block` sites in the ground state.

    A degenerate ground space whose basis states give different block
    entropies is reported as an AmbiguityError instead of being resolved.
    """
    ground = ground or ground_space(spec, sector)
    entropies = [reduced_density_matrix(psi, spec.N, block).entropy(base) for psi in ground.states]
    spread = max(entropies) - min(entropies)
    if spread > ENTROPY_TIE_TOL:
        raise AmbiguityError(
            f"Ground space of {spec.N} sites is {len(entropies)}-fold degenerate (sectors {ground.sectors}) "
            f"with block entropies differing by {spread:.3e}")
    L.debug(event("spin_ground_entropy", N=spec.N, block=block, sector=sector,
                  degeneracy=len(entropies), S=entropies[0]))
    return float(entropies[0])


def spin_spectrum(spec: SpinChainSpec) -> np.ndarray:
    """Full ascending spectrum by dense diagonalisation (N <= 8)."""
    if spec.N > MAX_SPECTRUM_SITES:
        raise SizeError(f"Full spectrum is limited to N <= {MAX_SPECTRUM_SITES}, got {spec.N}")
    return np.linalg.eigvalsh(spin_hamiltonian(spec).toarray())
