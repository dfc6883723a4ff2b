from FSEE.jw.fermion_chain import chain_matrix, fermion_chain_entropy, free_fermion_many_body_spectrum
from FSEE.jw.jw_check import JWCheckPipeline, jw_check, jw_rows, spectrum_deviation
from FSEE.jw.spin_chain import (
    DensityMatrix,
    SpinChainSpec,
    couplings_from_hopping,
    couplings_from_model,
    ground_space,
    reduced_density_matrix,
    spin_ground_entropy,
    spin_hamiltonian,
    spin_spectrum,
)

__all__ = [
    "DensityMatrix",
    "JWCheckPipeline",
    "SpinChainSpec",
    "chain_matrix",
    "couplings_from_hopping",
    "couplings_from_model",
    "fermion_chain_entropy",
    "free_fermion_many_body_spectrum",
    "ground_space",
    "jw_check",
    "jw_rows",
    "reduced_density_matrix",
    "spectrum_deviation",
    "spin_ground_entropy",
    "spin_hamiltonian",
    "spin_spectrum",
]
