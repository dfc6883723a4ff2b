from FSEE.entropy.binary_entropy import (
    DEFAULT_BASE,
    TangentBound,
    binary_entropy,
    tangent_upper_bound,
    x0_schedule,
)
from FSEE.entropy.block_entropy import Spectrum, block_entropy, purity_lower_bound, spectrum

__all__ = [
    "DEFAULT_BASE",
    "Spectrum",
    "TangentBound",
    "binary_entropy",
    "block_entropy",
    "purity_lower_bound",
    "spectrum",
    "tangent_upper_bound",
    "x0_schedule",
]
