from typing import Annotated, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from FSEE.utils.errors import ModelInvalidError

HERMITICITY_TOL = 1e-12
IMAG_RESIDUE_TOL = 1e-12

#-------------------------------------------------------------------------------
# HoppingModel

class HoppingModel(BaseModel):
    """
    Translation-invariant tight-binding model on the hypercubic lattice.

    The Hamiltonian is H = sum_{a,b} T_{a-b} c_a^dag c_b + mu sum_a c_a^dag c_a,
    stored by its finitely many non-zero amplitudes T_alpha. The zero offset is
    always present (inserted as 0 when omitted).
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "dimension": 1,
                "hoppings": {(0,): 0.0, (1,): 1.0, (-1,): 1.0},
                "chemical_potential": 0.0,
            }
        },
    )

    dimension: Annotated[
        int,
        Field(ge=1, description="Spatial dimension d of the lattice")
    ]
    hoppings: Annotated[
        Dict[Tuple[int, ...], complex],
        Field(description="Offset vector alpha -> amplitude T_alpha, finite support")
    ]
    chemical_potential: Annotated[
        float,
        Field(default=0.0, description="Chemical potential mu added to T_0")
    ]

    @field_validator("hoppings", mode="before")
    @classmethod
    def _normalise_offsets(cls, value):
        if not isinstance(value, dict):
            return value
        return {tuple(int(c) for c in np.atleast_1d(key)): amp for key, amp in value.items()}

    @model_validator(mode="after")
    def _check_invariants(self) -> "HoppingModel":
        d = self.dimension
        for offset in self.hoppings:
            if len(offset) != d:
                raise ModelInvalidError(
                    f"Offset {offset} has {len(offset)} components, model dimension is {d}")

        zero = (0,) * d
        if zero not in self.hoppings:
            self.hoppings[zero] = 0.0 + 0.0j
        if abs(self.hoppings[zero].imag) > HERMITICITY_TOL:
            raise ModelInvalidError(f"On-site amplitude T_0 = {self.hoppings[zero]} is not real")

        for offset, amp in self.hoppings.items():
            mirror = tuple(-c for c in offset)
            partner = self.hoppings.get(mirror)
            if partner is None:
                if abs(amp) > HERMITICITY_TOL:
                    raise ModelInvalidError(
                        f"Non-Hermitian hoppings: T{offset} = {amp} has no partner at {mirror}")
                continue
            if abs(partner - np.conj(amp)) > HERMITICITY_TOL * (1.0 + abs(amp)):
                raise ModelInvalidError(
                    f"Non-Hermitian hoppings: T{mirror} = {partner} != conj(T{offset}) = {np.conj(amp)}")
        return self

    @property
    def zero_offset(self) -> Tuple[int, ...]:
        return (0,) * self.dimension

    @property
    def onsite(self) -> float:
        """Total on-site energy T_0 + mu."""
        return float(np.real(self.hoppings[self.zero_offset])) + self.chemical_potential

    @property
    def hopping_range(self) -> int:
        """Largest |alpha_i| over offsets with a non-zero amplitude."""
        ranges = [max(abs(c) for c in off) for off, amp in self.hoppings.items() if abs(amp) > 0]
        return max(ranges, default=0)

    def offsets_array(self) -> np.ndarray:
        return np.array(list(self.hoppings.keys()), dtype=float).reshape(-1, self.dimension)

    def amplitudes(self) -> np.ndarray:
        return np.array(list(self.hoppings.values()), dtype=complex)

    def dispersion(self, k: np.ndarray) -> np.ndarray:
        """Vectorised epsilon(k) = sum_alpha T_alpha exp(-i k.alpha) + mu for k of shape (..., d)."""
        k = np.asarray(k, dtype=float)
        if k.shape[-1] != self.dimension:
            raise ModelInvalidError(
                f"Momentum has {k.shape[-1]} components, model dimension is {self.dimension}")
        phases = np.exp(-1j * (k @ self.offsets_array().T))
        values = phases @ self.amplitudes() + self.chemical_potential
        residue = np.max(np.abs(values.imag), initial=0.0)
        if residue > IMAG_RESIDUE_TOL * (1.0 + np.abs(self.amplitudes()).sum()):
            raise ModelInvalidError(f"Dispersion has imaginary residue {residue:.3e}; hoppings are not Hermitian")
        return values.real

    def nearest_neighbour_amplitude(self) -> Optional[complex]:
        """Common amplitude t if the model is isotropic nearest-neighbour (T_{+e_i} = t for all i), else None."""
        d = self.dimension
        t = None
        for offset, amp in self.hoppings.items():
            if offset == self.zero_offset or abs(amp) == 0:
                continue
            if sum(abs(c) for c in offset) != 1:
                return None
            axis = next(i for i, c in enumerate(offset) if c != 0)
            forward = amp if offset[axis] > 0 else np.conj(amp)
            if t is None:
                t = forward
            elif abs(forward - t) > HERMITICITY_TOL:
                return None
        if t is None:
            return None
        unit = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
        if any(abs(self.hoppings.get(u, 0.0)) == 0 for u in unit):
            return None
        return complex(t)

    @classmethod
    def nearest_neighbour(cls, dimension: int, t: complex = 1.0, mu: float = 0.0, onsite: float = 0.0) -> "HoppingModel":
        """Isotropic nearest-neighbour model with T_{+e_i} = t, T_{-e_i} = conj(t)."""
        hoppings: Dict[Tuple[int, ...], complex] = {(0,) * dimension: complex(onsite)}
        for i in range(dimension):
            e = tuple(1 if j == i else 0 for j in range(dimension))
            hoppings[e] = complex(t)
            hoppings[tuple(-c for c in e)] = complex(np.conj(t))
        return cls(dimension=dimension, hoppings=hoppings, chemical_potential=mu)


def dispersion_at(model: HoppingModel, k) -> float:
    """epsilon(k) at a single momentum."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    return float(model.dispersion(k[None, :])[0])
