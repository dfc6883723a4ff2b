from typing import Annotated, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from FSEE.utils.errors import ModelInvalidError


class Region(BaseModel):
    """
    Finite set of lattice sites in Z^d.

    `edge` is the edge of the smallest nesting cube anchored at the origin;
    sweeps report it as L for every shape.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension: Annotated[
        int,
        Field(ge=1, description="Spatial dimension d")
    ]
    shape: Annotated[
        Literal["cube", "ball", "voxels"],
        Field(description="How the sites were generated")
    ]
    sites: Annotated[
        np.ndarray,
        Field(description="Integer site coordinates, shape (n, d)")
    ]
    edge: Annotated[
        Optional[int],
        Field(default=None, description="Edge L of the nesting cube, if generated from one")
    ]

    @field_validator("sites", mode="before")
    @classmethod
    def _as_int_array(cls, value):
        arr = np.array(value, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def _check(self) -> "Region":
        if self.sites.ndim != 2 or self.sites.shape[1] != self.dimension:
            raise ModelInvalidError(f"Sites must have shape (n, {self.dimension}), got {self.sites.shape}")
        if self.sites.shape[0] < 1:
            raise ModelInvalidError("A region needs at least one site")
        if np.unique(self.sites, axis=0).shape[0] != self.sites.shape[0]:
            raise ModelInvalidError("Region sites must be distinct")
        return self

    @property
    def n(self) -> int:
        return int(self.sites.shape[0])

    @classmethod
    def cube(cls, dimension: int, L: int) -> "Region":
        if L < 1:
            raise ModelInvalidError(f"Cube edge must be >= 1, got {L}")
        axes = np.meshgrid(*([np.arange(L)] * dimension), indexing='ij')
        sites = np.stack([a.ravel() for a in axes], axis=-1)
        return cls(dimension=dimension, shape="cube", sites=sites, edge=L)

    @classmethod
    def ball(cls, dimension: int, L: int) -> "Region":
        """Sites of the cube of edge L within distance L/2 of its centre."""
        cube = cls.cube(dimension, L)
        centre = 0.5 * (L - 1)
        keep = np.sum((cube.sites - centre) ** 2, axis=1) <= (0.5 * L) ** 2
        return cls(dimension=dimension, shape="ball", sites=cube.sites[keep], edge=L)

    @classmethod
    def voxels(cls, sites) -> "Region":
        arr = np.array(sites, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        return cls(dimension=arr.shape[1], shape="voxels", sites=arr)

    def offsets(self) -> np.ndarray:
        """All pairwise differences site_a - site_b, shape (n, n, d)."""
        return self.sites[:, None, :] - self.sites[None, :, :]
