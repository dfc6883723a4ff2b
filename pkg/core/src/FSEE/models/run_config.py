from typing import Annotated, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from FSEE.models.fermi_sea import AnySea

DEFAULT_THREADS_ENV = "FSEE_THREADS"


class RunConfig(BaseModel):
    """
    Everything a subcommand needs, assembled from flags, an optional config
    file and the environment. Flags win over the config file.
    """
    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
        json_schema_extra={
            "example": {
                "subcommand": "entropy-sweep",
                "sea": {"kind": "interval", "dimension": 1, "half_widths": [1.5707963]},
                "L": [1, 2],
                "base": 2.0,
            }
        },
    )

    subcommand: Annotated[str, Field(description="CLI subcommand being run")]
    sea: Annotated[Optional[AnySea], Field(default=None, description="Fermi sea from --sea or the config file")]
    L: Annotated[Optional[List[int]], Field(default=None, description="Block edges, strictly increasing")]
    base: Annotated[float, Field(default=2.0, gt=1.0, description="Logarithm base of entropies")]
    mode: Annotated[
        Literal["auto", "analytic", "quadrature", "fft"],
        Field(default="auto", description="Kernel evaluation mode")
    ]
    M: Annotated[Optional[int], Field(default=None, ge=2, description="Quadrature grid resolution override")]
    max_offset: Annotated[int, Field(default=2 ** 16, ge=1, description="Largest kernel offset component")]
    cap: Annotated[int, Field(default=20000, ge=1, description="Largest region size in sites")]
    threads: Annotated[int, Field(default=1, ge=1, description="Worker threads")]
    seed: Annotated[int, Field(default=0, ge=0, description="Seed for randomized sampling")]
    out: Annotated[Optional[str], Field(default=None, description="Output path, stdout when omitted or '-'")]

    @field_validator("L")
    @classmethod
    def _strictly_increasing(cls, value):
        if value is None:
            return value
        if not value:
            raise ValueError("L list must not be empty")
        if any(v < 1 for v in value):
            raise ValueError(f"L values must be >= 1, got {value}")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError(f"L list must be strictly increasing, got {value}")
        return value
