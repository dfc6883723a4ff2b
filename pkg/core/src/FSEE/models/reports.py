"""
Report contracts shared by the numerical modules and the CLI writers.

Reports are plain pydantic models so they can be validated by
`SchemaValidator`, dumped to CSV rows and serialised to JSON summaries.
"""

import math
from typing import Annotated, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field

#-------------------------------------------------------------------------------
# Entropy

class EntropyReport(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "d": 1, "L": 2, "n": 2, "shape": "cube",
                "S": 1.36752, "purity_trace": 1.18943, "purity_lower": 1.18943,
                "tangent_upper": 1.36773, "a": 0.86247, "b": 0.17094, "x0": 0.65343,
                "base": 2.0,
            }
        },
    )

    d: Annotated[int, Field(ge=1, description="Spatial dimension")]
    L: Annotated[Optional[int], Field(default=None, description="Edge of the nesting cube, if any")]
    n: Annotated[int, Field(ge=1, description="Number of sites in the block")]
    shape: Annotated[Literal["cube", "ball", "voxels"], Field(default="cube")]
    S: Annotated[float, Field(ge=0.0, description="Entanglement entropy in the configured base")]
    purity_trace: Annotated[float, Field(ge=0.0, description="tr(1 - gamma^2)")]
    purity_lower: Annotated[float, Field(ge=0.0, description="tr(1 - gamma^2) * log_base(2), a lower bound on S")]
    tangent_upper: Annotated[float, Field(description="a * tr(1 - gamma^2) + b * n, an upper bound on S")]
    a: Annotated[float, Field(gt=0.0, description="Tangent slope parameter")]
    b: Annotated[float, Field(description="Tangent offset parameter")]
    x0: Annotated[float, Field(ge=0.0, lt=1.0, description="Tangency point")]
    base: Annotated[float, Field(gt=1.0, description="Logarithm base of S")]
    purity_fourier: Annotated[Optional[float], Field(default=None, description="tr(1 - gamma^2) via the Fourier route")]

#-------------------------------------------------------------------------------
# Geometry

class XiProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    sea: Annotated[str, Field(description="Sea identifier")]
    dimension: int
    q: Annotated[List[List[float]], Field(description="Sampled shift vectors")]
    values: Annotated[List[float], Field(description="Xi(q) at every sample")]
    cone_lower: Annotated[Optional[List[float]], Field(default=None, description="s- |q| per sample")]
    cone_upper: Annotated[Optional[List[float]], Field(default=None, description="s+ |q| per sample")]


class SurfaceProjection(BaseModel):
    model_config = ConfigDict(frozen=True)

    sea: str
    direction: Annotated[List[float], Field(description="Unit direction q-hat")]
    area: Annotated[float, Field(ge=0.0, description="s(q-hat)")]
    s_minus: Annotated[float, Field(ge=0.0, description="Minimum over sampled directions")]
    s_plus: Annotated[float, Field(ge=0.0, description="Maximum over sampled directions")]


class ConeViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    q: List[float]
    xi: float
    lower: float
    upper: float


class ConeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    sea: str
    radius: Annotated[float, Field(gt=0.0, description="Sampling radius epsilon")]
    s_minus: float
    s_plus: float
    slopes: Annotated[Literal["projection", "empirical"], Field(description="Where s- and s+ came from")]
    tolerance: float
    samples: int
    profile: XiProfile
    violations: List[ConeViolation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class FejerLinearSum(BaseModel):
    model_config = ConfigDict(frozen=True)

    L: Annotated[int, Field(ge=1)]
    quadrature: Annotated[float, Field(description="int_0^pi F_L(x) x dx by adaptive quadrature")]
    digamma: Annotated[float, Field(description="2(1 + euler_gamma + ln 2 + psi(L))")]
    series: Annotated[float, Field(description="Exact cosine-series value")]

    @property
    def deviation(self) -> float:
        return self.quadrature - self.digamma

#-------------------------------------------------------------------------------
# Scaling

class ScalingFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    sea: Annotated[str, Field(default="", description="Sea identifier")]
    d: int
    rows_used: Annotated[List[int], Field(description="L values that entered the fit")]
    c: Annotated[float, Field(description="Coefficient of L^(d-1) ln L")]
    c1: Annotated[float, Field(description="Coefficient of L^(d-1); 0 for d = 1")]
    c0: Annotated[float, Field(description="Constant term")]
    residual: Annotated[float, Field(ge=0.0, description="Root-mean-square fit residual, entropy units")]
    relative_residual: float
    condition: Annotated[float, Field(description="Condition number of the scaled basis")]
    c_minus: Annotated[float, Field(description="min S / (L^(d-1) ln L)")]
    c_plus: Annotated[float, Field(description="max S / (L^(d-1) ln^2 L)")]
    constants_ordered: Annotated[bool, Field(description="Whether c_minus <= c_plus on this sweep")]
    base: Annotated[float, Field(default=2.0, gt=1.0, description="Log base of the fitted entropies")]

    @computed_field
    @property
    def c_nats(self) -> float:
        """Leading coefficient converted to natural-log units."""
        return self.c * math.log(self.base)


class SandwichViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    L: int
    kind: Literal["scaling_lower", "scaling_upper", "purity_lower", "tangent_upper"]
    value: float
    bound: float


class SandwichReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    fit: ScalingFit
    violations: List[SandwichViolation] = Field(default_factory=list)
    min_slack_lower: Annotated[Optional[float], Field(default=None, description="min over rows of S - purity_lower")]
    min_slack_upper: Annotated[Optional[float], Field(default=None, description="min over rows of tangent_upper - S")]
    area_law_like: Annotated[bool, Field(description="No logarithmic growth seen")]
    flags: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

#-------------------------------------------------------------------------------
# Jordan-Wigner

class JWCheckRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    N: Annotated[int, Field(ge=2)]
    m: Annotated[int, Field(ge=0)]
    block: Annotated[int, Field(ge=1)]
    spin: float
    fermion: float

    @property
    def deviation(self) -> float:
        return abs(self.spin - self.fermion)
