from FSEE.models.hopping_model import HoppingModel, dispersion_at
from FSEE.models.fermi_sea import (
    AnySea,
    ArcUnionSea,
    BallUnionSea,
    CheckerboardSea,
    ComplementSea,
    DiamondSea,
    DispersionSea,
    FermiSea,
    GridSea,
    IntervalProductSea,
    filling,
    indicator,
)
from FSEE.models.region import Region
from FSEE.models.reports import (
    ConeReport,
    ConeViolation,
    EntropyReport,
    FejerLinearSum,
    JWCheckRow,
    SandwichReport,
    SandwichViolation,
    ScalingFit,
    SurfaceProjection,
    XiProfile,
)

__all__ = [
    "AnySea",
    "ArcUnionSea",
    "BallUnionSea",
    "CheckerboardSea",
    "ComplementSea",
    "ConeReport",
    "ConeViolation",
    "DiamondSea",
    "DispersionSea",
    "EntropyReport",
    "FejerLinearSum",
    "FermiSea",
    "GridSea",
    "HoppingModel",
    "IntervalProductSea",
    "JWCheckRow",
    "Region",
    "SandwichReport",
    "SandwichViolation",
    "ScalingFit",
    "SurfaceProjection",
    "XiProfile",
    "dispersion_at",
    "filling",
    "indicator",
]
