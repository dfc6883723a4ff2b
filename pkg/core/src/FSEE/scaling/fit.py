"""
Scaling-law fits S ~ c L^(d-1) ln L + c1 L^(d-1) + c0 and the sandwich

    c- L^(d-1) ln L  <=  S  <=  c+ L^(d-1) (ln L)^2

with c- and c+ the tightest constants over the sweep. Basis functions use
the natural log; the entropy base only rescales the coefficients.
"""

from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from FSEE.models.reports import EntropyReport, SandwichReport, SandwichViolation, ScalingFit
from FSEE.utils.errors import FitError
from FSEE.utils.logs import event, get_logger

L = get_logger()

DEFAULT_MIN_L = 8
MIN_ROWS = 4
MAX_CONDITION = 1e12
SANDWICH_TOL = 1e-9
GROWTH_TOL = 1e-9
AREA_LAW_FLAG = "area-law-like, no log divergence"

Table = Union[pd.DataFrame, Sequence[EntropyReport], Sequence[dict]]


def as_frame(table: Table) -> pd.DataFrame:
    """Sweep rows as a DataFrame sorted by L."""
    if isinstance(table, pd.DataFrame):
        frame = table.copy()
    else:
        frame = pd.DataFrame([r.model_dump() if hasattr(r, "model_dump") else dict(r) for r in table])
    missing = {"L", "S"} - set(frame.columns)
    if missing:
        raise FitError(f"Sweep table lacks columns {sorted(missing)}")
    if "shape" in frame.columns and frame["shape"].nunique() > 1:
        raise FitError(f"Sweep table mixes region shapes {sorted(frame['shape'].unique())}")
    return frame.sort_values("L").reset_index(drop=True)


def _basis(Ls: np.ndarray, d: int) -> np.ndarray:
    ln = np.log(Ls)
    if d == 1:
        return np.column_stack([ln, np.ones_like(Ls)])
    surface = Ls ** (d - 1)
    return np.column_stack([surface * ln, surface, np.ones_like(Ls)])


def _base_of(frame: pd.DataFrame) -> float:
    if "base" not in frame.columns:
        return 2.0
    bases = frame["base"].dropna().unique()
    if len(bases) > 1:
        raise FitError(f"Sweep table mixes log bases {sorted(bases)}")
    return float(bases[0]) if len(bases) else 2.0


def fit_scaling(table: Table, d: int, min_L: int = DEFAULT_MIN_L, sea_id: str = "") -> ScalingFit:
    """Least-squares scaling fit over the rows with L >= min_L."""
    frame = as_frame(table)
    rows = frame[frame["L"] >= max(min_L, 2)]
    if len(rows) < MIN_ROWS:
        raise FitError(f"Scaling fit needs at least {MIN_ROWS} rows with L >= {min_L}, got {len(rows)}")

    Ls = rows["L"].to_numpy(dtype=float)
    S = rows["S"].to_numpy(dtype=float)
    A = _basis(Ls, d)
    norms = np.linalg.norm(A, axis=0)
    scaled = A / norms
    condition = float(np.linalg.cond(scaled))
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise FitError(f"Scaling basis is ill-conditioned (cond = {condition:.3e}); widen the L range")

    coef = np.linalg.lstsq(scaled, S, rcond=None)[0] / norms
    residual = float(np.sqrt(np.mean((A @ coef - S) ** 2)))
    scale = float(np.max(np.abs(S)))
    if d == 1:
        c, c1, c0 = float(coef[0]), 0.0, float(coef[1])
    else:
        c, c1, c0 = (float(v) for v in coef)

    surface_ln = Ls ** (d - 1) * np.log(Ls)
    c_minus = float(np.min(S / surface_ln))
    c_plus = float(np.max(S / (surface_ln * np.log(Ls))))

    fit = ScalingFit(
        sea=sea_id,
        d=d,
        rows_used=[int(v) for v in Ls],
        c=c,
        c1=c1,
        c0=c0,
        residual=residual,
        relative_residual=residual / scale if scale > 0 else 0.0,
        condition=condition,
        c_minus=c_minus,
        c_plus=c_plus,
        constants_ordered=c_minus <= c_plus,
        base=_base_of(frame),
    )
    L.info(event("scaling_fit", sea=sea_id, d=d, c=c, c1=c1, c0=c0, residual=residual,
                 c_minus=c_minus, c_plus=c_plus))
    return fit


def _min_or_none(values: np.ndarray) -> Optional[float]:
    return float(np.min(values)) if values.size else None


def sandwich_report(table: Table, d: int, min_L: int = DEFAULT_MIN_L, sea_id: str = "",
                    tolerance: float = SANDWICH_TOL) -> SandwichReport:
    """
    Checks the fitted c-/c+ sandwich on rows with L >= min_L and the raw
    purity_lower <= S <= tangent_upper sandwich on every row that has the
    bound columns. Report only.
    """
    frame = as_frame(table)
    fit = fit_scaling(frame, d, min_L=min_L, sea_id=sea_id)
    violations: List[SandwichViolation] = []

    used = frame[frame["L"] >= max(min_L, 2)]
    Ls = used["L"].to_numpy(dtype=float)
    S = used["S"].to_numpy(dtype=float)
    surface_ln = Ls ** (d - 1) * np.log(Ls)
    lower = fit.c_minus * surface_ln
    upper = fit.c_plus * surface_ln * np.log(Ls)
    for length, s, lo, hi in zip(Ls, S, lower, upper):
        if s < lo - tolerance:
            violations.append(SandwichViolation(L=int(length), kind="scaling_lower", value=float(s), bound=float(lo)))
        if s > hi + tolerance:
            violations.append(SandwichViolation(L=int(length), kind="scaling_upper", value=float(s), bound=float(hi)))

    slack_lower = np.zeros(0)
    slack_upper = np.zeros(0)
    if "purity_lower" in frame.columns:
        rows = frame.dropna(subset=["purity_lower"])
        slack_lower = rows["S"].to_numpy(dtype=float) - rows["purity_lower"].to_numpy(dtype=float)
        for length, s, bound, slack in zip(rows["L"], rows["S"], rows["purity_lower"], slack_lower):
            if slack < -tolerance:
                violations.append(SandwichViolation(L=int(length), kind="purity_lower", value=float(s), bound=float(bound)))
    if "tangent_upper" in frame.columns:
        rows = frame.dropna(subset=["tangent_upper"])
        slack_upper = rows["tangent_upper"].to_numpy(dtype=float) - rows["S"].to_numpy(dtype=float)
        for length, s, bound, slack in zip(rows["L"], rows["S"], rows["tangent_upper"], slack_upper):
            if slack < -tolerance:
                violations.append(SandwichViolation(L=int(length), kind="tangent_upper", value=float(s), bound=float(bound)))

    per_surface = S / Ls ** (d - 1)
    growing = bool(np.all(np.diff(per_surface) > GROWTH_TOL))
    area_law_like = not growing or fit.c <= 0.0
    flags: List[str] = []
    if area_law_like:
        flags.append(AREA_LAW_FLAG)
    if not fit.constants_ordered:
        flags.append("c_minus > c_plus on this sweep")

    report = SandwichReport(
        fit=fit,
        violations=violations,
        min_slack_lower=_min_or_none(slack_lower),
        min_slack_upper=_min_or_none(slack_upper),
        area_law_like=area_law_like,
        flags=flags,
    )
    L.info(event("sandwich_report", sea=sea_id, violations=len(violations),
                 min_slack_lower=report.min_slack_lower, min_slack_upper=report.min_slack_upper,
                 area_law_like=area_law_like))
    return report


def ratio_table(table: Table, d: int) -> pd.DataFrame:
    """S / (L^(d-1) ln L) per row (L >= 2), for ratio-stability checks."""
    frame = as_frame(table)
    frame = frame[frame["L"] >= 2].copy()
    Ls = frame["L"].to_numpy(dtype=float)
    frame["ratio"] = frame["S"].to_numpy(dtype=float) / (Ls ** (d - 1) * np.log(Ls))
    return frame[["L", "S", "ratio"]].reset_index(drop=True)
