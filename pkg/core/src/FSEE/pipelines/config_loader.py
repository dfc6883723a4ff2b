"""
Sea definitions from inline strings and flat key=value config files.

Inline strings look like `<kind>:<key>=<value>;<key>=<value>`, vectors are
comma separated and lists of vectors `|` separated:

    interval:kf=pi/2;center=0
    ball:centers=0,0,0|pi,pi,pi;r=1
    checkerboard:m=4
    diamond:r=pi;center=pi,pi
    arcs:arcs=-1,2|2.5,0.5
    nn:t=1;mu=0.5
    grid:file=sea.npy
    empty  /  full  /  complement:<inline sea>

Config files hold one `section.key=value` per line (`#` comments) and are
read with `dotenv_values`:

    sea.variant=dispersion
    sea.dimension=2
    model.mu=0.25
    model.hop.1,0=1,0
    model.hop.-1,0=1,0
    run.L=8,16,32
"""

import re
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
from dotenv import dotenv_values
from pydantic import ValidationError

from FSEE.models.fermi_sea import (
    ArcUnionSea,
    BallUnionSea,
    CheckerboardSea,
    ComplementSea,
    DiamondSea,
    DispersionSea,
    FermiSea,
    GridSea,
    IntervalProductSea,
)
from FSEE.models.hopping_model import HoppingModel
from FSEE.utils.errors import ConfigError
from FSEE.utils.logs import event, get_logger

L = get_logger()

SECTIONS = ("sea", "model", "run")
RUN_KEYS = ("L", "base", "threads", "seed", "mode", "M")
_SYMBOLIC = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)\*?(pi|l)(?:/(\d+\.?\d*))?$")


def parse_scalar(token: str, symbols: Optional[Dict[str, float]] = None) -> float:
    """A float, or a multiple of a symbol: `pi`, `-pi/2`, `2pi`, `0.5*l`."""
    text = token.strip().lower()
    table = {"pi": np.pi, **(symbols or {})}
    match = _SYMBOLIC.match(text)
    if match:
        coefficient, symbol, divisor = match.groups()
        if symbol not in table:
            raise ConfigError(f"Symbol {symbol!r} is not defined here")
        factor = {"": 1.0, "+": 1.0, "-": -1.0}.get(coefficient)
        factor = float(coefficient) if factor is None else factor
        return factor * table[symbol] / (float(divisor) if divisor else 1.0)
    try:
        return float(text)
    except ValueError as e:
        raise ConfigError(f"Cannot read number {token!r}") from e


def parse_vector(text: str, symbols: Optional[Dict[str, float]] = None) -> List[float]:
    return [parse_scalar(t, symbols) for t in text.split(",") if t.strip()]


def parse_vectors(text: str) -> List[List[float]]:
    return [parse_vector(part) for part in text.split("|") if part.strip()]


def parse_complex(text: str) -> complex:
    try:
        return complex(parse_scalar(text))
    except ConfigError:
        pass
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as e:
        raise ConfigError(f"Cannot read complex number {text!r}") from e


def parse_int_list(text: str) -> List[int]:
    """`8,16,32` or inclusive ranges `1..64`, mixed freely."""
    values: List[int] = []
    try:
        for part in (p.strip() for p in str(text).split(",") if p.strip()):
            if ".." in part:
                lo, hi = (int(v) for v in part.split(".."))
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError as e:
        raise ConfigError(f"Cannot read integer list {text!r}") from e
    return values


def _load_grid(path: str) -> GridSea:
    try:
        values = np.load(path)
    except (FileNotFoundError, OSError, ValueError) as e:
        raise ConfigError(f"Cannot load grid sea from {path}: {e}") from e
    return GridSea(dimension=values.ndim, values=values)


def _build_sea(kind: str, params: Dict[str, str], dimension: Optional[int], model: Optional[HoppingModel] = None) -> FermiSea:
    params = dict(params)
    d = int(params.pop("d", dimension or 1))

    def take(key: str, default: Optional[str] = None) -> Optional[str]:
        return params.pop(key, default)

    if kind == "interval":
        kf = take("kf")
        if kf is None:
            raise ConfigError("interval sea needs kf")
        center = take("center")
        sea = IntervalProductSea(dimension=d, half_widths=parse_vector(kf),
                                 centers=parse_vector(center) if center else None)
    elif kind in ("ball", "balls"):
        centers = parse_vectors(take("centers", "") or "")
        if not centers:
            raise ConfigError("ball sea needs centers")
        radii = parse_vector(take("r", None) or take("radius", "") or "")
        if len(radii) == 1:
            radii = radii * len(centers)
        sea = BallUnionSea(dimension=len(centers[0]), centers=centers, radii=radii)
    elif kind == "checkerboard":
        sea = CheckerboardSea(m=int(take("m", "1")))
    elif kind == "diamond":
        sea = DiamondSea(radius=parse_scalar(take("r", None) or take("radius", "pi")),
                         center=parse_vector(take("center", "0,0")))
    elif kind == "arcs":
        sea = ArcUnionSea(arcs=parse_vectors(take("arcs", "") or ""))
    elif kind == "nn":
        sea = DispersionSea(model=HoppingModel.nearest_neighbour(
            d, t=parse_complex(take("t", "1")), mu=parse_scalar(take("mu", "0")),
            onsite=parse_scalar(take("onsite", "0"))))
    elif kind == "grid":
        sea = _load_grid(take("file", ""))
    elif kind == "dispersion":
        if model is None:
            raise ConfigError("dispersion sea needs model.* entries in a config file")
        sea = DispersionSea(model=model)
    elif kind == "empty":
        sea = IntervalProductSea.empty(d)
    elif kind == "full":
        sea = IntervalProductSea.full(d)
    else:
        raise ConfigError(f"Unknown sea kind {kind!r}")

    if params:
        raise ConfigError(f"Unknown keys for {kind} sea: {sorted(params)}")
    return sea


def parse_sea(text: str, dimension: Optional[int] = None) -> FermiSea:
    """Sea from an inline string; `dimension` applies to interval, nn, empty and full."""
    text = text.strip()
    if text.startswith("complement:"):
        return ComplementSea(inner=parse_sea(text[len("complement:"):], dimension))
    kind, _, rest = text.partition(":")
    params: Dict[str, str] = {}
    for part in (p.strip() for p in rest.split(";") if p.strip()):
        key, sep, value = part.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"Malformed sea parameter {part!r} in {text!r}")
        params[key.strip()] = value.strip()
    try:
        sea = _build_sea(kind.strip().lower(), params, dimension)
    except ValidationError as e:
        raise ConfigError(f"Invalid sea {text!r}: {e}") from e
    L.debug(event("sea_parsed", text=text, sea=sea.describe()))
    return sea


def load_config_file(path: str) -> Dict[str, str]:
    if not Path(path).is_file():
        raise ConfigError(f"Config file not found: {path}")
    values = dotenv_values(path)
    for key, value in values.items():
        if value is None:
            raise ConfigError(f"Config line {key!r} has no value")
        if key.split(".", 1)[0] not in SECTIONS:
            raise ConfigError(f"Unknown config section in {key!r}; expected one of {SECTIONS}")
    return {k: v for k, v in values.items() if v is not None}


def model_from_config(values: Dict[str, str], dimension: int) -> Optional[HoppingModel]:
    hoppings = {}
    for key, value in values.items():
        if key.startswith("model.hop."):
            offset = tuple(parse_int_list(key[len("model.hop."):]))
            parts = parse_vector(value)
            if len(parts) not in (1, 2):
                raise ConfigError(f"Hopping {key} needs re or re,im")
            hoppings[offset] = complex(parts[0], parts[1] if len(parts) == 2 else 0.0)
    if not hoppings:
        return None
    try:
        return HoppingModel(dimension=dimension, hoppings=hoppings,
                            chemical_potential=parse_scalar(values.get("model.mu", "0")))
    except ValidationError as e:
        raise ConfigError(f"Invalid hopping model: {e}") from e


def sea_from_config(values: Dict[str, str], dimension: Optional[int] = None) -> Optional[FermiSea]:
    """Sea described by the `sea.*` section, None when the file has none."""
    kind = values.get("sea.variant")
    if kind is None:
        return None
    d = int(values.get("sea.dimension", dimension or 1))
    params = {k[len("sea."):]: v for k, v in values.items()
              if k.startswith("sea.") and k not in ("sea.variant", "sea.dimension", "sea.complement")}
    try:
        sea = _build_sea(kind.strip().lower(), params, d, model_from_config(values, d))
        if values.get("sea.complement", "false").strip().lower() in ("1", "true", "yes"):
            sea = ComplementSea(inner=sea)
    except ValidationError as e:
        raise ConfigError(f"Invalid sea in config: {e}") from e
    return sea


def run_options_from_config(values: Dict[str, str]) -> Dict[str, object]:
    """`run.*` entries as RunConfig keyword arguments."""
    options: Dict[str, object] = {}
    for key, value in values.items():
        if not key.startswith("run."):
            continue
        name = key[len("run."):]
        if name not in RUN_KEYS:
            raise ConfigError(f"Unknown run option {key!r}; expected one of {RUN_KEYS}")
        if name == "L":
            options["L"] = parse_int_list(value)
        elif name == "base":
            options["base"] = parse_scalar(value)
        elif name == "mode":
            options["mode"] = value.strip().lower()
        else:
            try:
                options[name] = int(value)
            except ValueError as e:
                raise ConfigError(f"{key} must be an integer, got {value!r}") from e
    return options


def resolve_sea(inline: Optional[str], config: Optional[Dict[str, str]], dimension: Optional[int]) -> FermiSea:
    """Exactly one sea source: the inline string or the config file."""
    from_config = sea_from_config(config, dimension) if config else None
    if inline and from_config is not None:
        raise ConfigError("Give the sea either with --sea or in the config file, not both")
    if inline:
        return parse_sea(inline, dimension)
    if from_config is None:
        raise ConfigError("No Fermi sea given; use --sea or a config file with sea.variant")
    return from_config
