"""
CSV and JSON output with a versioned header and atomic replacement.

Every CSV starts with `# fsee-csv v1 <subcommand>`; floats are written with
12 significant digits so repeated runs produce identical bytes.
"""

import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd

from FSEE.utils.errors import ConfigError
from FSEE.utils.logs import event, get_logger

L = get_logger()

CSV_VERSION = "v1"
FLOAT_FORMAT = "%.12g"

PathLike = Union[str, Path]


def render_csv(frame: pd.DataFrame, subcommand: str) -> str:
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return f"# fsee-csv {CSV_VERSION} {subcommand}\n" + body


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_default) + "\n"


def _default(value: Any) -> Any:
    if hasattr(value, "model_dump"):
        return value.model_dump()
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _atomic_write(text: str, path: Optional[PathLike]) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    if not target.parent.exists():
        raise ConfigError(f"Output directory does not exist: {target.parent}")
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=str(target.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    L.info(event("output_written", path=str(target), bytes=len(text)))


def write_csv(frame: pd.DataFrame, path: Optional[PathLike], subcommand: str) -> None:
    """Write `frame` to `path` (or stdout for None / "-")."""
    _atomic_write(render_csv(frame, subcommand), path)


def write_json(payload: Any, path: Optional[PathLike]) -> None:
    _atomic_write(render_json(payload), path)


def read_csv(path: PathLike) -> pd.DataFrame:
    """Read a CSV written by `write_csv`, skipping the version line."""
    try:
        return pd.read_csv(path, comment="#")
    except FileNotFoundError as e:
        raise ConfigError(f"Input table not found: {path}") from e
    except pd.errors.ParserError as e:
        raise ConfigError(f"Cannot parse table {path}: {e}") from e
