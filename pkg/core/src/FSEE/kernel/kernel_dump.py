"""Regression dumps of kernel entries: `.csv` through pandas, `.npz` through numpy."""

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from FSEE.kernel.correlation_kernel import CorrelationKernel
from FSEE.utils.errors import ConfigError
from FSEE.utils.io import read_csv, write_csv

PathLike = Union[str, Path]


def kernel_frame(kernel: CorrelationKernel, offsets) -> pd.DataFrame:
    x = np.atleast_2d(np.asarray(offsets, dtype=np.int64))
    values = kernel.entries(x)
    columns = {f"x{i + 1}": x[:, i] for i in range(x.shape[1])}
    columns.update({"re": values.real, "im": values.imag})
    return pd.DataFrame(columns)


def dump_kernel(kernel: CorrelationKernel, offsets, path: PathLike) -> pd.DataFrame:
    frame = kernel_frame(kernel, offsets)
    suffix = Path(path).suffix.lower()
    if suffix == ".npz":
        x = frame[[c for c in frame.columns if c.startswith("x")]].to_numpy()
        np.savez(path, offsets=x, values=frame["re"].to_numpy() + 1j * frame["im"].to_numpy())
    elif suffix == ".csv":
        write_csv(frame, path, "kernel-entry")
    else:
        raise ConfigError(f"Kernel dumps are .csv or .npz, got {path}")
    return frame


def load_kernel_dump(path: PathLike) -> pd.DataFrame:
    suffix = Path(path).suffix.lower()
    if suffix == ".npz":
        with np.load(path) as data:
            x, values = data["offsets"], data["values"]
        columns = {f"x{i + 1}": x[:, i] for i in range(x.shape[1])}
        columns.update({"re": values.real, "im": values.imag})
        return pd.DataFrame(columns)
    return read_csv(path)
