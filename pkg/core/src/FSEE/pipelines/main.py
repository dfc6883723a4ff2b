"""
Main entry point for the fsee command line.

Every subcommand assembles a RunConfig from flags, an optional config file
and the environment, runs the library call and writes one CSV or JSON
product. Library errors become a JSON diagnostic on stderr and an exit code.
"""

import argparse
import json
import os
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from dotenv import load_dotenv
from pydantic import ValidationError

from FSEE.geometry.fejer import fejer_linear_sum
from FSEE.geometry.projection import projection_bounds
from FSEE.geometry.xi import xi_profile
from FSEE.jw.jw_check import jw_check, spectrum_deviation
from FSEE.jw.spin_chain import MAX_SPECTRUM_SITES
from FSEE.kernel.correlation_kernel import CorrelationKernel, KernelMode
from FSEE.kernel.kernel_dump import dump_kernel, kernel_frame
from FSEE.models.fermi_sea import CheckerboardSea, FermiSea
from FSEE.models.run_config import DEFAULT_THREADS_ENV, RunConfig
from FSEE.pipelines.config_loader import (
    load_config_file,
    parse_complex,
    parse_int_list,
    parse_vector,
    parse_vectors,
    resolve_sea,
    run_options_from_config,
)
from FSEE.pipelines.selftest import run_selftest
from FSEE.pipelines.validation import AGREEMENT_TOL
from FSEE.scaling.fit import DEFAULT_MIN_L, as_frame, sandwich_report
from FSEE.scaling.sweep import sweep
from FSEE.utils.errors import AccuracyError, CapabilityError, ConfigError, FSEEError, NumericError
from FSEE.utils.io import read_csv, write_csv, write_json
from FSEE.utils.logs import event, get_logger

L = get_logger()

SWEEP_COLUMNS = ["d", "L", "n", "shape", "S", "purity_trace", "purity_lower", "tangent_upper", "a", "b", "x0", "base"]
PURITY_CHECK_TOL = 1e-3
DEFAULT_LOG_LEVEL = "WARNING"


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors raise ConfigError instead of exiting."""

    def error(self, message: str):
        raise ConfigError(f"{self.prog}: {message}")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--sea', help='Inline sea, e.g. interval:kf=pi/2')
    common.add_argument('--config', help='Flat key=value config file (sea.*, model.*, run.*)')
    common.add_argument('--d', type=int, help='Spatial dimension for interval, nn, empty and full seas')
    common.add_argument('--base', type=float, help='Logarithm base of entropies (default 2)')
    common.add_argument('--threads', type=int, help=f'Worker threads (default ${DEFAULT_THREADS_ENV} or 1)')
    common.add_argument('--seed', type=int, help='Seed for randomized sampling')
    common.add_argument('--mode', choices=[m.value for m in KernelMode], help='Kernel evaluation mode')
    common.add_argument('--M', type=int, help='Quadrature grid resolution')
    common.add_argument('--max-offset', type=int, help='Largest kernel offset component')
    common.add_argument('--cap', type=int, help='Largest region size in sites')
    common.add_argument('--out', help="Output file, stdout when omitted or '-'")
    common.add_argument('--log-level', default=DEFAULT_LOG_LEVEL, help='DEBUG, INFO, WARNING, ERROR')
    common.add_argument('--log-file', help='Write logs to a file instead of stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(
        prog="fsee",
        description="Free-fermion entanglement entropy toolkit",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Entropy of the half-filled chain for blocks of 1 and 2 sites
  fsee entropy-sweep --sea interval:kf=pi/2 --d 1 --L 1,2

  # Xi of the checkerboard sea at a shift of one square
  fsee xi-map --sea checkerboard:m=4 --q l,0

  # Scaling fit of a stored sweep
  fsee fit-scaling --input sweep.csv --min-L 8

  # Spin chain against free fermions, N = 6..12
  fsee jw-check --N 6,8,10,12
        """
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    kernel_parser = subparsers.add_parser('kernel-entry', parents=[common], help='Correlation kernel entries')
    kernel_parser.add_argument('--x', required=True, help="Offsets, '|' separated vectors (d=1 also 0,1,2)")
    kernel_parser.add_argument('--dump', help='Write a .csv or .npz dump instead of --out')

    sweep_parser = subparsers.add_parser('entropy-sweep', parents=[common], help='Block entropies over a list of L')
    sweep_parser.add_argument('--L', help='Block edges, e.g. 8,16,32 or 1..64')
    sweep_parser.add_argument('--shape', choices=['cube', 'ball'], default='cube', help='Block shape')
    sweep_parser.add_argument('--fourier', action='store_true', help='Add the Fourier-route purity column')

    xi_parser = subparsers.add_parser('xi-map', parents=[common], help='Sample Xi(q) with cone bounds')
    xi_parser.add_argument('--q', help="Shifts, '|' separated; pi and l (checkerboard edge) allowed")
    xi_parser.add_argument('--random', type=int, help='Number of random shifts inside --radius')
    xi_parser.add_argument('--radius', type=float, default=0.5, help='Radius for --random')

    purity_parser = subparsers.add_parser('purity-check', parents=[common], help='Matrix against Fourier purity')
    purity_parser.add_argument('--L', help='Block edges')
    purity_parser.add_argument('--tol', type=float, default=PURITY_CHECK_TOL, help='Relative tolerance')

    fejer_parser = subparsers.add_parser('fejer-sum', parents=[common], help='int_0^pi F_L(x) x dx three ways')
    fejer_parser.add_argument('--L', help='Kernel orders')

    fit_parser = subparsers.add_parser('fit-scaling', parents=[common], help='Scaling fit and sandwich report')
    fit_parser.add_argument('--input', help='CSV written by entropy-sweep')
    fit_parser.add_argument('--L', help='Block edges when sweeping a sea instead of reading --input')
    fit_parser.add_argument('--min-L', type=int, default=DEFAULT_MIN_L, help='Smallest L entering the fit')

    jw_parser = subparsers.add_parser('jw-check', parents=[common], help='Spin chain against free fermions')
    jw_parser.add_argument('--N', default='6,8', help='Chain lengths')
    jw_parser.add_argument('--m', type=int, help='Particle number (default N/2)')
    jw_parser.add_argument('--blocks', help='Block sizes (default 1..N/2)')
    jw_parser.add_argument('--t0', type=float, default=0.0, help='On-site energy T0')
    jw_parser.add_argument('--t1', default='1', help='Hopping T1, e.g. 1 or 1+0.5j')
    jw_parser.add_argument('--json', action='store_true', help='JSON summary instead of CSV')
    jw_parser.add_argument('--spectrum', action='store_true', help=f'Also compare full spectra for N <= {MAX_SPECTRUM_SITES}')

    subparsers.add_parser('selftest', parents=[common], help='Run the invariant suite')
    return parser


def _run_config(args, needs_sea: bool = False, needs_L: bool = False) -> RunConfig:
    """Flags over the config file's run.* entries over the environment."""
    config = load_config_file(args.config) if args.config else None
    options: Dict[str, object] = run_options_from_config(config) if config else {}

    env_threads = os.getenv(DEFAULT_THREADS_ENV)
    if env_threads and "threads" not in options:
        try:
            options["threads"] = int(env_threads)
        except ValueError as e:
            raise ConfigError(f"{DEFAULT_THREADS_ENV} must be an integer, got {env_threads!r}") from e

    flags = {
        "base": args.base, "threads": args.threads, "seed": args.seed, "mode": args.mode,
        "M": args.M, "max_offset": args.max_offset, "cap": args.cap, "out": args.out,
    }
    options.update({k: v for k, v in flags.items() if v is not None})
    if getattr(args, "L", None) is not None:
        options["L"] = parse_int_list(args.L)

    if needs_sea:
        options["sea"] = resolve_sea(args.sea, config, args.d)
        if args.d is not None and options["sea"].dimension != args.d:
            raise ConfigError(f"--d {args.d} does not match the sea dimension {options['sea'].dimension}")
    if needs_L and options.get("L") is None:
        raise ConfigError("--L (or run.L in the config file) is required")

    try:
        run_config = RunConfig(subcommand=args.command, **options)
    except ValidationError as e:
        raise ConfigError(f"Invalid options: {e}") from e
    L.info(event("run_config", subcommand=run_config.subcommand,
                 sea=run_config.sea.describe() if run_config.sea else None, L=run_config.L))
    return run_config


def _kernel(cfg: RunConfig) -> CorrelationKernel:
    return CorrelationKernel(cfg.sea, mode=KernelMode(cfg.mode), resolution=cfg.M, max_offset=cfg.max_offset)


def _sweep(cfg: RunConfig, shape: str = "cube", fourier: bool = False):
    return sweep(cfg.sea, cfg.L, shape=shape, base=cfg.base, cap=cfg.cap, fourier=fourier,
                 threads=cfg.threads, kernel=_kernel(cfg))


def kernel_entry_command(args) -> int:
    """Write gamma_x for the requested offsets."""
    cfg = _run_config(args, needs_sea=True)
    d = cfg.sea.dimension
    values = [v for vector in parse_vectors(args.x) for v in vector]
    if not values or len(values) % d:
        raise ConfigError(f"--x needs vectors with {d} components, got {args.x!r}")
    if any(v != int(v) for v in values):
        raise ConfigError(f"Kernel offsets must be integers, got {args.x!r}")
    offsets = np.array(values, dtype=np.int64).reshape(-1, d)

    kernel = _kernel(cfg)
    if args.dump:
        dump_kernel(kernel, offsets, args.dump)
    else:
        write_csv(kernel_frame(kernel, offsets), cfg.out, "kernel-entry")
    return 0


def entropy_sweep_command(args) -> int:
    """One EntropyReport row per L."""
    cfg = _run_config(args, needs_sea=True, needs_L=True)
    rows = _sweep(cfg, shape=args.shape, fourier=args.fourier)
    columns = SWEEP_COLUMNS + (["purity_fourier"] if args.fourier else [])
    frame = pd.DataFrame([r.model_dump() for r in rows])[columns]
    write_csv(frame, cfg.out, "entropy-sweep")
    return 0


def _xi_shifts(args, cfg: RunConfig) -> np.ndarray:
    d = cfg.sea.dimension
    if (args.q is None) == (args.random is None):
        raise ConfigError("xi-map needs exactly one of --q or --random")
    if args.q is not None:
        symbols = {"l": cfg.sea.edge} if isinstance(cfg.sea, CheckerboardSea) else {}
        shifts = [parse_vector(part, symbols) for part in args.q.split("|") if part.strip()]
        if not shifts or any(len(q) != d for q in shifts):
            raise ConfigError(f"--q needs vectors with {d} components, got {args.q!r}")
        return np.array(shifts, dtype=float)
    if args.random < 1 or args.radius <= 0:
        raise ConfigError("--random needs a positive count and --radius a positive value")
    rng = np.random.default_rng(cfg.seed)
    directions = rng.standard_normal((args.random, d))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = args.radius * rng.uniform(0.0, 1.0, size=(args.random, 1)) ** (1.0 / d)
    return directions * radii


def _cone(sea: FermiSea, seed: int):
    try:
        return projection_bounds(sea, seed=seed)
    except CapabilityError as e:
        L.info(event("cone_unavailable", sea=sea.describe(), reason=str(e)))
        return None


def xi_map_command(args) -> int:
    """Xi(q) per shift, with s- |q| and s+ |q| when the sea has projected areas."""
    cfg = _run_config(args, needs_sea=True)
    q = _xi_shifts(args, cfg)
    profile = xi_profile(cfg.sea, q, resolution=cfg.M, cone=_cone(cfg.sea, cfg.seed))

    columns = {f"q{i + 1}": q[:, i] for i in range(q.shape[1])}
    columns["xi"] = profile.values
    columns["cone_lower"] = profile.cone_lower if profile.cone_lower is not None else np.nan
    columns["cone_upper"] = profile.cone_upper if profile.cone_upper is not None else np.nan
    write_csv(pd.DataFrame(columns), cfg.out, "xi-map")
    return 0


def purity_check_command(args) -> int:
    """tr(1 - gamma^2) from the matrix and from the Fourier integral."""
    cfg = _run_config(args, needs_sea=True, needs_L=True)
    rows = _sweep(cfg, fourier=True)
    matrix = np.array([r.purity_trace for r in rows])
    fourier = np.array([r.purity_fourier for r in rows])
    scale = np.where(matrix > 0, matrix, 1.0)
    frame = pd.DataFrame({"L": [r.L for r in rows], "matrix": matrix, "fourier": fourier,
                          "rel_dev": np.abs(fourier - matrix) / scale})
    write_csv(frame, cfg.out, "purity-check")

    worst = float(frame["rel_dev"].max())
    if worst > args.tol:
        L.warning(event("purity_check_failed", sea=cfg.sea.describe(), worst=worst, tolerance=args.tol))
        raise AccuracyError("Fourier purity disagrees with the matrix trace", estimate=worst, tolerance=args.tol)
    return 0


def fejer_sum_command(args) -> int:
    cfg = _run_config(args, needs_L=True)
    records = []
    for length in cfg.L:
        result = fejer_linear_sum(length)
        records.append({"L": result.L, "quadrature": result.quadrature, "digamma": result.digamma,
                        "series": result.series, "deviation": result.deviation})
    write_csv(pd.DataFrame(records), cfg.out, "fejer-sum")
    return 0


def fit_scaling_command(args) -> int:
    """Fit a stored sweep (--input) or sweep a sea first, then report the sandwich."""
    if args.input and (args.sea or args.config):
        raise ConfigError("fit-scaling takes either --input or a sea, not both")
    if args.input:
        cfg = _run_config(args)
        frame = as_frame(read_csv(args.input))
        sea_id = args.input
    else:
        cfg = _run_config(args, needs_sea=True, needs_L=True)
        frame = as_frame(_sweep(cfg))
        sea_id = cfg.sea.describe()

    if "d" in frame.columns:
        d = int(frame["d"].iloc[0])
    elif args.d is not None:
        d = args.d
    else:
        raise ConfigError("Input table has no d column; pass --d")
    report = sandwich_report(frame, d, min_L=args.min_L, sea_id=sea_id)
    write_json(report.model_dump(), cfg.out)
    return 0


def jw_check_command(args) -> int:
    """Spin entropies against fermion entropies for each N."""
    cfg = _run_config(args)
    N_list = parse_int_list(args.N)
    blocks = parse_int_list(args.blocks) if args.blocks else None
    T1 = parse_complex(args.t1)
    rows = jw_check(N_list, m=args.m, blocks=blocks, T0=args.t0, T1=T1, base=cfg.base, threads=cfg.threads)

    spectra: Dict[int, float] = {}
    if args.spectrum:
        for N in (n for n in N_list if n <= MAX_SPECTRUM_SITES):
            spectra[N] = spectrum_deviation(N, args.t0, T1)
            L.info(event("jw_spectrum", N=N, deviation=spectra[N]))

    worst = max(r.deviation for r in rows)
    if args.json:
        write_json({
            "rows": [dict(r.model_dump(), deviation=r.deviation) for r in rows],
            "max_deviation": worst,
            "spectrum_deviation": {str(N): dev for N, dev in spectra.items()},
        }, cfg.out)
    else:
        frame = pd.DataFrame([dict(r.model_dump(), deviation=r.deviation) for r in rows])
        write_csv(frame[["N", "m", "block", "spin", "fermion", "deviation"]], cfg.out, "jw-check")

    worst_spectrum = max(spectra.values(), default=0.0)
    if worst > AGREEMENT_TOL or worst_spectrum > AGREEMENT_TOL:
        raise NumericError(f"Jordan-Wigner mismatch: entropy {worst:.3e}, spectrum {worst_spectrum:.3e}")
    return 0


def selftest_command(args) -> int:
    cfg = _run_config(args)
    report = run_selftest()
    write_json(report.to_dict(), cfg.out)
    if not report.ok:
        L.error(event("selftest_failed", failed=report.failed))
        return 3
    return 0


COMMANDS = {
    'kernel-entry': kernel_entry_command,
    'entropy-sweep': entropy_sweep_command,
    'xi-map': xi_map_command,
    'purity-check': purity_check_command,
    'fejer-sum': fejer_sum_command,
    'fit-scaling': fit_scaling_command,
    'jw-check': jw_check_command,
    'selftest': selftest_command,
}


def _diagnose(error: FSEEError) -> int:
    sys.stderr.write(json.dumps(error.to_diagnostic(), default=str) + "\n")
    sys.stderr.flush()
    return error.exit_code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, dispatch and return the exit code."""
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except FSEEError as e:
        return _diagnose(e)
    except SystemExit as e:
        return int(e.code or 0)

    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    get_logger(loglevel=args.log_level, logfile=args.log_file, force=True)
    try:
        return COMMANDS[args.command](args)
    except FSEEError as e:
        L.debug(event("command_failed", command=args.command, kind=type(e).__name__))
        return _diagnose(e)
    except ValidationError as e:
        return _diagnose(ConfigError(f"Invalid input: {e}"))
    except KeyboardInterrupt:
        L.info("Operation cancelled by user")
        return 130


def main(argv: Optional[List[str]] = None):
    """Console entry point."""
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
