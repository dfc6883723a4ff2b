"""
Invariant suite behind `fsee selftest`: small instances of every module's
properties, each check returning (passed, detail).
"""

import time
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Tuple

import numpy as np
from scipy.integrate import quad

from FSEE.entropy.binary_entropy import binary_entropy, tangent_upper_bound
from FSEE.entropy.block_entropy import block_entropy, purity_lower_bound, spectrum
from FSEE.geometry.fejer import fejer
from FSEE.geometry.projection import projected_area
from FSEE.geometry.purity_fourier import purity_via_fourier
from FSEE.geometry.xi import xi
from FSEE.jw.jw_check import jw_rows, spectrum_deviation
from FSEE.kernel.correlation_kernel import CorrelationKernel, KernelMode
from FSEE.kernel.region_matrix import build_region_matrix
from FSEE.models.fermi_sea import BallUnionSea, CheckerboardSea, DispersionSea, IntervalProductSea
from FSEE.models.hopping_model import HoppingModel
from FSEE.models.region import Region
from FSEE.models.reports import EntropyReport
from FSEE.pipelines.validation import CompositeValidator, SchemaValidator, SandwichValidator, SpectrumValidator
from FSEE.scaling.sweep import sweep
from FSEE.utils.logs import event, get_logger

L = get_logger()

Check = Callable[[], Tuple[bool, str]]

HALF_FILLED_1D = IntervalProductSea(dimension=1, half_widths=(np.pi / 2,))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass
class SelftestReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "passed": len(self.checks) - len(self.failed),
            "failed": self.failed,
            "checks": [asdict(c) for c in self.checks],
        }


def _half_filled_square() -> DispersionSea:
    return DispersionSea(model=HoppingModel.nearest_neighbour(2, t=1.0))


def check_model_periodicity() -> Tuple[bool, str]:
    model = HoppingModel(dimension=2, hoppings={(1, 0): 1.0, (-1, 0): 1.0, (1, 1): 0.5j, (-1, -1): -0.5j},
                         chemical_potential=0.3)
    k = np.random.default_rng(1).uniform(-np.pi, np.pi, size=(64, 2))
    shift = 2 * np.pi * np.array([1.0, -1.0])
    deviation = float(np.max(np.abs(model.dispersion(k) - model.dispersion(k + shift))))
    return deviation < 1e-12, f"max |eps(k) - eps(k + 2 pi n)| = {deviation:.3e}"


def check_kernel_hermiticity() -> Tuple[bool, str]:
    kernel = CorrelationKernel(_half_filled_square())
    x = np.array([[a, b] for a in range(-6, 7) for b in range(-6, 7)])
    gamma, mirror = kernel.entries(x), kernel.entries(-x)
    residue = float(np.max(np.abs(mirror - gamma.conj())))
    largest = float(np.max(np.abs(gamma)))
    return residue < 1e-12 and largest <= 1.0 + 1e-12, f"residue {residue:.3e}, max |gamma| {largest:.6f}"


def check_particle_hole() -> Tuple[bool, str]:
    sea = IntervalProductSea(dimension=1, half_widths=(1.1,), centers=(0.4,))
    x = np.arange(-12, 13).reshape(-1, 1)
    gamma = CorrelationKernel(sea).entries(x)
    flipped = CorrelationKernel(sea.complement()).entries(x)
    deviation = float(np.max(np.abs(flipped + gamma)))
    return deviation < 1e-12, f"max |gamma_c + gamma| = {deviation:.3e}"


def check_analytic_vs_grid() -> Tuple[bool, str]:
    x = np.arange(0, 65).reshape(-1, 1)
    analytic = CorrelationKernel(HALF_FILLED_1D, mode=KernelMode.ANALYTIC).entries(x)
    grid = CorrelationKernel(HALF_FILLED_1D, mode=KernelMode.QUADRATURE, resolution=4096).entries(x)
    deviation = float(np.max(np.abs(analytic - grid)))
    return deviation < 1e-8, f"max deviation {deviation:.3e}"


def check_entropy_examples() -> Tuple[bool, str]:
    kernel = CorrelationKernel(HALF_FILLED_1D)
    S1 = block_entropy(build_region_matrix(kernel, Region.cube(1, 1))).S
    S2 = block_entropy(build_region_matrix(kernel, Region.cube(1, 2))).S
    h = float(binary_entropy(2 / np.pi))
    ok = abs(S1 - 1.0) < 1e-12 and abs(S2 - 1.367521) < 1e-5 and abs(h - 0.683760) < 1e-5
    return ok, f"S(1) = {S1:.6f}, S(2) = {S2:.6f}, h(2/pi) = {h:.6f}"


def check_tangent_domination() -> Tuple[bool, str]:
    worst = np.inf
    x = np.linspace(-1.0, 1.0, 4001)
    for x0 in (0.3, 0.65343, 0.9, 0.99):
        bound = tangent_upper_bound(x0)
        worst = min(worst, float(np.min(bound(x) - binary_entropy(x))))
    return worst >= -1e-12, f"min slack {worst:.3e}"


def check_sandwich() -> Tuple[bool, str]:
    validator = CompositeValidator([SchemaValidator(EntropyReport), SandwichValidator(strict=True)])
    rows = sweep(HALF_FILLED_1D, list(range(1, 17))) + sweep(_half_filled_square(), [2, 3, 4, 5])
    errors = [e for row in rows for e in validator.validate(row).errors]
    return not errors, f"{len(rows)} rows, {len(errors)} violations"


def check_spectrum_range() -> Tuple[bool, str]:
    # the M -> 2M check rejects curved surfaces at this M
    kernel = CorrelationKernel(BallUnionSea(dimension=2, centers=((0.0, 0.0),), radii=(1.3,)),
                               mode=KernelMode.FFT, resolution=512)
    values = spectrum(build_region_matrix(kernel, Region.ball(2, 6))).eigenvalues
    result = SpectrumValidator().validate(values)
    return result.is_valid, f"{len(values)} eigenvalues in [{values[0]:.6f}, {values[-1]:.6f}]"


def check_fejer_facts() -> Tuple[bool, str]:
    length = 7
    peak = fejer(0.0, length)
    mean = quad(lambda t: fejer(t, length), -np.pi, np.pi, limit=200)[0] / (2 * np.pi)
    ok = peak == length ** 2 and abs(mean - length) < 1e-8
    return ok, f"F(0) = {peak}, mean = {mean:.12f}"


def check_xi_symmetry() -> Tuple[bool, str]:
    sea = BallUnionSea(dimension=2, centers=((0.3, -0.2), (2.0, 2.0)), radii=(0.9, 0.5))
    q = np.random.default_rng(2).uniform(-2.0, 2.0, size=(32, 2))
    deviation = float(np.max(np.abs(xi(sea, q) - xi(sea, -q))))
    return deviation < 1e-12, f"max |Xi(q) - Xi(-q)| = {deviation:.3e}"


def check_checkerboard() -> Tuple[bool, str]:
    values = []
    for m in (2, 4, 8):
        sea = CheckerboardSea(m=m)
        values.append(xi(sea, np.array([sea.edge, 0.0])))
    deviation = float(np.max(np.abs(np.array(values) - 2 * np.pi ** 2)))
    return deviation < 1e-6, f"Xi(l e_x) = {values}"


def check_two_spheres() -> Tuple[bool, str]:
    r = 0.6
    sea = BallUnionSea(dimension=3, centers=((0.0, 0.0, 0.0), (np.pi, np.pi, np.pi)), radii=(r, r))
    directions = np.random.default_rng(3).standard_normal((20, 3))
    areas = np.array([projected_area(sea, u) for u in directions])
    deviation = float(np.max(np.abs(areas - 2 * np.pi * r ** 2)))
    return deviation < 1e-12, f"max |s - 2 pi r^2| = {deviation:.3e}"


def check_fourier_identity() -> Tuple[bool, str]:
    kernel = CorrelationKernel(HALF_FILLED_1D)
    worst = 0.0
    for length in (1, 2, 5, 8):
        matrix = purity_lower_bound(build_region_matrix(kernel, Region.cube(1, length)))
        fourier = purity_via_fourier(HALF_FILLED_1D, length)
        worst = max(worst, abs(fourier - matrix) / matrix)
    return worst < 1e-3, f"max relative deviation {worst:.3e}"


def check_jw_entropy() -> Tuple[bool, str]:
    rows = jw_rows(6) + jw_rows(8, T0=0.2, T1=1.0 + 0.5j)
    worst = max(r.deviation for r in rows)
    return worst <= 1e-9, f"{len(rows)} rows, max deviation {worst:.3e}"


def check_jw_spectrum() -> Tuple[bool, str]:
    worst = max(spectrum_deviation(4), spectrum_deviation(6, T0=0.3, T1=0.7 - 0.4j))
    return worst <= 1e-9, f"max spectrum deviation {worst:.3e}"


CHECKS: List[Tuple[str, Check]] = [
    ("model_periodicity", check_model_periodicity),
    ("kernel_hermiticity", check_kernel_hermiticity),
    ("particle_hole", check_particle_hole),
    ("analytic_vs_grid", check_analytic_vs_grid),
    ("entropy_examples", check_entropy_examples),
    ("tangent_domination", check_tangent_domination),
    ("sandwich", check_sandwich),
    ("spectrum_range", check_spectrum_range),
    ("fejer_facts", check_fejer_facts),
    ("xi_symmetry", check_xi_symmetry),
    ("checkerboard", check_checkerboard),
    ("two_spheres", check_two_spheres),
    ("fourier_identity", check_fourier_identity),
    ("jw_entropy", check_jw_entropy),
    ("jw_spectrum", check_jw_spectrum),
]


def run_selftest(checks: List[Tuple[str, Check]] = CHECKS) -> SelftestReport:
    report = SelftestReport()
    for name, check in checks:
        start = time.time()
        try:
            passed, detail = check()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        result = CheckResult(name=name, passed=bool(passed), detail=detail, seconds=round(time.time() - start, 3))
        report.checks.append(result)
        log = L.info if result.passed else L.error
        log(event("selftest_check", name=name, passed=result.passed, detail=detail))
    return report
