"""Grid verification of the integral inequalities.

Each check sweeps a parameter grid, evaluates the relevant bounds and
integrals by at least two independent routes where available, and
reports a signed worst margin (nonnegative means the check holds, with
the tolerance already folded in) plus the witnessing parameters.

The product-grid checks (oracle agreement, inequality ordering,
monotonicity in x) read their grids from a GridConfig; the remaining
checks run on the fixed grids their statements prescribe, with
tolerances overridable through GridConfig.tolerances.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, fields

from . import bounds as bounds_mod
from .exceptions import DomainError
from .integrals import (
    IntegralSpec,
    integral_power_series,
    integral_quadrature,
    integral_series_oracle,
    log_asymptotic_integral,
    log_integral_quadrature,
)
from .specfun import struve_l, struve_l_scaled

DEFAULT_TOLERANCES: dict[str, float] = {
    "oracle_rel": 1e-9,
    "closed_form_rel": 1e-10,
    "ordering_slack_rel": 1e-12,
    "equality_rel": 1e-10,
    "tightness_low": 0.99,
    "tightness_small_x": 1e-3,
    "asymptote_rel": 0.05,
    "d_scan_slack": 5e-4,
}

#: Fixed grids for the checks whose statements pin their own parameters.
EQUALITY_N = (0.0, 1.0, 2.5)
EQUALITY_X = (0.5, 2.0, 10.0)
TIGHTNESS_X_LARGE = 300.0
TIGHTNESS_NU = (0.0, 1.0)
TIGHTNESS_GAMMA = 0.5
TIGHTNESS_X_SMALL = 1e-2
TIGHTNESS_SMALL_NU = (0.0, 1.0, 3.0)
TIGHTNESS_SMALL_N = (0.0, 1.0)
ASYMPTOTE_GAMMA = (0.0, 0.5)
D_CHECK_PAIRS = ((0.0, 0.0), (1.0, 0.0), (3.0, 0.0), (5.0, 0.0), (10.0, 0.0))
D_SCAN_CHECK_POINTS = 400
IMON_NU = (0.5, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0)
IMON_X = (0.1, 0.5, 1.0, 5.0, 20.0, 50.0, 100.0, 300.0)
# At order exactly 1/2 the gap to the order below is sqrt(2/(pi x)),
# exponentially negligible against cosh x; past x ~ 25 it falls under
# binary64 resolution, so the half-integer row is sampled below that.
IMON_HALF_ORDER_MAX_X = 20.0


@dataclass
class GridConfig:
    """Parameter lists for the product-grid checks plus tolerance
    overrides for all of them."""

    nu_values: list[float] = field(default_factory=lambda: [-0.4, 0.0, 1.0, 3.0])
    n_values: list[float] = field(default_factory=lambda: [0.0, 0.5, 2.0])
    gamma_values: list[float] = field(default_factory=lambda: [0.0, 0.25, 0.5, 0.9])
    x_values: list[float] = field(default_factory=lambda: [0.5, 1.0, 5.0, 20.0])
    tolerances: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        merged = dict(DEFAULT_TOLERANCES)
        for key, value in self.tolerances.items():
            if key not in DEFAULT_TOLERANCES:
                raise DomainError(f"unknown tolerance {key!r}")
            merged[key] = float(value)
        self.tolerances = merged

    @classmethod
    def from_json(cls, path: str) -> "GridConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    def tol(self, name: str) -> float:
        return self.tolerances[name]


@dataclass
class CheckResult:
    name: str
    passed: bool
    points: int
    skipped: int
    worst_margin: float
    witness: str
    note: str = ""


def _witness(**params) -> str:
    return " ".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                    for k, v in params.items())


class _Worst:
    """Tracks the minimum margin and its witnessing parameters."""

    def __init__(self):
        self.margin = math.inf
        self.witness = ""

    def update(self, margin: float, **params) -> None:
        if margin < self.margin:
            self.margin = margin
            self.witness = _witness(**params)


def _grid_specs(config: GridConfig) -> tuple[list[IntegralSpec], int]:
    """All valid grid points plus the count of combinations that violate
    the integral preconditions (reported as skipped, never dropped
    silently)."""
    specs = []
    invalid = 0
    for gamma in config.gamma_values:
        for nu in config.nu_values:
            for n in config.n_values:
                for x in config.x_values:
                    try:
                        specs.append(IntegralSpec(gamma, nu, n, x))
                    except DomainError:
                        invalid += 1
    return specs, invalid


def check_oracle_triangle(config: GridConfig) -> CheckResult:
    """Quadrature against the termwise series on the full grid."""
    tol = config.tol("oracle_rel")
    worst = _Worst()
    specs, skipped = _grid_specs(config)
    for spec in specs:
        quad = integral_quadrature(spec).value
        if spec.gamma > 0.0:
            ref = integral_series_oracle(spec).value
        else:
            ref = integral_power_series(spec.nu, spec.n, spec.x).value
        rel = abs(quad - ref) / abs(ref)
        worst.update(tol - rel, gamma=spec.gamma, nu=spec.nu, n=spec.n, x=spec.x)
    return CheckResult(
        "oracle_triangle", worst.margin >= 0.0, len(specs), skipped, worst.margin,
        worst.witness, f"rel tol {tol:g}",
    )


def check_closed_form_agreement(config: GridConfig) -> CheckResult:
    """Quadrature against the 2F3 closed form where it exists."""
    tol = config.tol("closed_form_rel")
    worst = _Worst()
    points = 0
    specs, skipped = _grid_specs(config)
    for spec in specs:
        if spec.gamma != 0.0 or spec.n != 0.0:
            continue
        quad = integral_quadrature(spec).value
        ref = bounds_mod.integral_closed_form(spec.nu, spec.x)
        rel = abs(quad - ref) / abs(ref)
        points += 1
        worst.update(tol - rel, nu=spec.nu, x=spec.x)
    return CheckResult(
        "closed_form_agreement", worst.margin >= 0.0, points, skipped, worst.margin,
        worst.witness, f"rel tol {tol:g}",
    )


def check_ordering(config: GridConfig) -> CheckResult:
    """Every applicable lower bound below the integral, every applicable
    upper bound above it, and the stated bound-vs-bound orderings."""
    slack = config.tol("ordering_slack_rel")
    worst = _Worst()
    points = 0
    lower_ids = ("bi1", "bi2", "bi4", "bi5")
    upper_ids = ("bi3", "bi7", "bi8")
    specs, skipped = _grid_specs(config)
    for spec in specs:
        report = bounds_mod.bound_report(spec)
        integral = report.integral
        skipped += len(report.skipped)
        params = dict(gamma=spec.gamma, nu=spec.nu, n=spec.n, x=spec.x)
        for name, value in report.applicable_bounds.items():
            points += 1
            if name in lower_ids:
                margin = (integral - value) / integral + slack
            else:
                assert name in upper_ids
                margin = (value - integral) / integral + slack
            worst.update(margin, bound=name, **params)
        got = report.applicable_bounds
        if "bi4" in got and "bi5" in got:
            points += 1
            worst.update((got["bi4"] - got["bi5"]) / integral + slack,
                         bound="bi5<=bi4", **params)
        if "bi7" in got and "bi8" in got:
            points += 1
            worst.update((got["bi8"] - got["bi7"]) / integral + slack,
                         bound="bi7<=bi8", **params)
    return CheckResult(
        "ordering", worst.margin >= 0.0, points, skipped, worst.margin,
        worst.witness, f"relative slack {slack:g}",
    )


def check_equality_boundary(config: GridConfig) -> CheckResult:
    """At nu = -(n+1)/2 the two-sided bounds collapse onto the integral."""
    tol = config.tol("equality_rel")
    worst = _Worst()
    points = 0
    for n in EQUALITY_N:
        nu = -0.5 * (n + 1.0)
        for x in EQUALITY_X:
            bi2 = bounds_mod.lower_bi2(nu, n, x)
            bi3 = bounds_mod.upper_bi3(nu, n, x)
            integral = integral_quadrature(IntegralSpec(0.0, nu, n, x)).value
            points += 2
            worst.update(tol - abs(bi2 - bi3) / abs(bi3),
                         pair="bi2-bi3", n=n, x=x)
            worst.update(tol - abs(bi2 - integral) / abs(integral),
                         pair="bi2-integral", n=n, x=x)
    return CheckResult(
        "equality_boundary", worst.margin >= 0.0, points, 0, worst.margin,
        worst.witness, f"rel tol {tol:g}",
    )


def check_tightness_large_x(config: GridConfig) -> CheckResult:
    """Lower-bound-to-integral ratios inside [low, 1] at x = 300.

    Covers the lower bounds bi1/bi2 (undamped) and bi4/bi5 (damped); the
    upper bound bi3 approaches 1 from above and is excluded from this
    window by construction.
    """
    low = config.tol("tightness_low")
    x = TIGHTNESS_X_LARGE
    worst = _Worst()
    points = 0
    upper_slack = 1e-12
    for nu in TIGHTNESS_NU:
        undamped = integral_quadrature(IntegralSpec(0.0, nu, 0.0, x)).value
        damped = integral_quadrature(IntegralSpec(TIGHTNESS_GAMMA, nu, 0.0, x)).value
        ratios = {
            "bi1": bounds_mod.lower_bi1(nu, x) / undamped,
            "bi2": bounds_mod.lower_bi2(nu, 0.0, x) / undamped,
            "bi4": bounds_mod.lower_bi4(TIGHTNESS_GAMMA, nu, x) / damped,
            "bi5": bounds_mod.lower_bi5(TIGHTNESS_GAMMA, nu, x) / damped,
        }
        for name, ratio in ratios.items():
            gamma = 0.0 if name in ("bi1", "bi2") else TIGHTNESS_GAMMA
            points += 1
            margin = min(ratio - low, 1.0 + upper_slack - ratio)
            worst.update(margin, bound=name, gamma=gamma, nu=nu, x=x,
                         ratio=float(f"{ratio:.8g}"))
    return CheckResult(
        "tightness_large_x", worst.margin >= 0.0, points, 0, worst.margin,
        worst.witness, f"window [{low:g}, 1]",
    )


def check_tightness_small_x(config: GridConfig) -> CheckResult:
    """bi3 over the integral inside [1, 1 + tol] at x = 1e-2."""
    tol = config.tol("tightness_small_x")
    x = TIGHTNESS_X_SMALL
    worst = _Worst()
    points = 0
    lower_slack = 1e-12
    for nu in TIGHTNESS_SMALL_NU:
        for n in TIGHTNESS_SMALL_N:
            integral = integral_quadrature(IntegralSpec(0.0, nu, n, x)).value
            ratio = bounds_mod.upper_bi3(nu, n, x) / integral
            points += 1
            margin = min(tol - (ratio - 1.0), ratio - 1.0 + lower_slack)
            worst.update(margin, nu=nu, n=n, x=x, ratio=float(f"{ratio:.8g}"))
    return CheckResult(
        "tightness_small_x", worst.margin >= 0.0, points, 0, worst.margin,
        worst.witness, f"window [1, 1+{tol:g}]",
    )


def check_asymptote(config: GridConfig) -> CheckResult:
    """Quadrature against the leading large-x asymptote, in log space."""
    tol = config.tol("asymptote_rel")
    x = TIGHTNESS_X_LARGE
    worst = _Worst()
    points = 0
    for gamma in ASYMPTOTE_GAMMA:
        for nu in TIGHTNESS_NU:
            spec = IntegralSpec(gamma, nu, 0.0, x)
            dev = abs(
                math.exp(log_integral_quadrature(spec) - log_asymptotic_integral(spec))
                - 1.0
            )
            points += 1
            worst.update(tol - dev, gamma=gamma, nu=nu, x=x)
    return CheckResult(
        "asymptote_large_x", worst.margin >= 0.0, points, 0, worst.margin,
        worst.witness, f"|ratio - 1| <= {tol:g}",
    )


def check_d_properties(config: GridConfig) -> CheckResult:
    """D below its theoretical cap, and never exceeded by the ratio on a
    dense scan."""
    slack = config.tol("d_scan_slack")
    worst = _Worst()
    points = 0
    log_lo = math.log(bounds_mod.D_SCAN_LO)
    step = (math.log(bounds_mod.D_SCAN_HI) - log_lo) / (D_SCAN_CHECK_POINTS - 1)
    for nu, n in D_CHECK_PAIRS:
        d = bounds_mod.d_constant(nu, n)
        points += 1
        worst.update(2.0 * (nu + n + 1.0) - d.value, prop="cap", nu=nu, n=n)
        for i in range(D_SCAN_CHECK_POINTS):
            x = math.exp(log_lo + i * step)
            points += 1
            worst.update(d.value + slack - bounds_mod.ratio_fn(nu, n, x),
                         prop="scan", nu=nu, n=n, x=x)
    return CheckResult(
        "d_properties", worst.margin >= 0.0, points, 0, worst.margin,
        worst.witness, f"scan slack {slack:g}",
    )


def check_struve_monotonicity(config: GridConfig) -> CheckResult:
    """L_nu(x) strictly below L_{nu-1}(x) for nu >= 1/2."""
    worst = _Worst()
    points = 0
    for nu in IMON_NU:
        for x in IMON_X:
            if nu == 0.5 and x > IMON_HALF_ORDER_MAX_X:
                continue
            if x > 30.0:
                hi = struve_l_scaled(nu - 1.0, x).value
                lo = struve_l_scaled(nu, x).value
            else:
                hi = struve_l(nu - 1.0, x).value
                lo = struve_l(nu, x).value
            points += 1
            worst.update((hi - lo) / hi, nu=nu, x=x)
    return CheckResult(
        "struve_monotonicity", worst.margin > 0.0, points, 0, worst.margin,
        worst.witness, "strict decrease in order",
    )


def check_integral_monotonicity(config: GridConfig) -> CheckResult:
    """The integral strictly increases in its upper limit."""
    worst = _Worst()
    points = 0
    skipped = 0
    xs = sorted(config.x_values)
    for gamma in config.gamma_values:
        for nu in config.nu_values:
            for n in config.n_values:
                try:
                    specs = [IntegralSpec(gamma, nu, n, x) for x in xs]
                except DomainError:
                    skipped += 1
                    continue
                values = [integral_quadrature(s).value for s in specs]
                for x1, x2, v1, v2 in zip(xs, xs[1:], values, values[1:]):
                    points += 1
                    worst.update((v2 - v1) / v2, gamma=gamma, nu=nu, n=n,
                                 x1=x1, x2=x2)
    return CheckResult(
        "integral_monotonicity", worst.margin > 0.0, points, skipped, worst.margin,
        worst.witness, "strict increase in x",
    )


ALL_CHECKS = (
    check_oracle_triangle,
    check_closed_form_agreement,
    check_ordering,
    check_equality_boundary,
    check_tightness_large_x,
    check_tightness_small_x,
    check_asymptote,
    check_d_properties,
    check_struve_monotonicity,
    check_integral_monotonicity,
)


def run_verification(config: GridConfig | None = None) -> list[CheckResult]:
    config = config if config is not None else GridConfig()
    return [check(config) for check in ALL_CHECKS]


def verification_to_csv(results: list[CheckResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["check", "status", "points", "skipped", "worst_margin", "witness", "note"]
    )
    for r in results:
        writer.writerow(
            [r.name, "pass" if r.passed else "fail", r.points, r.skipped,
             f"{r.worst_margin:.6g}", r.witness, r.note]
        )
    return buf.getvalue()


def verification_to_json(results: list[CheckResult], config: GridConfig) -> str:
    payload = {
        "kind": "verification",
        "passed": all(r.passed for r in results),
        "checks": [
            {
                "name": r.name,
                "status": "pass" if r.passed else "fail",
                "points": r.points,
                "skipped": r.skipped,
                "worst_margin": float(f"{r.worst_margin:.6g}"),
                "witness": r.witness,
                "note": r.note,
            }
            for r in results
        ],
        "meta": {"tolerances": config.tolerances},
    }
    return json.dumps(payload, indent=2) + "\n"
