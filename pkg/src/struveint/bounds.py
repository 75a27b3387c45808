"""Lower and upper bounds for the damped Struve integrals.

Implements the coefficient triple (a, b, c), the eight bound expressions
bi1-bi8 on the integral of exp(-gamma t) t^(-nu) L_{nu+n}(t), the
supremum constant D that gates the damped upper bounds, and the derived
two-sided bounds on the 2F3 expression.

The bound values themselves are always assembled from series evaluations
(closed form or termwise power series), never from quadrature, so they
are deterministic; quadrature is reserved for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import specfun
from .exceptions import BoundNotApplicableError, DomainError, DSolverError
from .integrals import (
    IntegralSpec,
    integral_closed_form,
    integral_power_series,
    integral_power_series_scaled,
    integral_quadrature,
)
from .specfun import SQRT_PI, gamma_fn, pfq, struve_l, struve_l_scaled

#: Grid used by the supremum scan: log-spaced points on [1e-3, 500].
D_SCAN_POINTS = 200
D_SCAN_LO = 1e-3
D_SCAN_HI = 500.0

#: Absolute x tolerance for the golden-section refinement.
D_XTOL = 1e-6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class BoundCoefficients:
    """The coefficient triple multiplying the polynomial correction terms."""

    a: float
    b: float
    c: float


@dataclass(frozen=True)
class DConstant:
    """sup over x > 0 of  x^nu / L_{nu+n}(x) * integral(L_{nu+n}(t)/t^nu)."""

    nu: float
    n: float
    value: float
    argmax_x: float


@dataclass
class BoundReport:
    """Every applicable bound at one parameter point, with relative errors
    against the integral and skip reasons for the inapplicable ones."""

    spec: IntegralSpec
    integral: float
    applicable_bounds: dict[str, float] = field(default_factory=dict)
    rel_errors: dict[str, float] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)


def coefficients(nu: float, n: float) -> BoundCoefficients:
    """Coefficients a, b, c indexed by (nu, n).

    All three share the numerator factor 2 nu + n + 1, so they vanish
    together exactly on the equality boundary nu = -(n+1)/2.
    """
    if nu + n + 2.5 <= 0.0:
        raise DomainError(f"gamma argument nonpositive: nu+n+5/2 = {nu + n + 2.5}")
    for factor, label in (
        (n + 1.0, "n+1"),
        (n + 2.0, "n+2"),
        (n + 4.0, "n+4"),
        (nu + n + 1.0, "nu+n+1"),
        (nu + n + 3.0, "nu+n+3"),
    ):
        if factor == 0.0:
            raise DomainError(f"denominator factor {label} vanishes at nu={nu}, n={n}")
    top = 2.0 * nu + n + 1.0
    g52 = gamma_fn(nu + n + 2.5)
    a = top / (SQRT_PI * 2.0 ** (nu + n + 2.0) * (n + 2.0) * (nu + n + 1.0) * g52)
    b = (
        top
        * (2.0 * nu + n + 3.0)
        / (
            SQRT_PI
            * 2.0 ** (nu + n + 4.0)
            * (n + 1.0)
            * (n + 4.0)
            * (nu + n + 3.0)
            * gamma_fn(nu + n + 4.5)
        )
    )
    c = top / (SQRT_PI * 2.0 ** (nu + n + 1.0) * (n + 1.0) * (n + 2.0) * g52)
    return BoundCoefficients(a, b, c)


def _struve_over_xnu(order: float, nu: float, x: float) -> float:
    """L_order(x) / x^nu, routed through the scaled evaluation for large x."""
    if x <= specfun.SCALED_SWITCH_X:
        return struve_l(order, x).value * x ** (-nu)
    return struve_l_scaled(order, x).value * math.exp(x) * x ** (-nu)


def _damped_struve_over_xnu(gamma: float, order: float, nu: float, x: float) -> float:
    """exp(-gamma x) L_order(x) / x^nu without forming L_order(x) alone."""
    if x <= specfun.SCALED_SWITCH_X:
        return math.exp(-gamma * x) * struve_l(order, x).value * x ** (-nu)
    return struve_l_scaled(order, x).value * math.exp((1.0 - gamma) * x) * x ** (-nu)


def _undamped_integral(nu: float, n: float, x: float) -> float:
    # Deterministic series route for the undamped integral inside bounds.
    if n == 0.0:
        return integral_closed_form(nu, x)
    return integral_power_series(nu, n, x).value


def lower_bi1(nu: float, x: float) -> float:
    """Lower bound L_nu(x)/x^nu - x / (sqrt(pi) 2^nu Gamma(nu+3/2)) for
    the undamped n = 0 integral; tight as x grows."""
    if nu <= -1.5:
        raise DomainError(f"bi1 requires nu > -3/2, got nu={nu}")
    if x <= 0.0:
        raise DomainError(f"bi1 requires x > 0, got x={x}")
    return _struve_over_xnu(nu, nu, x) - x / (SQRT_PI * 2.0**nu * gamma_fn(nu + 1.5))


def _check_bi23_domain(nu: float, n: float, x: float, name: str) -> None:
    if not n > -1.0:
        raise DomainError(f"{name} requires n > -1, got n={n}")
    if nu < -0.5 * (n + 1.0):
        raise DomainError(f"{name} requires nu >= -(n+1)/2, got nu={nu}, n={n}")
    if x <= 0.0:
        raise DomainError(f"{name} requires x > 0, got x={x}")


def lower_bi2(nu: float, n: float, x: float) -> float:
    """Lower bound L_{nu+n+1}(x)/x^nu - a x^(n+2) for the undamped
    integral; exact equality on the boundary nu = -(n+1)/2."""
    _check_bi23_domain(nu, n, x, "bi2")
    coefs = coefficients(nu, n)
    return _struve_over_xnu(nu + n + 1.0, nu, x) - coefs.a * x ** (n + 2.0)


def upper_bi3(nu: float, n: float, x: float) -> float:
    """Upper bound for the undamped integral; tight both as x grows and
    as x drops to 0, exact on the boundary nu = -(n+1)/2."""
    _check_bi23_domain(nu, n, x, "bi3")
    coefs = coefficients(nu, n)
    lead = 2.0 * (nu + n + 1.0) / (n + 1.0)
    second = (2.0 * nu + n + 1.0) / (n + 1.0)
    return (
        lead * _struve_over_xnu(nu + n + 1.0, nu, x)
        - second * _struve_over_xnu(nu + n + 3.0, nu, x)
        + coefs.b * x ** (n + 4.0)
        - coefs.c * x ** (n + 2.0)
    )


def _check_damped_domain(gamma: float, nu: float, x: float, name: str) -> None:
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"{name} requires 0 < gamma < 1, got gamma={gamma}")
    if nu <= -1.5:
        raise DomainError(f"{name} requires nu > -3/2, got nu={nu}")
    if x <= 0.0:
        raise DomainError(f"{name} requires x > 0, got x={x}")


def lower_bi4(gamma: float, nu: float, x: float) -> float:
    """Lower bound for the damped n = 0 integral, built from the undamped
    closed form."""
    _check_damped_domain(gamma, nu, x, "bi4")
    u = gamma * x
    # 1 - (1+u)e^-u == -expm1(-u) - u exp(-u), stable for small u
    poly = -math.expm1(-u) - u * math.exp(-u)
    tail = poly / (SQRT_PI * gamma * 2.0**nu * gamma_fn(nu + 1.5))
    inner = math.exp(-u) * integral_closed_form(nu, x) - tail
    return inner / (1.0 - gamma)


def lower_bi5(gamma: float, nu: float, x: float) -> float:
    """Weaker, integral-free variant of bi4 using only L_nu(x)."""
    _check_damped_domain(gamma, nu, x, "bi5")
    u = gamma * x
    tail = (1.0 + u) * (-math.expm1(-u)) / (SQRT_PI * gamma * 2.0**nu * gamma_fn(nu + 1.5))
    inner = _damped_struve_over_xnu(gamma, nu, nu, x) - tail
    return inner / (1.0 - gamma)


def _check_ratio_domain(nu: float, n: float, name: str) -> None:
    if not n > -1.0:
        raise DomainError(f"{name} requires n > -1, got n={n}")
    if not nu > -0.5 * (n + 1.0):
        raise DomainError(
            f"{name} requires nu > -(n+1)/2 strictly, got nu={nu}, n={n}"
        )


def ratio_fn(nu: float, n: float, x: float) -> float:
    """x^nu / L_{nu+n}(x) times the undamped integral.

    Tends to 0 as x drops to 0 and to 1 as x grows; its supremum is the
    constant D.  Large arguments cancel the exp(x) growth analytically by
    pairing the scaled integral with the scaled Struve value.
    """
    _check_ratio_domain(nu, n, "ratio_fn")
    if x <= 0.0:
        raise DomainError(f"ratio_fn requires x > 0, got x={x}")
    if x <= specfun.SCALED_SWITCH_X:
        return (
            x**nu
            * integral_power_series(nu, n, x).value
            / struve_l(nu + n, x).value
        )
    return (
        x**nu
        * integral_power_series_scaled(nu, n, x).value
        / struve_l_scaled(nu + n, x).value
    )


def _golden_max(f, a: float, b: float, xtol: float) -> float:
    """Golden-section search for the maximizer of f on [a, b]."""
    h = b - a
    if h <= xtol:
        return 0.5 * (a + b)
    steps = int(math.ceil(math.log(xtol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI_SQ * h
    d = a + _INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(steps - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= _INV_PHI
            c = a + _INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            yd = f(d)
    return 0.5 * (a + b)


@lru_cache(maxsize=None)
def _d_constant_cached(nu: float, n: float) -> DConstant:
    log_lo = math.log(D_SCAN_LO)
    step = (math.log(D_SCAN_HI) - log_lo) / (D_SCAN_POINTS - 1)
    xs = [math.exp(log_lo + i * step) for i in range(D_SCAN_POINTS)]
    vals = [ratio_fn(nu, n, x) for x in xs]
    best = max(range(D_SCAN_POINTS), key=vals.__getitem__)
    if best == 0 or best == D_SCAN_POINTS - 1:
        edge = "left" if best == 0 else "right"
        raise DSolverError(
            f"ratio scan found no interior maximum for nu={nu}, n={n}: "
            f"boundary supremum {vals[best]:.6f} at the {edge} edge "
            f"x={xs[best]:g} of [{D_SCAN_LO:g}, {D_SCAN_HI:g}]"
        )
    argmax = _golden_max(
        lambda x: ratio_fn(nu, n, x), xs[best - 1], xs[best + 1], D_XTOL
    )
    return DConstant(nu, n, ratio_fn(nu, n, argmax), argmax)


def d_constant(nu: float, n: float) -> DConstant:
    """Supremum of ratio_fn over x > 0.

    A 200-point log-grid scan brackets the interior maximum, which a
    golden-section refinement then pins to D_XTOL in x.  Results are
    memoized per (nu, n); concurrent first calls may duplicate the scan
    but always produce identical values.
    """
    _check_ratio_domain(nu, n, "d_constant")
    return _d_constant_cached(float(nu), float(n))


def _check_bi78_domain(gamma, nu, n, x, d: DConstant, name: str) -> None:
    _check_ratio_domain(nu, n, name)
    if d.nu != nu or d.n != n:
        raise DomainError(
            f"{name} given a D constant for (nu={d.nu}, n={d.n}), "
            f"but called with (nu={nu}, n={n})"
        )
    if not 0.0 < gamma < 1.0:
        raise DomainError(f"{name} requires 0 < gamma < 1, got gamma={gamma}")
    if x <= 0.0:
        raise DomainError(f"{name} requires x > 0, got x={x}")
    if gamma >= 1.0 / d.value:
        raise BoundNotApplicableError(
            f"{name} only holds for gamma < 1/D = {1.0 / d.value:.6f}, "
            f"got gamma={gamma}"
        )


def upper_bi7(gamma: float, nu: float, n: float, x: float, d: DConstant) -> float:
    """Damped upper bound exp(-gamma x)/(1 - D gamma) times the undamped
    integral; applicable only for gamma < 1/D."""
    _check_bi78_domain(gamma, nu, n, x, d, "bi7")
    return (
        math.exp(-gamma * x) / (1.0 - d.value * gamma) * _undamped_integral(nu, n, x)
    )


def upper_bi8(gamma: float, nu: float, n: float, x: float, d: DConstant) -> float:
    """Fully explicit variant of bi7 with the undamped integral replaced
    by its bi3 upper bound."""
    _check_bi78_domain(gamma, nu, n, x, d, "bi8")
    return math.exp(-gamma * x) / (1.0 - d.value * gamma) * upper_bi3(nu, n, x)


def corollary_middle(nu: float, x: float) -> float:
    """The 2F3 expression sandwiched by the corollary bounds:

        x^(nu+1) / (sqrt(pi) 2^nu Gamma(nu+1/2))
            * 2F3(1, 1; 3/2, 2, nu+1/2; x^2/4)

    Identical to x^(nu-1) times the undamped closed form at order nu-1.
    """
    if nu <= 0.5:
        raise DomainError(f"corollary requires nu > 1/2, got nu={nu}")
    if x <= 0.0:
        raise DomainError(f"corollary requires x > 0, got x={x}")
    front = x ** (nu + 1.0) / (SQRT_PI * 2.0**nu * gamma_fn(nu + 0.5))
    return front * pfq([1.0, 1.0], [1.5, 2.0, nu + 0.5], 0.25 * x * x).value


def corollary_bounds(nu: float, x: float) -> tuple[float, float]:
    """Two-sided bounds on corollary_middle built from L_nu and L_{nu+2}."""
    if nu <= 0.5:
        raise DomainError(f"corollary requires nu > 1/2, got nu={nu}")
    if x <= 0.0:
        raise DomainError(f"corollary requires x > 0, got x={x}")
    coefs = coefficients(nu - 1.0, 0.0)
    l_nu = struve_l(nu, x).value
    lower = l_nu - coefs.a * x ** (nu + 1.0)
    upper = (
        2.0 * nu * l_nu
        - (2.0 * nu - 1.0) * struve_l(nu + 2.0, x).value
        + coefs.b * x ** (nu + 3.0)
        - coefs.c * x ** (nu + 1.0)
    )
    return lower, upper


def bound_report(spec: IntegralSpec, d: DConstant | None = None) -> BoundReport:
    """Evaluate the integral and every bound applicable at spec.

    Inapplicable or domain-erroring bounds are recorded in .skipped with
    the reason rather than failing the whole report.  The D constant is
    computed on demand (memoized) when bi7/bi8 are in play and no
    precomputed one is supplied.
    """
    report = BoundReport(spec=spec, integral=integral_quadrature(spec).value)
    gamma, nu, n, x = spec.gamma, spec.nu, spec.n, spec.x

    def attempt(name, fn):
        try:
            report.applicable_bounds[name] = fn()
        except BoundNotApplicableError as exc:
            report.skipped[name] = str(exc)
        except DomainError as exc:
            report.skipped[name] = str(exc)

    if gamma == 0.0:
        if n == 0.0:
            attempt("bi1", lambda: lower_bi1(nu, x))
        else:
            report.skipped["bi1"] = "bi1 bounds the n = 0 integral only"
        attempt("bi2", lambda: lower_bi2(nu, n, x))
        attempt("bi3", lambda: upper_bi3(nu, n, x))
        for name in ("bi4", "bi5", "bi7", "bi8"):
            report.skipped[name] = "requires 0 < gamma < 1"
    else:
        for name in ("bi1", "bi2", "bi3"):
            report.skipped[name] = "bounds the undamped integral; gamma = 0 only"
        if n == 0.0:
            attempt("bi4", lambda: lower_bi4(gamma, nu, x))
            attempt("bi5", lambda: lower_bi5(gamma, nu, x))
        else:
            report.skipped["bi4"] = "bi4 bounds the n = 0 integral only"
            report.skipped["bi5"] = "bi5 bounds the n = 0 integral only"
        if nu <= -0.5 * (n + 1.0):
            reason = f"D undefined: requires nu > -(n+1)/2, got nu={nu}, n={n}"
            report.skipped["bi7"] = reason
            report.skipped["bi8"] = reason
        else:
            dc = d if d is not None else d_constant(nu, n)
            attempt("bi7", lambda: upper_bi7(gamma, nu, n, x, dc))
            attempt("bi8", lambda: upper_bi8(gamma, nu, n, x, dc))

    for name, value in report.applicable_bounds.items():
        report.rel_errors[name] = abs(report.integral - value) / report.integral
    return report
