"""Scalar special functions underlying the integral bounds.

Gamma and log-gamma (Lanczos), the lower incomplete gamma function,
Pochhammer symbols, generalized hypergeometric series, and the modified
Struve function of the first kind L_nu in plain and exponentially scaled
form.  Everything here is a pure function of its arguments; there is no
shared mutable state.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

from .exceptions import ConvergenceError, DomainError

SQRT_PI = math.sqrt(math.pi)
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

#: Default cap on series terms; STRUVE_MAX_TERMS overrides it.
DEFAULT_MAX_TERMS = 600

#: Stop summing once |term| <= REL_TERM_TOL * |partial sum| twice in a row.
REL_TERM_TOL = 1e-16

#: Plain (unscaled) evaluation of L_nu refuses arguments above this.
OVERFLOW_X = 700.0

#: Below this the scaled evaluator just rescales the plain series.
SCALED_SWITCH_X = 30.0

# Lanczos approximation, g = 7 with the standard 9-coefficient double
# precision set; relative error ~1e-15 on the positive half line.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def term_cap() -> int:
    """Configured series term cap (STRUVE_MAX_TERMS, default 600)."""
    raw = os.environ.get("STRUVE_MAX_TERMS")
    if raw is None:
        return DEFAULT_MAX_TERMS
    cap = int(raw)
    if cap <= 0:
        raise ValueError("STRUVE_MAX_TERMS must be a positive integer")
    return cap


@dataclass(frozen=True)
class SeriesEval:
    """A summed series value together with convergence bookkeeping."""

    value: float
    abs_error_estimate: float
    terms_used: int
    converged: bool


def _lanczos_series(z: float) -> float:
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (z - 1.0 + i)
    return acc


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments.

    Arguments below 1/2 go through one step of the recurrence
    Gamma(x) = Gamma(x+1)/x; no reflection formula is needed because the
    whole package only ever forms gamma of positive quantities.
    """
    if x <= 0.0:
        raise DomainError(f"gamma_fn requires x > 0, got x={x}")
    if x < 0.5:
        return gamma_fn(x + 1.0) / x
    t = x + _LANCZOS_G - 0.5
    return SQRT_TWO_PI * t ** (x - 0.5) * math.exp(-t) * _lanczos_series(x)


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0, safe for arguments far beyond gamma_fn's
    overflow point (needed by the log-space series summations)."""
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got x={x}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    t = x + _LANCZOS_G - 0.5
    return (
        0.5 * math.log(2.0 * math.pi)
        + (x - 0.5) * math.log(t)
        - t
        + math.log(_lanczos_series(x))
    )


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k != int(k) or k < 0:
        raise DomainError(f"pochhammer requires an integer k >= 0, got k={k}")
    out = 1.0
    for i in range(int(k)):
        out *= a + i
    return out


def _sum_series(first_term: float, ratio: Callable[[int], float], cap: int) -> SeriesEval:
    """Sum t_0, t_1, ... where ratio(k) = t_{k+1}/t_k.

    Stops after two consecutive terms below REL_TERM_TOL relative to the
    partial sum.  The stop test only arms once |ratio| < 1, so series
    whose terms grow before decaying are handled correctly.  The error
    estimate 2*|last term| is safe because past that point the terms
    decay at least geometrically.
    """
    total = first_term
    term = first_term
    small = 0
    for k in range(cap - 1):
        q = ratio(k)
        term *= q
        total += term
        if abs(q) < 1.0 and abs(term) <= REL_TERM_TOL * abs(total):
            small += 1
            if small == 2:
                return SeriesEval(total, 2.0 * abs(term), k + 2, True)
        else:
            small = 0
    return SeriesEval(total, 2.0 * abs(term), cap, False)


def _sum_series_log(
    log_first: float, log_ratio: Callable[[int], float], offset: float, cap: int
) -> SeriesEval:
    """Sum exp(log t_k - offset) for a positive-term series.

    Individual terms may be astronomically large before scaling; only the
    scaled contributions are ever materialized, so nothing overflows.
    Contributions below exp(-745) underflow harmlessly to zero.
    """
    lt = log_first
    total = 0.0
    small = 0
    term = 0.0
    for k in range(cap):
        c = lt - offset
        term = math.exp(c) if c > -745.0 else 0.0
        total += term
        lq = log_ratio(k)
        lt += lq
        if lq < 0.0 and total > 0.0 and term <= REL_TERM_TOL * total:
            small += 1
            if small == 2:
                return SeriesEval(total, 2.0 * term, k + 1, True)
        else:
            small = 0
    return SeriesEval(total, 2.0 * term, cap, False)


def _scaled_cap(x: float, cap: int) -> int:
    # The series needs ~x/2 terms before its terms even start decaying,
    # so the configured cap is extended for large scaled arguments.
    return max(cap, int(x / 2.0 + 12.0 * math.sqrt(x) + 80.0))


def _check_pfq_params(a: Sequence[float], b: Sequence[float], z: float) -> None:
    for bj in b:
        if bj <= 0.0 and bj == int(bj):
            raise DomainError(
                f"denominator parameter {bj} is zero or a negative integer"
            )
    if len(a) > len(b) + 1:
        raise DomainError(f"pFq requires p <= q+1, got p={len(a)}, q={len(b)}")
    if len(a) == len(b) + 1 and abs(z) >= 1.0:
        raise DomainError(f"p = q+1 series only converges for |z| < 1, got z={z}")


def pfq(
    numerator_params: Sequence[float],
    denominator_params: Sequence[float],
    z: float,
    max_terms: int | None = None,
) -> SeriesEval:
    """Generalized hypergeometric series pFq(a1..ap; b1..bq; z).

    Summed term by term via the ratio recurrence
    t_{k+1}/t_k = prod(a_i+k)/prod(b_j+k) * z/(k+1).
    """
    a = [float(v) for v in numerator_params]
    b = [float(v) for v in denominator_params]
    _check_pfq_params(a, b, z)
    if z == 0.0:
        return SeriesEval(1.0, 0.0, 1, True)
    cap = max_terms if max_terms is not None else term_cap()

    def ratio(k: int) -> float:
        num = 1.0
        for ai in a:
            num *= ai + k
        den = 1.0
        for bj in b:
            den *= bj + k
        return num / den * z / (k + 1.0)

    out = _sum_series(1.0, ratio, cap)
    if not out.converged:
        raise ConvergenceError(
            f"pFq series did not converge within {cap} terms "
            f"(partial sum {out.value!r})"
        )
    return out


def _check_struve_order(nu: float) -> None:
    if nu <= -1.5:
        raise DomainError(f"modified Struve order must exceed -3/2, got nu={nu}")


def struve_l(nu: float, x: float, max_terms: int | None = None) -> SeriesEval:
    """Modified Struve function of the first kind, L_nu(x), from its
    defining power series.

    Restricted to nu > -3/2 (where the function is positive for x > 0)
    and x below the binary64 overflow threshold; use struve_l_scaled for
    larger arguments.
    """
    _check_struve_order(nu)
    if x < 0.0:
        raise DomainError(f"struve_l requires x >= 0, got x={x}")
    if x > OVERFLOW_X:
        raise OverflowError(
            f"struve_l overflows for x > {OVERFLOW_X:g} (x={x}); "
            "use struve_l_scaled"
        )
    if x == 0.0:
        return SeriesEval(0.0, 0.0, 0, True)
    cap = max_terms if max_terms is not None else term_cap()
    h = 0.5 * x
    t0 = h ** (nu + 1.0) / (gamma_fn(1.5) * gamma_fn(nu + 1.5))
    h2 = h * h

    def ratio(k: int) -> float:
        return h2 / ((k + 1.5) * (k + nu + 1.5))

    out = _sum_series(t0, ratio, cap)
    if not out.converged:
        raise ConvergenceError(
            f"struve_l series did not converge within {cap} terms "
            f"(nu={nu}, x={x})"
        )
    return out


def struve_l_scaled(nu: float, x: float, max_terms: int | None = None) -> SeriesEval:
    """Exponentially scaled modified Struve function, exp(-x) * L_nu(x).

    For moderate x this rescales the plain series; beyond that the terms
    are accumulated in log space with the exp(-x) offset folded in, which
    keeps the evaluation finite for x well past 1e4.
    """
    _check_struve_order(nu)
    if x < 0.0:
        raise DomainError(f"struve_l_scaled requires x >= 0, got x={x}")
    if x == 0.0:
        return SeriesEval(0.0, 0.0, 0, True)
    if x <= SCALED_SWITCH_X:
        plain = struve_l(nu, x, max_terms=max_terms)
        s = math.exp(-x)
        return SeriesEval(
            s * plain.value, s * plain.abs_error_estimate, plain.terms_used, True
        )
    cap = _scaled_cap(x, max_terms if max_terms is not None else term_cap())
    h = 0.5 * x
    log_h = math.log(h)
    log_t0 = (nu + 1.0) * log_h - log_gamma(1.5) - log_gamma(nu + 1.5)
    two_log_h = 2.0 * log_h

    def log_ratio(k: int) -> float:
        return two_log_h - math.log(k + 1.5) - math.log(k + nu + 1.5)

    out = _sum_series_log(log_t0, log_ratio, x, cap)
    if not out.converged:
        raise ConvergenceError(
            f"scaled struve_l series did not converge within {cap} terms "
            f"(nu={nu}, x={x})"
        )
    return out


def regularized_gamma_p(s: float, z: float) -> float:
    """Regularized lower incomplete gamma P(s, z) in [0, 1].

    Series expansion for z < s+1, Lentz continued fraction for the
    complement otherwise (the classic split).
    """
    if s <= 0.0:
        raise DomainError(f"regularized_gamma_p requires s > 0, got s={s}")
    if z < 0.0:
        raise DomainError(f"regularized_gamma_p requires z >= 0, got z={z}")
    if z == 0.0:
        return 0.0
    if z < s + 1.0:
        return math.exp(_log_gser(s, z))
    return 1.0 - _gcf_q(s, z)


def _log_gser(s: float, z: float) -> float:
    # log of the series form of P(s, z); valid for z < s+1.
    ap = s
    total = 1.0 / s
    delt = total
    for _ in range(10000):
        ap += 1.0
        delt *= z / ap
        total += delt
        if abs(delt) < abs(total) * 1e-17:
            break
    return s * math.log(z) - z - log_gamma(s) + math.log(total)


def _gcf_q(s: float, z: float) -> float:
    # Upper regularized Q(s, z) by modified Lentz; valid for z >= s+1.
    tiny = 1e-300
    b = z + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delt = d * c
        h *= delt
        if abs(delt - 1.0) < 1e-16:
            break
    return math.exp(s * math.log(z) - z - log_gamma(s)) * h


def lower_incomplete_gamma(s: float, z: float) -> float:
    """Lower incomplete gamma, integral of t^(s-1) exp(-t) over (0, z)."""
    return regularized_gamma_p(s, z) * gamma_fn(s)


def log_lower_incomplete_gamma(s: float, z: float) -> float:
    """log of the lower incomplete gamma; finite for s far beyond the
    point where gamma_fn overflows.  Requires z > 0."""
    if z <= 0.0:
        raise DomainError(f"log_lower_incomplete_gamma requires z > 0, got z={z}")
    if s <= 0.0:
        raise DomainError(f"log_lower_incomplete_gamma requires s > 0, got s={s}")
    if z < s + 1.0:
        return _log_gser(s, z) + log_gamma(s)
    return math.log1p(-_gcf_q(s, z)) + log_gamma(s)
