"""Catalog of individually evaluable representations of Catalan's constant and friends.

Each :class:`RepresentationEntry` knows its target constant, how it is
computed (series, integral, ...), where its formula comes from, and the
tolerance it is accepted at. ``evaluate`` runs one entry; ``evaluate_all``
runs the catalog and reports failures per entry instead of raising.

Entries are reference-free unless ``uses_reference`` is set: only those
read :func:`~hhsecant.special_functions.reference_constants` while computing
their value (targets always come from the reference constants).
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Optional

import numpy as np

from .distribution import STANDARD, TransformKind, convolution_pdf, transformed_pdf
from .quadrature import (
    EvalResult,
    QuadratureConfig,
    SeriesConfig,
    integrate_double,
    integrate_finite,
    integrate_semi_infinite,
    sum_alternating,
    sum_double,
    sum_monotone,
    trapezoid_error_estimate,
    trapezoid_uniform,
)
from .special_functions import (
    AccuracyBudget,
    EULER_MAX_INDEX,
    _u_integral,
    bessel_k0,
    euler_number,
    gudermannian,
    hurwitz_zeta,
    inverse_gudermannian,
    inverse_tangent_integral,
    lerch_phi,
    log_gamma,
    reference_constants,
    sech,
    trigamma,
)

__all__ = [
    "Target",
    "Kind",
    "CatalogConfig",
    "RepresentationEntry",
    "UnknownEntryError",
    "catalog",
    "catalog_ids",
    "get_entry",
    "evaluate",
    "evaluate_all",
    "TrapezoidResult",
    "odds_trapezoid",
    "JensenBound",
    "DegenerateBoundError",
    "jensen_bounds",
    "pietra_fixed_point",
    "pietra_map",
    "location_scale_verbatim",
]

_PI = math.pi
_HALF_PI = 0.5 * math.pi
_PI2_8 = _PI ** 2 / 8.0


class Target(str, Enum):
    CATALAN = "catalan"
    CATALAN_SQUARED = "catalan_squared"
    ZETA3 = "zeta3"
    ZETA2 = "zeta2"
    PI_QUARTER = "pi_quarter"
    IDENTITY = "identity"


class Kind(str, Enum):
    SERIES = "series"
    INTEGRAL = "integral"
    DOUBLE_INTEGRAL = "double_integral"
    DOUBLE_SUM = "double_sum"
    FIXED_POINT = "fixed_point"
    TRAPEZOID = "trapezoid"
    CLOSED = "closed"


@dataclass(frozen=True)
class CatalogConfig:
    """Evaluation budget shared by all entries.

    ``abs_tol`` is the requested absolute accuracy of the final value.
    ``mixture_tol_floor`` caps how hard the mixture double sums are pushed:
    each of their terms is itself a quadrature, and their acceptance
    tolerance is far looser than the floor. ``trapezoid_n`` fixes the panel
    count of the trapezoid entry (otherwise chosen from ``abs_tol``);
    ``negbinom_r`` is the negative-binomial shape; ``tau``/``sigma``
    parametrise the location-scale entry.
    """

    abs_tol: float = 1e-10
    max_terms: int = 4096
    max_subdivisions: int = 2000
    trapezoid_n: Optional[int] = None
    negbinom_r: float = 1.0
    tau: float = 1.0
    sigma: float = 2.0
    mixture_tol_floor: float = 1e-9

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_terms < 8 or self.max_subdivisions < 1:
            raise ValueError("budgets too small")
        if self.trapezoid_n is not None and self.trapezoid_n < 1:
            raise ValueError("trapezoid_n must be >= 1")
        if not self.negbinom_r > 0:
            raise ValueError("negbinom_r must be positive")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def with_tol(self, abs_tol: float) -> "CatalogConfig":
        return replace(self, abs_tol=abs_tol)

    def quad(self, scale: float = 1.0, share: float = 1.0) -> QuadratureConfig:
        """Quadrature budget for an integral multiplied by ``scale``."""
        return QuadratureConfig(abs_tol=share * self.abs_tol / abs(scale), max_subdivisions=self.max_subdivisions)

    def series(self, scale: float = 1.0, share: float = 1.0, max_terms: Optional[int] = None) -> SeriesConfig:
        return SeriesConfig(abs_tol=share * self.abs_tol / abs(scale), max_terms=max_terms or self.max_terms)


@dataclass(frozen=True)
class RepresentationEntry:
    """One named formula, the constant it targets, and how to evaluate it.

    ``anchor`` says where the formula comes from; ``formula`` is a plain
    text rendering. ``constant`` is set for identity entries (their own
    stated value).
    """

    id: str
    target: Target
    kind: Kind
    anchor: str
    formula: str
    compute: Callable[[CatalogConfig], EvalResult] = field(repr=False, compare=False)
    accept_tol: float = 1e-8
    uses_reference: bool = False
    constant: Optional[Callable[[], float]] = field(default=None, repr=False, compare=False)
    mixture: bool = False

    def evaluate(self, cfg: Optional[CatalogConfig] = None) -> EvalResult:
        return self.compute(cfg or CatalogConfig())

    def reference(self) -> float:
        c = reference_constants()
        if self.target is Target.CATALAN:
            return c.catalan
        if self.target is Target.CATALAN_SQUARED:
            return c.catalan ** 2
        if self.target is Target.ZETA3:
            return c.zeta3
        if self.target is Target.ZETA2:
            return c.zeta2
        if self.target is Target.PI_QUARTER:
            return c.pi / 4.0
        return self.constant()

    def gated(self, cfg: Optional[CatalogConfig] = None) -> bool:
        """Whether acceptance applies; the negative-binomial entry is only gated at r = 1."""
        cfg = cfg or CatalogConfig()
        return not (self.id == "negbinom-mixture" and cfg.negbinom_r != 1.0)

    def acceptance(self, cfg: Optional[CatalogConfig] = None) -> float:
        """Error allowed for a pass at this config's tolerance."""
        cfg = cfg or CatalogConfig()
        return max(self.accept_tol, 10.0 * cfg.abs_tol)


class UnknownEntryError(KeyError):
    """Raised for ids absent from the catalog."""


# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------

def _affine(res: EvalResult, scale: float, offset: float = 0.0) -> EvalResult:
    return EvalResult(offset + scale * res.value, abs(scale) * res.err_estimate, res.work, res.converged, res.note)


def _closed(value: float, err: float = 0.0) -> EvalResult:
    return EvalResult(float(value), max(err, 4.0 * np.finfo(float).eps * abs(value)), 1, math.isfinite(value))


def _sum_results(results: Iterable[EvalResult], scale: float = 1.0, offset: float = 0.0) -> EvalResult:
    results = list(results)
    value = offset + scale * math.fsum(r.value for r in results)
    err = abs(scale) * math.fsum(r.err_estimate for r in results)
    notes = "; ".join(r.note for r in results if r.note)
    return EvalResult(value, err, sum(r.work for r in results), all(r.converged for r in results), notes)


def _u(x):
    return _HALF_PI * np.asarray(x, dtype=float)


def _survival_gd(x):
    # 1 - (2/pi) arctan(sinh u) = (2/pi) arctan(csch u), free of cancellation
    u = _u(x)
    with np.errstate(over="ignore", divide="ignore"):
        return 2.0 / _PI * np.arctan(1.0 / np.sinh(u))


def _survival_exp(x):
    # 1 - (2/pi) arctan(e^u) = (2/pi) arctan(e^-u)
    return 2.0 / _PI * np.arctan(np.exp(-_u(x)))


def _zeta3_ref() -> float:
    return reference_constants().zeta3


def _truncation_correction() -> float:
    e = math.exp(-_HALF_PI)
    phi = lerch_phi(-math.exp(-_PI), 2.0, 0.5, AccuracyBudget(abs_tol=1e-17))
    return _HALF_PI * math.atan(e) + 0.25 * e * phi


def _gd_half_pi() -> float:
    return float(gudermannian(_HALF_PI))


def _euler_term(k: int, weight: float) -> float:
    """|E_2k| (pi/2)^2k / ((2k)! weight); exact integers up to the guard."""
    e2k = abs(euler_number(2 * k))
    return math.exp(math.log(e2k) + 2 * k * math.log(_HALF_PI) - math.lgamma(2 * k + 1.0)) / weight


_EULER_TERMS = EULER_MAX_INDEX // 2 + 1


# ---------------------------------------------------------------------------
# Catalan targets: single series and integrals
# ---------------------------------------------------------------------------

def _beta_series(cfg):
    return sum_alternating(lambda k: 1.0 / (1.0 + 2.0 * k) ** 2, cfg.series())


def _beta_integral(cfg):
    # (1/Gamma(2)) int_0^inf x e^-x / (1 + e^-2x) dx
    f = lambda x: x * np.exp(-x) / (1.0 + np.exp(-2.0 * x))  # noqa: E731
    return integrate_semi_infinite(f, 0.0, cfg.quad())


def _arctan_integral(cfg):
    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, np.arctan(x) / np.where(x > 0, x, 1.0), 1.0)

    return integrate_finite(f, 0.0, 1.0, cfg.quad())


def _mean_integral(cfg):
    f = lambda x: x * sech(_u(x))  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(_PI2_8)), _PI2_8)


def _survival_gd_entry(cfg):
    return _affine(integrate_semi_infinite(_survival_gd, 0.0, cfg.quad(_PI2_8)), _PI2_8)


def _survival_exp_entry(cfg):
    s = _PI ** 2 / 4.0
    return _affine(integrate_semi_infinite(_survival_exp, 0.0, cfg.quad(s)), s)


def _quantile_log(cfg):
    # x -> 1 - u turns log tan(pi (x+1)/4) into -log tan(pi u / 4); the log singularity sits at u = 0
    f = lambda u: -np.log(np.tan(0.25 * _PI * np.asarray(u)))  # noqa: E731
    return _affine(integrate_finite(f, 0.0, 1.0, cfg.quad(_PI / 4)), _PI / 4)


def _quantile_asinh(cfg):
    # asinh(tan(pi x / 2)) with x = 1 - u is asinh(cot(pi u / 2))
    f = lambda u: np.arcsinh(1.0 / np.tan(_HALF_PI * np.asarray(u)))  # noqa: E731
    return _affine(integrate_finite(f, 0.0, 1.0, cfg.quad(_PI / 4)), _PI / 4)


def _location_scale_integral(tau: float, sigma: float, cfg: CatalogConfig) -> EvalResult:
    scale = (_PI / sigma) ** 2 / 8.0
    f = lambda x: x * sech(_PI * (np.asarray(x) - tau) / (2.0 * sigma))  # noqa: E731
    return _affine(integrate_semi_infinite(f, tau, cfg.quad(scale)), scale), scale


def _location_scale(cfg):
    tau, sigma = cfg.tau, cfg.sigma
    res, scale = _location_scale_integral(tau, sigma, cfg)
    # the integral of x sech(...) equals sigma tau + sigma^2 mu, so sigma tau is removed;
    # subtracting tau instead would be off by scale * tau * (sigma - 1)
    gap = scale * tau * (sigma - 1.0)
    note = f"tau-subtracted variant differs by {gap:.6g}" if gap else ""
    return replace(res, value=res.value - scale * sigma * tau, note=note)


def location_scale_verbatim(tau: float, sigma: float, cfg: Optional[CatalogConfig] = None) -> EvalResult:
    """The location-scale formula with ``tau`` (not ``sigma tau``) subtracted.

    Equals G + pi^2 tau (sigma - 1) / (8 sigma^2), so it reproduces G only
    when tau = 0 or sigma = 1. Kept to document that discrepancy.
    """
    cfg = cfg or CatalogConfig()
    res, scale = _location_scale_integral(float(tau), float(sigma), cfg)
    return replace(res, value=res.value - scale * tau)


def _trigamma_diff(cfg):
    return _closed((trigamma(0.25) - trigamma(0.75)) / 16.0, 1e-15)


def _hurwitz_diff(cfg):
    return _closed((hurwitz_zeta(2.0, 0.25) - hurwitz_zeta(2.0, 0.75)) / 16.0, 1e-15)


def _convolution_mean(cfg):
    # (pi/4) z csch log cosh = (pi^2/16) z f_Z(z)
    s = _PI ** 2 / 16.0
    f = lambda z: np.asarray(z) * convolution_pdf(z)  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), s)


def _convolution_m2(cfg):
    # G^2 = (pi^4/64) ((2/pi) int z^2 csch log cosh - 1) = (pi^4/64) (E Z^2 / 2 - 1)
    s = _PI ** 4 / 128.0
    f = lambda z: np.asarray(z) ** 2 * convolution_pdf(z)  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), s, -_PI ** 4 / 64.0)


def _neg_log(cfg):
    f = lambda y: -np.log(np.asarray(y)) * transformed_pdf(TransformKind.NEG_LOG, y)  # noqa: E731
    return _affine(integrate_finite(f, 0.0, 1.0, cfg.quad(_PI2_8)), _PI2_8)


def _odds_integrand(y):
    # y / (1-y)^3 sech(pi y / (2 (1-y))); the limit at y = 1 is 0
    y = np.asarray(y, dtype=float)
    inside = y < 1.0
    ys = np.where(inside, y, 0.0)
    om = 1.0 - ys
    with np.errstate(over="ignore"):
        v = ys / om ** 3 * sech(_HALF_PI * ys / om)
    return np.where(inside, v, 0.0)


def _odds(cfg):
    return _affine(integrate_finite(_odds_integrand, 0.0, 1.0, cfg.quad(_PI2_8)), _PI2_8)


# derivative of the odds integrand: 1 at y = 0, 0 at y = 1 (all derivatives vanish there)
_ODDS_DF0 = 1.0
_ODDS_DF1 = 0.0
_TRAPEZOID_SAFETY = 1.25


@dataclass(frozen=True)
class TrapezoidResult:
    """Trapezoid approximation of G and the asymptotic estimate of (G - approximation)."""

    n: int
    value: float
    error_estimate: float


def odds_trapezoid(n: int) -> TrapezoidResult:
    """G approximated by the trapezoidal rule with ``n`` panels on the odds integral."""
    value = _PI2_8 * trapezoid_uniform(_odds_integrand, 0.0, 1.0, n, fa=0.0, fb=0.0)
    est = _PI2_8 * trapezoid_error_estimate(_ODDS_DF0, _ODDS_DF1, 0.0, 1.0, n)
    return TrapezoidResult(n, value, est)


def _odds_trapezoid(cfg):
    n = cfg.trapezoid_n
    if n is None:
        # |estimate| = (pi^2/8) / (12 n^2) <= abs_tol / safety
        n = max(8, math.ceil(math.sqrt(_TRAPEZOID_SAFETY * _PI2_8 / (12.0 * cfg.abs_tol))))
    r = odds_trapezoid(n)
    err = _TRAPEZOID_SAFETY * abs(r.error_estimate)
    # a caller-fixed panel count is a study point, not a tolerance request
    converged = cfg.trapezoid_n is not None or err <= cfg.abs_tol
    return EvalResult(r.value, err, n + 1, converged, f"asymptotic error estimate {r.error_estimate:.3e}")


def _reciprocal(cfg):
    f = lambda y: transformed_pdf(TransformKind.RECIPROCAL, y) / np.asarray(y)  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(_PI2_8, 0.5)), _PI2_8)


def _softplus(cfg):
    def f(y):
        y = np.asarray(y, dtype=float)
        return np.logaddexp(0.0, y) * transformed_pdf(TransformKind.SOFTPLUS, y)

    q = cfg.quad(_PI2_8, 0.5)
    right = integrate_semi_infinite(f, 0.0, q)
    left = integrate_semi_infinite(lambda y: f(-np.asarray(y)), 0.0, q)
    return _sum_results([right, left], _PI2_8)


# ---------------------------------------------------------------------------
# Catalan targets: Gini-based (consume zeta(3))
# ---------------------------------------------------------------------------

def _gini_double_integral(cfg):
    s = _PI / 4.0
    f = lambda p, t: np.log(np.tan(0.25 * _PI * (np.asarray(t) + 1.0)))  # noqa: E731
    res = integrate_double(f, (0.0, 1.0), lambda p: (0.0, p), cfg.quad(s))
    return _affine(res, s, 7.0 * _zeta3_ref() / (4.0 * _PI))


def _gini_survival_gd(cfg):
    s = _PI / 4.0
    f = lambda x: gudermannian(_u(x)) * _survival_gd(x)  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), -s, 7.0 * _zeta3_ref() / (2.0 * _PI))


def _gini_survival_exp(cfg):
    s = _PI ** 2 / 4.0
    f = lambda x: STANDARD.cdf_exp(x) * _survival_exp(x)  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), -s, 7.0 * _zeta3_ref() / (2.0 * _PI))


def _catalan11(cfg):
    s = _PI ** 2 / 16.0
    f = lambda x: _survival_gd(x) ** 2  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), s, 7.0 * _zeta3_ref() / (4.0 * _PI))


# ---------------------------------------------------------------------------
# Pietra display: a consistency identity in G
# ---------------------------------------------------------------------------

def pietra_map(x: float, cfg: Optional[CatalogConfig] = None) -> EvalResult:
    """h(x) = (1/16) [8 Ti2(exp(4x/pi)) - pi^2 int_{8x/pi^2}^inf (1 - F)].

    h(G) = G; in fact h'(x) = 1 identically (the derivatives of the two
    terms add up to 16), so h(x) = x for every x and the map carries no
    information that singles out G.
    """
    cfg = cfg or CatalogConfig()
    x = float(x)
    ti2 = inverse_tangent_integral(math.exp(4.0 * x / _PI))
    s = _PI ** 2 / 16.0
    tail = integrate_semi_infinite(_survival_gd, 8.0 * x / _PI ** 2, cfg.quad(s))
    return _affine(tail, -s, 0.5 * ti2)


def _pietra_consistency(cfg):
    g = reference_constants().catalan
    res = pietra_map(g, cfg)
    return replace(res, note="consistency identity evaluated at the reference G; the fixed point is not isolated")


def pietra_fixed_point(
    x0: float = 0.9, cfg: Optional[CatalogConfig] = None, damping: float = 0.5, max_iter: int = 200
) -> EvalResult:
    """Damped iteration x <- x + damping (h(x) - x) on :func:`pietra_map`.

    Before trusting a stationary point the slope h'(x) is estimated by a
    central difference; a slope near 1 means the point is not an isolated
    fixed point (every x is stationary), so the result is reported as
    not converged with the starting value as the partial value.
    """
    cfg = cfg or CatalogConfig()
    x = float(x0)
    work = 0
    for it in range(1, max_iter + 1):
        hx = pietra_map(x, cfg)
        work += hx.work
        step = damping * (hx.value - x)
        x += step
        if abs(step) <= cfg.abs_tol:
            break
    dx = 1e-3
    slope = (pietra_map(x + dx, cfg).value - pietra_map(x - dx, cfg).value) / (2.0 * dx)
    if abs(slope - 1.0) < 1e-3:
        return EvalResult(x, math.inf, work, False,
                          f"non-isolated fixed point: slope {slope:.6f}, every x is stationary")
    return EvalResult(x, abs(step) / max(abs(1.0 - slope), 1e-300), work, abs(step) <= cfg.abs_tol)


# ---------------------------------------------------------------------------
# Catalan targets: truncated law
# ---------------------------------------------------------------------------

def _truncated_mean(cfg):
    res = integrate_finite(lambda x: np.asarray(x) * sech(_u(x)), 0.0, 1.0, cfg.quad(_PI2_8))
    return _affine(res, _PI2_8, _truncation_correction())


def _truncated_euler_series(cfg):
    s = _PI ** 2 / 16.0
    res = sum_alternating(lambda k: _euler_term(k, 1.0 + k), cfg.series(s, max_terms=_EULER_TERMS))
    return _affine(res, s, _truncation_correction())


def _truncated_survival(cfg):
    res = integrate_finite(lambda x: gudermannian(_u(x)), 0.0, 1.0, cfg.quad(_PI / 4.0))
    return _affine(res, -_PI / 4.0, _PI / 4.0 * _gd_half_pi() + _truncation_correction())


def _truncated_quantile(cfg):
    gd = _gd_half_pi()
    s = 0.5 * gd
    res = integrate_finite(lambda x: inverse_gudermannian(np.asarray(x) * gd), 0.0, 1.0, cfg.quad(s))
    return _affine(res, s, _truncation_correction())


# ---------------------------------------------------------------------------
# Catalan targets: mixtures
# ---------------------------------------------------------------------------

def _mixture_tol(cfg: CatalogConfig) -> CatalogConfig:
    return cfg.with_tol(max(cfg.abs_tol, cfg.mixture_tol_floor))


def _poisson_mixture(cfg):
    cfg = _mixture_tol(cfg)
    s = _PI ** 2 / 2.0

    def term(y, k):
        c = 2.0 + _PI * (1.0 + 2.0 * k)
        return math.exp(y * math.log(2.0 / c)) * y / c

    return _affine(sum_double(term, cfg.series(s), outer="direct", outer_start=1), s)


def _negbinom_sum(r: float, cfg: CatalogConfig) -> EvalResult:
    """(pi^2/4) (r / Gamma(r)) sum_k k Gamma(r+k) sum_j (-1)^j U(k+1, 2-r, r pi (1+2j)/2).

    U is the integral (1/Gamma(a)) int s^(a-1) (1+s)^(b-a-1) e^(-zs) ds; the
    prefactor is folded into the integrand in log space so no Gamma value
    is ever formed.
    """
    s = _PI ** 2 / 4.0
    series = cfg.series(s)
    qcfg = QuadratureConfig(abs_tol=1e-300, rel_tol=1e-12, max_subdivisions=cfg.max_subdivisions)
    b = 2.0 - r

    def term(k, j):
        log_coef = math.log(r) + math.log(k) + log_gamma(r + k) - log_gamma(r) - log_gamma(k + 1.0)
        z = r * _PI * (1.0 + 2.0 * j) / 2.0
        res = _u_integral(k + 1.0, b, z, log_coef, qcfg)
        return res.value if res.converged else math.nan

    return _affine(sum_double(term, series, outer="direct", outer_start=1), s)


def _geometric_mixture(cfg):
    return _negbinom_sum(1.0, _mixture_tol(cfg))


def _negbinom_mixture(cfg):
    return _negbinom_sum(cfg.negbinom_r, _mixture_tol(cfg))


def _exponential_mixture(cfg):
    cfg = _mixture_tol(cfg)
    s = _PI ** 2 / 2.0
    series = cfg.series(s, 0.5)
    k0 = np.vectorize(bessel_k0, otypes=[float])
    state = {"work": 0, "ok": True, "err": 0.0}

    def term(k):
        # int_0^inf y K0(c sqrt y) dy = 2 int_0^inf t^3 K0(c t) dt, c = sqrt(2 pi (1+2k))
        c = math.sqrt(2.0 * _PI * (1.0 + 2.0 * k))

        def f(t):
            t = np.asarray(t, dtype=float)
            return 2.0 * t ** 3 * k0(np.maximum(c * t, 1e-300))

        r = integrate_semi_infinite(f, 0.0, QuadratureConfig(abs_tol=0.05 * series.abs_tol,
                                                            max_subdivisions=cfg.max_subdivisions))
        state["work"] += r.work
        state["ok"] = state["ok"] and r.converged
        state["err"] += r.err_estimate
        return r.value

    res = sum_alternating(term, series)
    out = EvalResult(res.value, res.err_estimate + state["err"], res.work + state["work"],
                     res.converged and state["ok"], res.note)
    return _affine(out, s)


# ---------------------------------------------------------------------------
# zeta(3), zeta(2), pi targets
# ---------------------------------------------------------------------------

def _appery11(cfg):
    s = _PI ** 3 / 28.0
    f = lambda x: STANDARD.sf(x) * (2.0 - STANDARD.sf(x))  # 1 - F^2  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), s)


def _appery12(cfg):
    s = _PI ** 3 / 14.0
    f = lambda x: np.asarray(x) * sech(_u(x)) * gudermannian(_u(x)) / _HALF_PI  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), s)


def _appery_from_gini(cfg):
    # zeta(3) = (2 pi G / 7)(1 + Gini), Gini = (1/mu) int F (1 - F), mu = 8G/pi^2
    g = reference_constants().catalan
    s = _PI ** 3 / 28.0
    f = lambda x: (1.0 - STANDARD.sf(x)) * STANDARD.sf(x)  # noqa: E731
    return _affine(integrate_semi_infinite(f, 0.0, cfg.quad(s)), s, 2.0 * _PI * g / 7.0)


def _phi_shift(k: int, cfg: CatalogConfig) -> float:
    return lerch_phi(-1.0, 1.0, k + 1.5, AccuracyBudget(abs_tol=min(1e-15, cfg.abs_tol * 1e-3)))


def _phi_sum(cfg: CatalogConfig, scale: float) -> EvalResult:
    return sum_monotone(lambda k: _phi_shift(k, cfg) / (1.0 + 2.0 * k), cfg.series(scale))


def _zeta2_lerch(cfg):
    return _affine(_phi_sum(cfg, 4.0 / 3.0), 4.0 / 3.0, 4.0 / 3.0 * _PI ** 2 / 16.0)


def _leibniz(cfg):
    return sum_alternating(lambda k: 1.0 / (1.0 + 2.0 * k), cfg.series())


# ---------------------------------------------------------------------------
# Series identities
# ---------------------------------------------------------------------------

def _lemma(cfg):
    return sum_alternating(lambda k: k / (1.0 + 2.0 * k) ** 3, cfg.series())


def _phi_sum_entry(cfg):
    return _phi_sum(cfg, 1.0)


def _log_series(cfg):
    return sum_alternating(lambda k: math.log1p(2.0 * k) / (1.0 + 2.0 * k), cfg.series())


def _euler_gd_series(cfg):
    return sum_alternating(lambda k: _euler_term(k, 1.0 + 2.0 * k), cfg.series(max_terms=_EULER_TERMS))


def _double_sum_gd(cfg):
    term = lambda k, j: 1.0 / ((1.0 + 2.0 * k) * (1.0 + 2.0 * j) ** (2 * k + 1))  # noqa: E731
    return sum_double(term, cfg.series(), outer="alternating")


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def _g_squared_identity() -> float:
    return reference_constants().catalan ** 2


def _build() -> tuple[RepresentationEntry, ...]:
    C, S, I, D2, DS, FP, TR, CL = (Target.CATALAN, Kind.SERIES, Kind.INTEGRAL, Kind.DOUBLE_INTEGRAL,
                                   Kind.DOUBLE_SUM, Kind.FIXED_POINT, Kind.TRAPEZOID, Kind.CLOSED)
    E = RepresentationEntry
    z3 = "7 zeta(3)"
    entries = [
        E("beta-series", C, S, "alternating series defining beta(2)", "sum (-1)^k / (1+2k)^2", _beta_series),
        E("beta-integral", C, I, "Mellin-type integral of the Dirichlet beta function at 2",
          "int_0^inf x e^-x / (1 + e^-2x) dx", _beta_integral),
        E("arctan-integral", C, I, "termwise integration of the arctan series",
          "int_0^1 arctan(x)/x dx", _arctan_integral),
        E("mean-integral", C, I, "mean of the half hyperbolic secant law",
          "(pi^2/8) int_0^inf x sech(pi x/2) dx", _mean_integral),
        E("survival-gd", C, I, "mean as integral of the survival function, Gudermannian form",
          "(pi^2/8) int_0^inf [1 - (2/pi) arctan(sinh(pi x/2))] dx", _survival_gd_entry),
        E("survival-exp", C, I, "mean as integral of the survival function, exponential form",
          "(pi^2/4) int_0^inf [1 - (2/pi) arctan(e^(pi x/2))] dx", _survival_exp_entry),
        E("quantile-log", C, I, "mean as integral of the quantile function, log-tan form",
          "(pi/4) int_0^1 log tan(pi (x+1)/4) dx", _quantile_log),
        E("quantile-asinh", C, I, "mean as integral of the quantile function, asinh form",
          "(pi/4) int_0^1 asinh(tan(pi x/2)) dx", _quantile_asinh),
        E("location-scale", C, I, "mean of the location-scale family (sigma*tau subtracted)",
          "(1/8)(pi/sigma)^2 [int_tau^inf x sech(pi (x-tau)/(2 sigma)) dx - sigma tau]", _location_scale),
        E("trigamma-diff", C, CL, "difference of trigamma values", "(1/16)[psi'(1/4) - psi'(3/4)]",
          _trigamma_diff),
        E("hurwitz-diff", C, CL, "difference of Hurwitz zeta values", "(1/16)[zeta(2,1/4) - zeta(2,3/4)]",
          _hurwitz_diff),
        E("convolution-mean", C, I, "mean of the sum of two independent copies",
          "(pi/4) int_0^inf z csch(pi z/2) log cosh(pi z/2) dz", _convolution_mean),
        E("convolution-m2", Target.CATALAN_SQUARED, I, "second moment of the sum of two independent copies",
          "(pi^4/64)[(2/pi) int_0^inf z^2 csch(pi z/2) log cosh(pi z/2) dz - 1]", _convolution_m2),
        E("neg-log", C, I, "mean under the transform X = -log Y",
          "-(pi^2/8) int_0^1 (log y / y) sech((pi/2) log y) dy", _neg_log),
        E("odds", C, I, "mean under the transform X = Y/(1-Y)",
          "(pi^2/8) int_0^1 y/(1-y)^3 sech(pi y/(2(1-y))) dy", _odds),
        E("odds-trapezoid", C, TR, "trapezoidal rule on the odds-transform integral",
          "(pi^2/(8N)) [f(0)/2 + sum_{k=1}^{N-1} f(k/N) + f(1)/2], f(x) = x/(1-x)^3 sech(pi x/(2(1-x)))",
          _odds_trapezoid),
        E("reciprocal", C, I, "mean under the transform X = 1/Y",
          "(pi^2/8) int_0^inf y^-3 sech(pi/(2y)) dy", _reciprocal),
        E("softplus", C, I, "mean under the transform X = log(e^Y + 1)",
          "(pi^2/8) int_R e^y log(e^y+1)/(e^y+1) sech((pi/2) log(e^y+1)) dy", _softplus),
        E("gini-double-integral", C, D2, "Gini index as area under the Lorenz curve",
          f"{z3}/(4 pi) + (pi/4) int_0^1 int_0^p log tan(pi (t+1)/4) dt dp", _gini_double_integral,
          uses_reference=True),
        E("gini-survival-a", C, I, "Gini index as int F(1-F)/mu, Gudermannian form",
          f"{z3}/(2 pi) - (pi/4) int_0^inf gd(pi x/2) [1 - (2/pi) gd(pi x/2)] dx", _gini_survival_gd,
          uses_reference=True),
        E("gini-survival-b", C, I, "Gini index as int F(1-F)/mu, exponential form",
          f"{z3}/(2 pi) - (pi^2/4) int_0^inf [(4/pi) arctan(e^(pi x/2)) - 1][1 - (2/pi) arctan(e^(pi x/2))] dx",
          _gini_survival_exp, uses_reference=True),
        E("catalan11", C, I, "Gini index as 1 - int (1-F)^2 / mu",
          f"{z3}/(4 pi) + (pi^2/16) int_0^inf [1 - (2/pi) arctan(sinh(pi x/2))]^2 dx", _catalan11,
          uses_reference=True),
        E("catalan12", C, I, "Gini index as int F(1-F)/mu combined with its closed form",
          f"{z3}/(2 pi) - (pi/4) int_0^inf arctan(sinh(pi x/2)) [1 - (2/pi) arctan(sinh(pi x/2))] dx",
          _gini_survival_gd, uses_reference=True),
        E("pietra-fixed-point", C, FP, "Pietra index closed form equated with its survival-integral form",
          "(1/16){2 Phi(-e^(8G/pi), 2, 1/2) e^(4G/pi) - pi^2 int_{8G/pi^2}^inf [1 - (2/pi) gd(pi x/2)] dx}",
          _pietra_consistency, uses_reference=True),
        E("truncated-mean", C, I, "mean of the law truncated to [0, 1]",
          "(pi^2/8) int_0^1 x sech(pi x/2) dx + (pi/2) arctan(e^(-pi/2)) + (e^(-pi/2)/4) Phi(-e^-pi, 2, 1/2)",
          _truncated_mean),
        E("truncated-euler-series", C, S, "truncated mean through the Euler-number series of sech",
          "(pi^2/16) sum E_2k (pi/2)^2k / ((1+k)(2k)!) + (pi/2) arctan(e^(-pi/2)) + (e^(-pi/2)/4) Phi(-e^-pi,2,1/2)",
          _truncated_euler_series),
        E("truncated-survival", C, I, "truncated mean as integral of its survival function",
          "(pi/4)[gd(pi/2) - int_0^1 gd(pi x/2) dx] + (pi/2) arctan(e^(-pi/2)) + (e^(-pi/2)/4) Phi(-e^-pi,2,1/2)",
          _truncated_survival),
        E("truncated-quantile", C, I, "truncated mean as integral of its quantile function",
          "(1/2) gd(pi/2) int_0^1 asinh(tan(x gd(pi/2))) dx + (pi/2) arctan(e^(-pi/2)) + (e^(-pi/2)/4) Phi(...)",
          _truncated_quantile),
        E("poisson-mixture", C, DS, "mean of a Poisson mixture with this mixing density",
          "(pi^2/2) sum_{y>=1} sum_k (-1)^k 2^y y / [2 + pi(1+2k)]^(y+1)", _poisson_mixture,
          accept_tol=1e-6, mixture=True),
        E("geometric-mixture", C, DS, "mean of a geometric mixture with this mixing density",
          "(pi^2/4) sum_{k>=1} k k! sum_j (-1)^j U(k+1, 1, (pi/2)(1+2j))", _geometric_mixture,
          accept_tol=1e-6, mixture=True),
        E("negbinom-mixture", C, DS, "mean of a negative binomial mixture (shape r) with this mixing density",
          "(pi^2/4)(r/Gamma(r)) sum_{k>=1} k Gamma(r+k) sum_j (-1)^j U(k+1, 2-r, r pi (1+2j)/2)",
          _negbinom_mixture, accept_tol=1e-6, mixture=True),
        E("exponential-mixture", C, DS, "mean of an exponential mixture over the reciprocal law",
          "(pi^2/2) sum_k (-1)^k int_0^inf y K0(sqrt(2 pi y (1+2k))) dy", _exponential_mixture,
          accept_tol=1e-6, mixture=True),
        E("appery11", Target.ZETA3, I, "Gini index as int (1 - F^2)/mu - 1",
          "(pi^3/28) int_0^inf {1 - [(2/pi) arctan(sinh(pi x/2))]^2} dx", _appery11),
        E("appery12", Target.ZETA3, I, "Gini index as (2/mu) int x f F - 1",
          "(pi^3/14) int_0^inf x sech(pi x/2) (2/pi) arctan(sinh(pi x/2)) dx", _appery12),
        E("appery-from-gini", Target.ZETA3, I, "closed-form Gini index solved for zeta(3)",
          "(2 pi G/7)(1 + Gini), Gini = (pi^2/(8G)) int_0^inf F (1-F) dx", _appery_from_gini,
          uses_reference=True),
        E("zeta2-lerch", Target.ZETA2, S, "unit mass of the convolution density",
          "(4/3)[pi^2/16 + sum_k Phi(-1, 1, k + 3/2)/(1+2k)]", _zeta2_lerch, accept_tol=1e-7),
        E("leibniz", Target.PI_QUARTER, S, "unit mass of the density, alternating-series form",
          "sum (-1)^k / (1+2k)", _leibniz, accept_tol=1e-9),
        E("lemma-32G", Target.IDENTITY, S, "splitting k/(1+2k)^3 into beta(2) and beta(3)",
          "sum (-1)^k k / (1+2k)^3 = (32 G - pi^3)/64", _lemma, accept_tol=1e-9,
          constant=lambda: (32.0 * reference_constants().catalan - _PI ** 3) / 64.0),
        E("phi-sum-pi2-16", Target.IDENTITY, S, "unit mass of the convolution density with sum 1/(1+2k)^2 = pi^2/8",
          "sum_k Phi(-1, 1, k + 3/2)/(1+2k) = pi^2/16", _phi_sum_entry, accept_tol=1e-8,
          constant=lambda: _PI ** 2 / 16.0),
        E("log-series", Target.IDENTITY, S, "derivative of the moment function at 0 against E log X",
          "sum (-1)^k log(1+2k)/(1+2k) = (pi/4)[-gamma - log(4 pi^3) + 4 log Gamma(1/4)]", _log_series,
          accept_tol=1e-9,
          constant=lambda: _PI / 4.0 * (-reference_constants().euler_gamma - math.log(4.0 * _PI ** 3)
                                        + 4.0 * log_gamma(0.25))),
        E("euler-gd-series", Target.IDENTITY, S, "unit mass of the truncated law via the sech power series",
          "sum E_2k (pi/2)^2k / ((2k)! (1+2k)) = (2/pi) gd(pi/2)", _euler_gd_series, accept_tol=1e-9,
          constant=lambda: 2.0 / _PI * _gd_half_pi()),
        E("double-sum-gd", Target.IDENTITY, DS, "Euler numbers as alternating exponential integrals",
          "sum_k (-1)^k sum_j (-1)^j / ((1+2k)(1+2j)^(2k+1)) = (1/2) gd(pi/2)", _double_sum_gd,
          accept_tol=1e-7, constant=lambda: 0.5 * _gd_half_pi()),
    ]
    return tuple(sorted(entries, key=lambda e: e.id))


_CATALOG: Optional[tuple[RepresentationEntry, ...]] = None


def catalog() -> list[RepresentationEntry]:
    """All entries, sorted by id."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    return list(_CATALOG)


def catalog_ids() -> list[str]:
    return [e.id for e in catalog()]


def get_entry(entry_id: str) -> RepresentationEntry:
    for e in catalog():
        if e.id == entry_id:
            return e
    raise UnknownEntryError(entry_id)


def evaluate(entry_id: str, cfg: Optional[CatalogConfig] = None) -> EvalResult:
    """Evaluate one entry; numerical failures come back as ``converged=False``."""
    entry = get_entry(entry_id)
    return _safe(entry, cfg or CatalogConfig())


def _safe(entry: RepresentationEntry, cfg: CatalogConfig) -> EvalResult:
    try:
        res = entry.evaluate(cfg)
    except (ArithmeticError, ValueError) as exc:
        return EvalResult(math.nan, math.inf, 0, False, f"{type(exc).__name__}: {exc}")
    if not math.isfinite(res.value):
        return replace(res, converged=False)
    return res


@dataclass(frozen=True)
class TimedResult:
    entry: RepresentationEntry
    result: EvalResult
    elapsed_ms: float


def _timed(entry: RepresentationEntry, cfg: CatalogConfig) -> TimedResult:
    t0 = time.perf_counter()
    res = _safe(entry, cfg)
    return TimedResult(entry, res, 1e3 * (time.perf_counter() - t0))


def evaluate_all(
    cfg: Optional[CatalogConfig] = None, ids: Optional[Iterable[str]] = None, workers: int = 1
) -> dict[str, TimedResult]:
    """Evaluate many entries (all by default); the mapping is ordered by id.

    ``workers > 1`` evaluates on a thread pool; each entry is a pure
    function of ``cfg``, so the results match the sequential run.
    """
    cfg = cfg or CatalogConfig()
    entries = catalog() if ids is None else [get_entry(i) for i in ids]
    entries = sorted({e.id: e for e in entries}.values(), key=lambda e: e.id)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            timed = list(pool.map(lambda e: _timed(e, cfg), entries))
    else:
        timed = [_timed(e, cfg) for e in entries]
    return {t.entry.id: t for t in timed}


# ---------------------------------------------------------------------------
# Jensen bounds
# ---------------------------------------------------------------------------

class DegenerateBoundError(ValueError):
    """Raised for a = 1, where Jensen's inequality is an equality."""


@dataclass(frozen=True)
class JensenBound:
    """mu compared with E[X^a]^(1/a); ``kind`` says which side of mu (and G) it sits on."""

    a: float
    mean_bound: float
    catalan_bound: float
    kind: str  # "upper" or "lower"


def jensen_bounds(a: float, method: str = "quadrature") -> JensenBound:
    """Bound on the mean mu = 8G/pi^2 (and on G) from the a-th raw moment, a > -1.

    Jensen: E[X^a] >= mu^a for a < 0 or a > 1 and <= for 0 < a < 1. Taking
    the 1/a-th power keeps the direction for a > 0 and flips it for a < 0,
    so E[X^a]^(1/a) is an upper bound on mu only for a > 1 and a lower bound
    for every a < 1. At a = 0 the limit exp(E log X) (geometric mean) is
    used, again a lower bound.
    """
    a = float(a)
    if not a > -1.0:
        raise ValueError("moments exist only for a > -1")
    if a == 1.0:
        raise DegenerateBoundError("a = 1 gives the mean itself (equality)")
    if a == 0.0:
        root = math.exp(STANDARD.mean_log())
    else:
        root = STANDARD.raw_moment(a, method) ** (1.0 / a)
    return JensenBound(a, root, _PI2_8 * root, "upper" if a > 1.0 else "lower")
