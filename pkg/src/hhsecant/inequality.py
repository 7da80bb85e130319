"""Inequality indices of the standard half hyperbolic secant law.

Every index has a closed form (fed by the reference constants) and at least
one reference-free quadrature route; agreement between them is the check.
The mean used by quadrature routes is itself computed by quadrature,
``mu = int_0^inf (1 - F)``, so those routes never see Catalan's constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .distribution import STANDARD
from .quadrature import ConvergenceError, QuadratureConfig, integrate_finite, integrate_semi_infinite
from .special_functions import inverse_tangent_integral, log_gamma, reference_constants, sech

__all__ = [
    "LorenzPoint",
    "GiniMethod",
    "PietraMethod",
    "TheilMethod",
    "lorenz",
    "lorenz_curve",
    "gini",
    "gini_area",
    "gini_bounds",
    "pietra",
    "pietra_argmax",
    "pietra_argmax_search",
    "theil",
    "log_sech_integral",
    "quadrature_mean",
]

_HALF_PI = 0.5 * math.pi
_CFG = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=4000)


def _value(res, what: str) -> float:
    if not res.converged:
        raise ConvergenceError(f"{what}: quadrature did not converge ({res.note or 'budget'})")
    return res.value


@dataclass(frozen=True)
class LorenzPoint:
    p: float
    L: float


class GiniMethod(str, Enum):
    CLOSED = "closed"
    QUANTILE_INTEGRAL = "quantile_integral"
    CDF_SURVIVAL = "cdf_survival"
    SURVIVAL_SQ = "survival_sq"
    ONE_MINUS_F_SQ = "one_minus_F_sq"
    XFF = "xfF"


class PietraMethod(str, Enum):
    CLOSED = "closed"
    SURVIVAL_INTEGRAL = "survival_integral"
    LORENZ_GAP = "lorenz_gap"


class TheilMethod(str, Enum):
    CLOSED = "closed"
    MEAN_LOG = "mean_log"
    QUADRATURE = "quadrature"


# ---------------------------------------------------------------------------
# Reference-free building blocks
# ---------------------------------------------------------------------------

def _sf(x):
    return STANDARD.sf(x)


@lru_cache(maxsize=None)
def quadrature_mean() -> float:
    """The mean as the integral of the survival function (no reference constants)."""
    return _value(integrate_semi_infinite(_sf, 0.0, _CFG), "mean")


def _quantile_mass(p: float) -> float:
    """int_0^p F^-1(t) dt, using the survival side for the upper half."""
    if p <= 0.5:
        res = integrate_finite(lambda t: STANDARD.quantile(t, "asinh"), 0.0, p, _CFG)
        return _value(res, "quantile mass")
    upper = integrate_finite(STANDARD.isf, 0.0, 1.0 - p, _CFG)
    return quadrature_mean() - _value(upper, "quantile mass")


# ---------------------------------------------------------------------------
# Lorenz curve
# ---------------------------------------------------------------------------

def _log_z(p: float) -> float:
    # log tan(pi (p + 1) / 4) = (pi/2) F^-1(p), taken from the accurate side
    q = STANDARD.quantile(p, "asinh") if p <= 0.5 else STANDARD.isf(1.0 - p)
    return _HALF_PI * float(q)


def lorenz(p: float, method: str = "closed") -> float:
    """Cumulative share of the mean held by the lowest ``p`` fraction.

    ``closed`` evaluates (1/mu)[(1+p) F^-1(p) - (8/pi^2) Ti2(z)] + 1 with
    z = tan(pi (p+1)/4) >= 1. Ti2 is continued through
    Ti2(z) = (pi/2) log z + Ti2(1/z); substituting F^-1(p) = (2/pi) log z
    cancels the growing logarithms, leaving
    1 - (1/mu)[(1-p)(2/pi) log z + (8/pi^2) Ti2(1/z)], which stays accurate up to p = 1.
    ``quadrature`` integrates the quantile function directly.
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("lorenz requires 0 <= p <= 1")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    if method == "closed":
        mu = 8.0 * reference_constants().catalan / math.pi ** 2
        log_z = _log_z(p)
        inv_z = math.exp(-log_z)
        gap = (1.0 - p) * log_z / _HALF_PI + 8.0 / math.pi ** 2 * inverse_tangent_integral(inv_z)
        return min(max(1.0 - gap / mu, 0.0), p)
    if method == "quadrature":
        return _quantile_mass(p) / quadrature_mean()
    raise ValueError(f"unknown lorenz method {method!r}")


def lorenz_curve(n: int = 101, method: str = "closed") -> list[LorenzPoint]:
    """Lorenz curve sampled on ``n`` equally spaced points of [0, 1]."""
    if n < 2:
        raise ValueError("need at least two grid points")
    return [LorenzPoint(float(p), lorenz(float(p), method)) for p in np.linspace(0.0, 1.0, n)]


# ---------------------------------------------------------------------------
# Gini index
# ---------------------------------------------------------------------------

def _gini_quantile_integral() -> float:
    lower = integrate_finite(lambda t: t * STANDARD.quantile(t, "asinh"), 0.0, 0.5, _CFG)
    upper = integrate_finite(lambda q: (1.0 - q) * STANDARD.isf(q), 0.0, 0.5, _CFG)
    m = _value(lower, "gini") + _value(upper, "gini")
    return 2.0 * m / quadrature_mean() - 1.0


def _semi(f, what: str) -> float:
    return _value(integrate_semi_infinite(f, 0.0, _CFG), what)


def gini(method: str = "closed") -> float:
    """Gini index by one of six formulas (see :class:`GiniMethod`).

    ``closed`` is 7 zeta(3) / (2 pi G) - 1 from the reference constants; the
    other five are reference-free quadratures over the quantile function,
    the cdf/survival pair, or the density.
    """
    method = GiniMethod(method)
    if method is GiniMethod.CLOSED:
        c = reference_constants()
        return 7.0 * c.zeta3 / (2.0 * math.pi * c.catalan) - 1.0
    if method is GiniMethod.QUANTILE_INTEGRAL:
        return _gini_quantile_integral()
    mu = quadrature_mean()
    if method is GiniMethod.CDF_SURVIVAL:
        return _semi(lambda x: (1.0 - _sf(x)) * _sf(x), "gini") / mu
    if method is GiniMethod.SURVIVAL_SQ:
        return 1.0 - _semi(lambda x: _sf(x) ** 2, "gini") / mu
    if method is GiniMethod.ONE_MINUS_F_SQ:
        # 1 - F^2 = S (2 - S) without cancellation
        return _semi(lambda x: _sf(x) * (2.0 - _sf(x)), "gini") / mu - 1.0
    # XFF
    integrand = lambda x: x * sech(_HALF_PI * np.asarray(x)) * (1.0 - _sf(x))  # noqa: E731
    return 2.0 * _semi(integrand, "gini") / mu - 1.0


def gini_area() -> float:
    """Twice the area between the diagonal and the (closed-form) Lorenz curve."""
    f = np.vectorize(lambda p: p - lorenz(float(p)))
    return 2.0 * _value(integrate_finite(f, 0.0, 1.0, QuadratureConfig(abs_tol=1e-11)), "gini area")


def gini_bounds() -> tuple[float, float, float, float]:
    """The chain 7 zeta(3)/(4 pi) < G < 7 zeta(3)/(2 pi) < pi^2/8 as numbers.

    Returns (lower, G, upper, pi^2/8); the first inequality is 0 < Gini < 1.
    """
    c = reference_constants()
    return (7.0 * c.zeta3 / (4.0 * math.pi), c.catalan, 7.0 * c.zeta3 / (2.0 * math.pi), math.pi ** 2 / 8.0)


# ---------------------------------------------------------------------------
# Pietra index
# ---------------------------------------------------------------------------

def pietra_argmax() -> float:
    """p* = F(mu) = (4/pi) arctan(exp(4G/pi)) - 1, where the Lorenz gap peaks."""
    g = reference_constants().catalan
    return 4.0 / math.pi * math.atan(math.exp(4.0 * g / math.pi)) - 1.0


def pietra(method: str = "closed") -> float:
    """Pietra index, the maximal vertical gap p - L(p).

    ``closed``: Ti2(exp(4G/pi)) / G - 2 (Ti2 continued past 1);
    ``survival_integral``: (1/mu) int_mu^inf (1 - F) with a quadrature mean;
    ``lorenz_gap``: p* - L(p*) with the closed-form curve.
    """
    method = PietraMethod(method)
    if method is PietraMethod.CLOSED:
        g = reference_constants().catalan
        return inverse_tangent_integral(math.exp(4.0 * g / math.pi)) / g - 2.0
    if method is PietraMethod.SURVIVAL_INTEGRAL:
        mu = quadrature_mean()
        return _value(integrate_semi_infinite(_sf, mu, _CFG), "pietra") / mu
    p = pietra_argmax()
    return p - lorenz(p)


def pietra_argmax_search(n_grid: int = 1001, tol: float = 1e-10) -> tuple[float, float]:
    """Locate max_p (p - L(p)) by a grid scan then golden-section refinement.

    Independent of the closed-form argmax; returns (p, gap).
    """
    gap = lambda p: p - lorenz(p)  # noqa: E731
    grid = np.linspace(0.0, 1.0, n_grid)
    vals = [gap(float(p)) for p in grid]
    i = int(np.argmax(vals))
    a, b = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, n_grid - 1)])
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - inv_phi * (b - a), a + inv_phi * (b - a)
    fc, fd = gap(c), gap(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = gap(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = gap(d)
    p = 0.5 * (a + b)
    return p, gap(p)


# ---------------------------------------------------------------------------
# Theil index
# ---------------------------------------------------------------------------

def theil(method: str = "closed") -> float:
    """Theil index T0 = log(mu) - E[log X].

    ``closed``: log G + 4 log(Gamma(1/4) / pi);
    ``mean_log``: the closed E[log X] plus log of the closed mean;
    ``quadrature``: direct quadrature of log x sech(pi x / 2) and a quadrature mean.
    """
    method = TheilMethod(method)
    if method is TheilMethod.CLOSED:
        g = reference_constants().catalan
        return math.log(g) + 4.0 * (log_gamma(0.25) - math.log(math.pi))
    if method is TheilMethod.MEAN_LOG:
        return math.log(STANDARD.mean()) - STANDARD.mean_log()
    f = lambda x: np.log(np.maximum(x, 1e-300)) * sech(_HALF_PI * np.asarray(x))  # noqa: E731
    e_log = _value(integrate_semi_infinite(f, 0.0, _CFG), "theil")
    return math.log(quadrature_mean()) - e_log


def log_sech_integral() -> tuple[float, float]:
    """int_0^inf log(y) sech(y) dy by quadrature and by pi log(sqrt(2 pi) Gamma(3/4) / Gamma(1/4)).

    Returns (quadrature, closed).
    """
    f = lambda y: np.log(np.maximum(y, 1e-300)) * sech(np.asarray(y))  # noqa: E731
    quad = _value(integrate_semi_infinite(f, 0.0, _CFG), "log sech integral")
    closed = math.pi * (0.5 * math.log(2.0 * math.pi) + log_gamma(0.75) - log_gamma(0.25))
    return quad, closed
