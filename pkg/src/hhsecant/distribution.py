"""The half hyperbolic secant law and its relatives.

Standard density on [0, inf):  f(x) = sech(pi x / 2),  cdf  F(x) = (2/pi) gd(pi x / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .quadrature import QuadratureConfig, cvz_sum, integrate_finite, integrate_semi_infinite
from .special_functions import (
    AccuracyBudget,
    ConvergenceError,
    dirichlet_beta,
    euler_number,
    gudermannian,
    hurwitz_zeta,
    inverse_gudermannian,
    lerch_phi,
    log_gamma,
    reference_constants,
    sech,
)

__all__ = [
    "HhsDistribution",
    "STANDARD",
    "TransformKind",
    "TRANSFORM_SUPPORT",
    "transformed_pdf",
    "convolution_pdf",
    "TruncatedHhs",
]

_HALF_PI = 0.5 * math.pi
_TIGHT = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=4000)


def _check(res, what):
    if not res.converged:
        raise ConvergenceError(f"{what}: quadrature did not converge ({res.note or 'budget'})")
    return res.value


@dataclass(frozen=True)
class HhsDistribution:
    """Half hyperbolic secant law with location ``tau`` and scale ``sigma``.

    Density ``(1/sigma) sech(pi (x - tau) / (2 sigma))`` on ``[tau, inf)``.
    All pointwise methods accept scalars or numpy arrays.
    """

    tau: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    @property
    def is_standard(self) -> bool:
        return self.tau == 0.0 and self.sigma == 1.0

    def _u(self, x):
        return (np.asarray(x, dtype=float) - self.tau) / self.sigma

    def pdf(self, x):
        u = self._u(x)
        return np.where(u >= 0, sech(_HALF_PI * u) / self.sigma, 0.0)[()]

    def cdf(self, x):
        u = np.maximum(self._u(x), 0.0)
        return np.clip(gudermannian(_HALF_PI * u) / _HALF_PI, 0.0, 1.0)[()]

    def cdf_exp(self, x):
        """The cdf in its second closed form, (4/pi) arctan(exp(pi x/2)) - 1."""
        u = np.maximum(self._u(x), 0.0)
        with np.errstate(over="ignore"):
            v = 4.0 / math.pi * np.arctan(np.exp(_HALF_PI * u)) - 1.0
        return np.clip(v, 0.0, 1.0)[()]

    def sf(self, x):
        """Survival 1 - F(x) = (4/pi) arctan(exp(-pi x/2)), free of cancellation."""
        u = np.maximum(self._u(x), 0.0)
        return (4.0 / math.pi * np.arctan(np.exp(-_HALF_PI * u)))[()]

    def quantile(self, p, form: str = "log"):
        """Inverse cdf. ``form`` selects (2/pi) log tan(pi(p+1)/4) or (2/pi) asinh tan(pi p/2)."""
        p = np.asarray(p, dtype=float)
        if np.any((p < 0) | (p > 1)) or np.any(np.isnan(p)):
            raise ValueError("quantile requires 0 <= p <= 1")
        with np.errstate(divide="ignore"):
            if form == "log":
                q = 2.0 / math.pi * np.log(np.tan(0.25 * math.pi * (p + 1.0)))
            elif form == "asinh":
                q = 2.0 / math.pi * np.arcsinh(np.tan(_HALF_PI * p))
            else:
                raise ValueError(f"unknown quantile form {form!r}")
        q = np.where(p == 1.0, np.inf, np.maximum(q, 0.0))
        return (self.tau + self.sigma * q)[()]

    def isf(self, q):
        """Inverse survival function, quantile(1 - q), accurate as q -> 0."""
        q = np.asarray(q, dtype=float)
        if np.any((q < 0) | (q > 1)) or np.any(np.isnan(q)):
            raise ValueError("isf requires 0 <= q <= 1")
        with np.errstate(divide="ignore"):
            v = -2.0 / math.pi * np.log(np.tan(0.25 * math.pi * q))
        v = np.where(q == 0.0, np.inf, np.maximum(v, 0.0))
        return (self.tau + self.sigma * v)[()]

    def mean(self) -> float:
        g = reference_constants().catalan
        return self.tau + self.sigma * 8.0 * g / math.pi ** 2

    def variance(self) -> float:
        g = reference_constants().catalan
        return self.sigma ** 2 * (1.0 - 64.0 * g * g / math.pi ** 4)

    def raw_moment(self, a: float, method: str = "hurwitz_closed") -> float:
        """E[X^a] for a > -1 (location must be zero).

        ``hurwitz_closed`` uses Gamma(1+a)/(pi (2 pi)^a) [zeta(1+a, 1/4) - zeta(1+a, 3/4)]
        for a >= 1; below that the two Hurwitz sums cancel badly (and diverge
        separately for a <= 0), so the same quantity is taken as
        2 Gamma(1+a) (2/pi)^(a+1) beta(1+a).
        ``quadrature`` integrates x^a f(x); ``quantile_quadrature`` integrates F^-1(p)^a.
        """
        a = float(a)
        if not a > -1:
            raise ValueError("raw moments exist only for a > -1")
        if self.tau != 0.0:
            raise ValueError("raw_moment is defined for tau = 0")
        return self.sigma ** a * _standard_moment(a, method)

    def mgf(self, t: float) -> float:
        """E[exp(tX)] = exp(tau t) (2/pi) Phi(-1, 1, 1/2 - sigma t/pi), t < pi/(2 sigma)."""
        t = float(t)
        if not self.sigma * t < _HALF_PI:
            raise ValueError("mgf exists only for t < pi / (2 sigma)")
        m = 2.0 / math.pi * lerch_phi(-1.0, 1.0, 0.5 - self.sigma * t / math.pi, AccuracyBudget(1e-15))
        return math.exp(self.tau * t) * m

    def mean_log(self) -> float:
        """E[log X] = log(8 pi^2) - 4 log Gamma(1/4) + log sigma (tau = 0)."""
        if self.tau != 0.0:
            raise ValueError("mean_log is defined for tau = 0")
        return math.log(8.0 * math.pi ** 2) - 4.0 * log_gamma(0.25) + math.log(self.sigma)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Inverse-transform draws; the stream is owned by the caller."""
        if n < 0:
            raise ValueError("n must be >= 0")
        return np.asarray(self.quantile(rng.random(n)), dtype=float).reshape(n)


STANDARD = HhsDistribution()


def _standard_moment(a: float, method: str) -> float:
    if method == "hurwitz_closed":
        if a == 0.0:
            return 1.0
        if a >= 1.0:
            diff = hurwitz_zeta(1.0 + a, 0.25) - hurwitz_zeta(1.0 + a, 0.75)
            return math.exp(log_gamma(1.0 + a) - math.log(math.pi) - a * math.log(2 * math.pi)) * diff
        beta = dirichlet_beta(1.0 + a, AccuracyBudget(1e-15))
        return 2.0 * math.exp(log_gamma(1.0 + a) + (a + 1.0) * math.log(2.0 / math.pi)) * beta
    if method == "quadrature":
        res = integrate_semi_infinite(lambda x: x ** a * sech(_HALF_PI * x), 0.0, _TIGHT)
        return _check(res, f"raw_moment({a}) quadrature")
    if method == "quantile_quadrature":
        lo = integrate_finite(lambda p: STANDARD.quantile(p, "asinh") ** a, 0.0, 0.5, _TIGHT)
        hi = integrate_finite(lambda q: STANDARD.isf(q) ** a, 0.0, 0.5, _TIGHT)
        return _check(lo, "quantile moment") + _check(hi, "quantile moment")
    raise ValueError(f"unknown moment method {method!r}")


# ---------------------------------------------------------------------------
# Monotone transforms
# ---------------------------------------------------------------------------

class TransformKind(str, Enum):
    NEG_LOG = "neg_log"        # X = -log Y
    ODDS = "odds"              # X = Y / (1 - Y)
    RECIPROCAL = "reciprocal"  # X = 1 / Y
    SOFTPLUS = "softplus"      # X = log(e^Y + 1)


TRANSFORM_SUPPORT = {
    TransformKind.NEG_LOG: (0.0, 1.0),
    TransformKind.ODDS: (0.0, 1.0),
    TransformKind.RECIPROCAL: (0.0, math.inf),
    TransformKind.SOFTPLUS: (-math.inf, math.inf),
}


def transformed_pdf(kind, y):
    """Density of Y for the monotone transform ``kind`` of a standard variate.

    Values outside the support are 0; the odds density at y = 1 and the
    reciprocal density at y = 0 take their limit 0.
    """
    kind = TransformKind(kind)
    y = np.asarray(y, dtype=float)
    lo, hi = TRANSFORM_SUPPORT[kind]
    inside = (y > lo) & (y < hi)
    # park out-of-support points somewhere harmless before evaluating
    ys = np.where(inside, y, 0.5)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if kind is TransformKind.NEG_LOG:
            v = sech(_HALF_PI * np.log(ys)) / ys
            edge = np.where(y == 1.0, 1.0, 0.0)
        elif kind is TransformKind.ODDS:
            om = 1.0 - ys
            v = sech(_HALF_PI * ys / om) / (om * om)
            edge = np.where(y == 0.0, 1.0, 0.0)
        elif kind is TransformKind.RECIPROCAL:
            v = sech(_HALF_PI / ys) / (ys * ys)
            edge = np.zeros_like(y)
        else:
            sp = np.logaddexp(0.0, ys)
            v = np.exp(ys - sp) * sech(_HALF_PI * sp)
            edge = np.zeros_like(y)
    return np.where(inside, v, edge)[()]


# ---------------------------------------------------------------------------
# Sum of two independent copies
# ---------------------------------------------------------------------------

def convolution_pdf(z):
    """Density of X1 + X2:  (4/pi) csch(pi z/2) log cosh(pi z/2),  z > 0.

    The limit at z -> 0+ is 0 (the density behaves like z there).
    """
    z = np.asarray(z, dtype=float)
    u = _HALF_PI * np.maximum(z, 0.0)
    us = np.where(u > 0, u, 1.0)
    e = np.exp(-us)
    csch = 2.0 * e / -np.expm1(-2.0 * us)
    with np.errstate(over="ignore"):
        small = np.log1p(2.0 * np.sinh(0.5 * np.minimum(us, 1.0)) ** 2)
    large = us + np.log1p(e * e) - math.log(2.0)
    logcosh = np.where(us < 1.0, small, large)
    v = 4.0 / math.pi * csch * logcosh
    return np.where(u > 0, v, 0.0)[()]


# ---------------------------------------------------------------------------
# Truncation to [0, 1]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedHhs:
    """The standard law conditioned on [0, 1]."""

    @property
    def gd_half_pi(self) -> float:
        return float(gudermannian(_HALF_PI))

    @property
    def normalizer(self) -> float:
        return math.pi / (2.0 * self.gd_half_pi)

    def _check_support(self, y):
        y = np.asarray(y, dtype=float)
        if np.any((y < 0) | (y > 1)) or np.any(np.isnan(y)):
            raise ValueError("truncated law lives on [0, 1]")
        return y

    def pdf(self, y):
        y = self._check_support(y)
        return (self.normalizer * sech(_HALF_PI * y))[()]

    def cdf(self, y):
        y = self._check_support(y)
        return (gudermannian(_HALF_PI * y) / self.gd_half_pi)[()]

    def quantile(self, p):
        p = self._check_support(p)
        return np.clip(2.0 / math.pi * inverse_gudermannian(p * self.gd_half_pi), 0.0, 1.0)[()]

    def mean(self, catalan: Optional[float] = None) -> float:
        """Closed form through Catalan's constant and Phi(-e^-pi, 2, 1/2)."""
        g = reference_constants().catalan if catalan is None else catalan
        return 4.0 / (math.pi * self.gd_half_pi) * (g - _truncation_correction())

    def mean_quadrature(self) -> float:
        res = integrate_finite(lambda y: y * self.pdf(y), 0.0, 1.0, _TIGHT)
        return _check(res, "truncated mean")

    def mean_euler_series(self) -> float:
        """(pi / (4 gd(pi/2))) sum_k E_2k (pi/2)^2k / ((1+k) (2k)!)."""
        return math.pi / (4.0 * self.gd_half_pi) * euler_weighted_sum(lambda k: 1.0 + k)


def _truncation_correction() -> float:
    # (pi/2) arctan(e^-pi/2) + (e^-pi/2 / 4) Phi(-e^-pi, 2, 1/2)
    e = math.exp(-_HALF_PI)
    return _HALF_PI * math.atan(e) + 0.25 * e * lerch_phi(-math.exp(-math.pi), 2.0, 0.5, AccuracyBudget(1e-16))


def euler_weighted_sum(weight) -> float:
    """sum_k E_2k (pi/2)^2k / ((2k)! weight(k)) over the exact Euler numbers.

    The sech series is evaluated on its circle of convergence, so the terms
    only decay like 1/weight(k); they alternate in sign and are summed with
    the CVZ accelerator. The index is capped by the exact Euler-number guard.
    """
    n = 32  # E_64 is the last exact value kept
    mags = []
    for k in range(n + 1):
        e2k = euler_number(2 * k)
        mag = abs(e2k) * _HALF_PI ** (2 * k) / math.factorial(2 * k)
        mags.append(mag / weight(k))
    return cvz_sum(mags)
