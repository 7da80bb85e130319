import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from hhsecant.distribution import (
    STANDARD,
    TRANSFORM_SUPPORT,
    HhsDistribution,
    TransformKind,
    TruncatedHhs,
    convolution_pdf,
    transformed_pdf,
)
from hhsecant.quadrature import QuadratureConfig, integrate_finite, integrate_semi_infinite
from hhsecant.special_functions import euler_number

G = float(mpmath.catalan)
MU = 8 * G / math.pi ** 2
VAR = 1 - MU ** 2
TIGHT = QuadratureConfig(1e-12, max_subdivisions=4000)


def _mass(f, lo, hi):
    if math.isinf(lo) and math.isinf(hi):
        return integrate_semi_infinite(lambda x: f(-x), 0.0, TIGHT).value + integrate_semi_infinite(f, 0.0, TIGHT).value
    if math.isinf(hi):
        return integrate_semi_infinite(f, lo, TIGHT).value
    return integrate_finite(f, lo, hi, TIGHT).value


# --- pdf / cdf / quantile ---------------------------------------------------------

def test_pdf_examples():
    assert STANDARD.pdf(0.0) == 1.0
    assert STANDARD.pdf(-0.1) == 0.0
    assert _mass(STANDARD.pdf, 0.0, math.inf) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("tau,sigma", [(0.0, 1.0), (1.5, 0.3), (-2.0, 4.0)])
def test_location_scale_normalization(tau, sigma):
    d = HhsDistribution(tau, sigma)
    assert _mass(d.pdf, tau, math.inf) == pytest.approx(1.0, abs=1e-10)
    assert d.mean() == pytest.approx(tau + sigma * MU, abs=1e-14)
    assert d.variance() == pytest.approx(sigma ** 2 * VAR, abs=1e-14)


def test_invalid_scale():
    with pytest.raises(ValueError):
        HhsDistribution(0.0, 0.0)


def test_cdf_examples_and_forms():
    assert STANDARD.cdf(0.0) == 0.0
    assert STANDARD.cdf(1e3) == 1.0
    x = np.linspace(0, 12, 1001)
    assert np.max(np.abs(STANDARD.cdf(x) - STANDARD.cdf_exp(x))) < 1e-13
    assert np.max(np.abs(STANDARD.cdf(x) + STANDARD.sf(x) - 1)) < 1e-15


def test_cdf_against_scipy_quadrature():
    for x in (0.1, 0.7, 2.0, 5.0):
        ref, _ = integrate.quad(lambda t: 1 / math.cosh(math.pi * t / 2), 0, x, epsabs=1e-14)
        assert STANDARD.cdf(x) == pytest.approx(ref, abs=1e-13)


def test_cdf_monotone():
    x = np.linspace(-1, 30, 1000)
    assert np.all(np.diff(STANDARD.cdf(x)) >= 0)
    y = np.linspace(0, 1, 1000)
    assert np.all(np.diff(TruncatedHhs().cdf(y)) >= 0)


def test_quantile_examples():
    assert STANDARD.quantile(0.0) == 0.0
    assert math.isinf(STANDARD.quantile(1.0))
    p = np.arange(1, 10) / 10
    assert np.max(np.abs(STANDARD.cdf(STANDARD.quantile(p)) - p)) < 1e-12
    r = integrate_finite(lambda t: STANDARD.quantile(t, "asinh"), 0.0, 1.0, TIGHT)
    assert r.value == pytest.approx(MU, abs=1e-10)
    with pytest.raises(ValueError):
        STANDARD.quantile(1.2)
    with pytest.raises(ValueError):
        STANDARD.quantile(0.5, form="nosuch")


@settings(max_examples=200, deadline=None)
@given(p=st.floats(0.0, 0.999999))
def test_quantile_round_trip(p):
    for form in ("log", "asinh"):
        assert abs(STANDARD.cdf(STANDARD.quantile(p, form)) - p) < 1e-12


@settings(max_examples=100, deadline=None)
@given(q=st.floats(1e-300, 1.0))
def test_isf_round_trip(q):
    x = STANDARD.isf(q)
    assert abs(STANDARD.sf(x) - q) <= 1e-12 * max(q, 1e-3)


# --- moments ------------------------------------------------------------------------

def test_moment_examples():
    assert STANDARD.raw_moment(1) == pytest.approx(MU, abs=1e-13)
    assert STANDARD.raw_moment(1) == pytest.approx(0.742453, abs=1e-6)
    assert STANDARD.raw_moment(2) == pytest.approx(1.0, abs=1e-13)
    assert STANDARD.raw_moment(0) == 1.0
    assert STANDARD.variance() == pytest.approx(0.448763, abs=1e-6)
    assert STANDARD.variance() > 0 and G < math.pi ** 2 / 8
    mu = STANDARD.mean()
    assert (1 - mu) * (1 + mu) == pytest.approx(1 - mu * mu, abs=1e-16)
    with pytest.raises(ValueError):
        STANDARD.raw_moment(-1.0)
    with pytest.raises(ValueError):
        HhsDistribution(1.0).raw_moment(2)


@pytest.mark.parametrize("a", [0.5, 1, 2, 3, 4])
def test_moment_methods_agree(a):
    vals = [STANDARD.raw_moment(a, m) for m in ("hurwitz_closed", "quadrature", "quantile_quadrature")]
    assert max(vals) - min(vals) < 1e-9


@pytest.mark.parametrize("a", [-0.9, -0.5, -0.1, 0.25, 1.7, 5.5])
def test_moment_against_mpmath(a):
    # E X^a = 2 Gamma(1+a) (2/pi)^(a+1) beta(1+a); mpmath's beta via its Dirichlet L-series
    ref = 2 * mpmath.gamma(1 + a) * (2 / mpmath.pi) ** (a + 1) * mpmath.dirichlet(1 + a, [0, 1, 0, -1])
    assert STANDARD.raw_moment(a) == pytest.approx(float(ref), rel=1e-11)
    if a > -0.5:
        quad = mpmath.quad(lambda x: x ** a * mpmath.sech(mpmath.pi * x / 2), [0, 1, mpmath.inf])
        assert STANDARD.raw_moment(a) == pytest.approx(float(quad), rel=1e-9)


@pytest.mark.parametrize("r", range(1, 6))
def test_even_moments_are_euler_numbers(r):
    assert (-1) ** r * STANDARD.raw_moment(2 * r) / euler_number(2 * r) == pytest.approx(1.0, abs=1e-8)


def test_jensen_ordering():
    mu = STANDARD.mean()
    for a in (2, 3, 4):
        assert STANDARD.raw_moment(a) >= mu ** a
    for a in (0.25, 0.5, 0.75):
        assert STANDARD.raw_moment(a) <= mu ** a
    for a in (-0.5, -0.25):
        assert STANDARD.raw_moment(a) >= mu ** a


@settings(max_examples=40, deadline=None)
@given(a=st.floats(-0.95, 6.0))
def test_jensen_ordering_property(a):
    mu = STANDARD.mean()
    m = STANDARD.raw_moment(a)
    if 0 < a < 1:
        assert m <= mu ** a * (1 + 1e-12)
    else:
        assert m >= mu ** a * (1 - 1e-12)


# --- mgf, log-moment -------------------------------------------------------------------

def test_mgf_examples():
    assert STANDARD.mgf(0.0) == pytest.approx(1.0, abs=1e-14)
    h = 1e-5
    deriv = (STANDARD.mgf(h) - STANDARD.mgf(-h)) / (2 * h)
    assert deriv == pytest.approx(MU, abs=1e-6)
    mu = STANDARD.mean()
    for t in np.linspace(0, 1.5, 16):
        assert STANDARD.mgf(t) >= 1 + t * mu
    with pytest.raises(ValueError):
        STANDARD.mgf(math.pi / 2)


@pytest.mark.parametrize("t", [-3.0, -0.5, 0.7, 1.4])
def test_mgf_against_quadrature(t):
    ref = mpmath.quad(lambda x: mpmath.exp(t * x) * mpmath.sech(mpmath.pi * x / 2), [0, mpmath.inf])
    assert STANDARD.mgf(t) == pytest.approx(float(ref), rel=1e-10)


def test_mean_log():
    ref = float(mpmath.quad(lambda x: mpmath.log(x) * mpmath.sech(mpmath.pi * x / 2), [0, 1, mpmath.inf]))
    assert STANDARD.mean_log() == pytest.approx(ref, abs=1e-13)
    assert HhsDistribution(0, 2.0).mean_log() == pytest.approx(ref + math.log(2.0), abs=1e-13)


# --- sampling ---------------------------------------------------------------------------

def test_sample_examples():
    assert STANDARD.sample(np.random.default_rng(0), 0).shape == (0,)
    with pytest.raises(ValueError):
        STANDARD.sample(np.random.default_rng(0), -1)
    x = STANDARD.sample(np.random.default_rng(7), 10 ** 6)
    se = math.sqrt(VAR / len(x))
    assert abs(x.mean() - MU) < 4 * se


def test_sample_determinism():
    a = STANDARD.sample(np.random.default_rng(123), 1000)
    b = STANDARD.sample(np.random.default_rng(123), 1000)
    assert np.array_equal(a, b)


def test_sample_ks():
    n = 10 ** 5
    x = STANDARD.sample(np.random.default_rng(2024), n)
    d = stats.kstest(x, lambda t: STANDARD.cdf(t)).statistic
    assert d < 1.95 / math.sqrt(n)


# --- transforms --------------------------------------------------------------------------

@pytest.mark.parametrize("kind", list(TransformKind))
def test_transformed_normalization(kind):
    lo, hi = TRANSFORM_SUPPORT[kind]
    f = lambda y: transformed_pdf(kind, y)  # noqa: E731
    if kind is TransformKind.RECIPROCAL:
        mass = _mass(f, 0.0, 1.0) + _mass(f, 1.0, math.inf)
    else:
        mass = _mass(f, lo, hi)
    assert mass == pytest.approx(1.0, abs=1e-10)


def test_transformed_support_and_edges():
    for kind, (lo, hi) in TRANSFORM_SUPPORT.items():
        if math.isfinite(lo):
            assert transformed_pdf(kind, lo - 1.0) == 0.0
        if math.isfinite(hi):
            assert transformed_pdf(kind, hi + 1.0) == 0.0
    assert transformed_pdf("odds", 1.0) == 0.0
    assert transformed_pdf("reciprocal", 0.0) == 0.0


def test_transformed_means():
    # E[Y/(1-Y)] under the odds density is E X; its integrand is y/(1-y)^3 sech(pi y/(2(1-y)))
    odds = integrate_finite(lambda y: y / (1 - y) * transformed_pdf("odds", y), 0.0, 1.0, TIGHT).value
    assert odds == pytest.approx(MU, abs=1e-10)
    # E[1/Y] under the reciprocal density: y^-3 sech(pi/(2y))
    f = lambda y: transformed_pdf("reciprocal", y) / y  # noqa: E731
    assert _mass(f, 0.0, 1.0) + _mass(f, 1.0, math.inf) == pytest.approx(MU, abs=1e-10)


# --- convolution -------------------------------------------------------------------------

def test_convolution_moments():
    f = convolution_pdf
    assert _mass(f, 0.0, math.inf) == pytest.approx(1.0, abs=1e-9)
    assert _mass(lambda z: z * f(z), 0.0, math.inf) == pytest.approx(2 * MU, abs=1e-8)
    assert _mass(lambda z: z * z * f(z), 0.0, math.inf) == pytest.approx(2 * (1 + MU ** 2), abs=1e-8)


def test_convolution_limit_at_zero():
    assert convolution_pdf(0.0) == 0.0
    for z in (1e-3, 1e-5, 1e-8):
        # (4/pi) csch(u) log cosh(u) ~ (2/pi) u with u = pi z / 2
        assert convolution_pdf(z) == pytest.approx(z, rel=1e-5)


@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 4.0])
def test_convolution_matches_self_convolution(z):
    r = integrate_finite(lambda x: STANDARD.pdf(x) * STANDARD.pdf(z - x), 0.0, z, TIGHT)
    assert abs(r.value - convolution_pdf(z)) < 1e-8


def test_convolution_large_argument_stable():
    with np.errstate(all="ignore"):
        v = convolution_pdf(np.array([500.0, 5000.0]))
    assert np.all(np.isfinite(v))


# --- truncation ---------------------------------------------------------------------------

def test_truncated_law():
    t = TruncatedHhs()
    assert t.cdf(1.0) == pytest.approx(1.0, abs=1e-15)
    assert t.cdf(0.0) == 0.0
    assert integrate_finite(t.pdf, 0.0, 1.0, TIGHT).value == pytest.approx(1.0, abs=1e-12)
    p = np.linspace(0, 1, 101)
    assert np.max(np.abs(t.cdf(t.quantile(p)) - p)) < 1e-13
    assert t.mean() == pytest.approx(t.mean_quadrature(), abs=1e-10)
    assert t.mean_euler_series() == pytest.approx(t.mean(), abs=1e-10)
    with pytest.raises(ValueError):
        t.pdf(1.5)


def test_truncated_mean_against_mpmath():
    num = mpmath.quad(lambda y: y * mpmath.sech(mpmath.pi * y / 2), [0, 1])
    den = mpmath.quad(lambda y: mpmath.sech(mpmath.pi * y / 2), [0, 1])
    assert TruncatedHhs().mean() == pytest.approx(float(num / den), abs=1e-13)
