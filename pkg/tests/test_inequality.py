import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhsecant.inequality import (
    GiniMethod,
    PietraMethod,
    TheilMethod,
    gini,
    gini_area,
    gini_bounds,
    log_sech_integral,
    lorenz,
    lorenz_curve,
    pietra,
    pietra_argmax,
    pietra_argmax_search,
    quadrature_mean,
    theil,
)
from hhsecant.quadrature import QuadratureConfig, integrate_double

G = float(mpmath.catalan)
ZETA3 = float(mpmath.zeta(3))
MU = 8 * G / math.pi ** 2


def _lorenz_oracle(p: float) -> float:
    """(1/mu) int_0^p F^-1(t) dt in 30-digit arithmetic."""
    q = lambda t: 2 / mpmath.pi * mpmath.log(mpmath.tan(mpmath.pi * (t + 1) / 4))  # noqa: E731
    return float(mpmath.quad(q, [0, p]) / (8 * mpmath.catalan / mpmath.pi ** 2))


# --- Lorenz -----------------------------------------------------------------------

def test_lorenz_examples():
    assert lorenz(0.0) == 0.0
    assert lorenz(1.0) == 1.0
    assert abs(lorenz(0.5, "closed") - lorenz(0.5, "quadrature")) < 1e-9
    with pytest.raises(ValueError):
        lorenz(1.5)
    with pytest.raises(ValueError):
        lorenz(0.5, "nosuch")


@pytest.mark.parametrize("p", [0.01, 0.25, 0.5, 0.9, 0.999, 1 - 1e-9])
def test_lorenz_against_mpmath(p):
    assert lorenz(p) == pytest.approx(_lorenz_oracle(p), abs=1e-13)


def test_lorenz_convexity_and_below_diagonal():
    pts = lorenz_curve(1000)
    p = np.array([pt.p for pt in pts])
    L = np.array([pt.L for pt in pts])
    assert np.min(L[2:] - 2 * L[1:-1] + L[:-2]) >= -1e-9
    assert np.all(L <= p + 1e-15)
    assert np.all(p[1:-1] - L[1:-1] > 1e-12)
    assert L[0] == 0.0 and L[-1] == 1.0


@settings(max_examples=60, deadline=None)
@given(a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0), w=st.floats(0.0, 1.0))
def test_lorenz_convexity_property(a, b, w):
    mid = w * a + (1 - w) * b
    assert lorenz(mid) <= w * lorenz(a) + (1 - w) * lorenz(b) + 1e-12


@settings(max_examples=40, deadline=None)
@given(p=st.floats(0.001, 0.999))
def test_lorenz_closed_vs_quadrature_property(p):
    assert abs(lorenz(p, "closed") - lorenz(p, "quadrature")) < 1e-9


def test_lorenz_curve_validation():
    with pytest.raises(ValueError):
        lorenz_curve(1)


# --- Gini --------------------------------------------------------------------------

def test_gini_closed_value():
    assert gini("closed") == pytest.approx(7 * ZETA3 / (2 * math.pi * G) - 1, abs=1e-15)
    assert gini("closed") == pytest.approx(0.46206, abs=1e-5)


def test_gini_six_methods_agree():
    vals = {m: gini(m) for m in GiniMethod}
    for a, b in itertools.combinations(vals.values(), 2):
        assert abs(a - b) < 1e-9
    assert 0 < vals[GiniMethod.CLOSED] < 1


def test_gini_area_matches_closed():
    assert abs(gini_area() - gini("closed")) < 1e-8


def test_gini_bounds():
    lower, g, upper, pi2_8 = gini_bounds()
    assert lower < g < upper
    assert g < pi2_8
    # 0 < gini < 1 is exactly lower < G < upper
    assert lower == pytest.approx(7 * ZETA3 / (4 * math.pi), abs=1e-15)


def test_double_integral_representation():
    f = lambda p, t: np.log(np.tan(0.25 * math.pi * (t + 1.0)))  # noqa: E731
    r = integrate_double(f, (0.0, 1.0), lambda p: (0.0, p), QuadratureConfig(1e-11))
    g = math.pi / 4 * r.value + 7 * ZETA3 / (4 * math.pi)
    assert abs(g - G) < 1e-8


# --- Pietra ------------------------------------------------------------------------

def test_pietra_argmax_closed():
    assert pietra_argmax() == pytest.approx(4 / math.pi * math.atan(math.exp(4 * G / math.pi)) - 1, abs=1e-15)


def test_pietra_argmax_search():
    p, gap = pietra_argmax_search()
    assert abs(p - pietra_argmax()) < 1e-6
    assert gap == pytest.approx(pietra(), abs=1e-12)


def test_pietra_three_ways():
    vals = [pietra(m) for m in PietraMethod]
    for a, b in itertools.combinations(vals, 2):
        assert abs(a - b) < 1e-8


def test_pietra_against_mean_deviation():
    # Pietra = E|X - mu| / (2 mu)
    mu = mpmath.mpf(MU)
    mad = mpmath.quad(lambda x: abs(x - mu) * mpmath.sech(mpmath.pi * x / 2), [0, mu, mpmath.inf])
    assert pietra() == pytest.approx(float(mad / (2 * mu)), abs=1e-13)


def test_pietra_below_gini():
    assert pietra() <= gini() + 1e-12


# --- Theil --------------------------------------------------------------------------

def test_theil_three_paths():
    vals = [theil(m) for m in TheilMethod]
    for a, b in itertools.combinations(vals, 2):
        assert abs(a - b) < 1e-9
    assert vals[0] > 0


def test_theil_against_mpmath():
    elog = mpmath.quad(lambda x: mpmath.log(x) * mpmath.sech(mpmath.pi * x / 2), [0, 1, mpmath.inf])
    ref = mpmath.log(8 * mpmath.catalan / mpmath.pi ** 2) - elog
    assert theil() == pytest.approx(float(ref), abs=1e-13)


def test_log_sech_integral():
    quad, closed = log_sech_integral()
    assert quad == pytest.approx(closed, abs=1e-11)
    ref = mpmath.quad(lambda y: mpmath.log(y) * mpmath.sech(y), [0, 1, mpmath.inf])
    assert closed == pytest.approx(float(ref), abs=1e-13)


def test_quadrature_mean_is_reference_free():
    assert quadrature_mean() == pytest.approx(MU, abs=1e-12)
