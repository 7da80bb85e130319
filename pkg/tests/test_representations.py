import math

import mpmath
import pytest

import hhsecant.distribution as dist_mod
import hhsecant.inequality as ineq_mod
import hhsecant.representations as rep_mod
import hhsecant.special_functions as sf_mod
from hhsecant.representations import (
    CatalogConfig,
    DegenerateBoundError,
    Kind,
    Target,
    UnknownEntryError,
    catalog,
    catalog_ids,
    evaluate,
    evaluate_all,
    get_entry,
    jensen_bounds,
    location_scale_verbatim,
    odds_trapezoid,
    pietra_fixed_point,
    pietra_map,
)

G = float(mpmath.catalan)
ZETA3 = float(mpmath.zeta(3))

ORACLE = {
    Target.CATALAN: G,
    Target.CATALAN_SQUARED: G * G,
    Target.ZETA3: ZETA3,
    Target.ZETA2: math.pi ** 2 / 6,
    Target.PI_QUARTER: math.pi / 4,
}


@pytest.fixture(scope="module")
def tight():
    return evaluate_all(CatalogConfig(abs_tol=1e-10))


@pytest.fixture(scope="module")
def loose():
    return evaluate_all(CatalogConfig(abs_tol=1e-6))


# --- catalog structure ------------------------------------------------------------

def test_catalog_shape():
    ids = catalog_ids()
    assert len(ids) >= 35
    assert ids == sorted(ids)
    assert len(set(ids)) == len(ids)
    for e in catalog():
        assert e.anchor and e.formula
        assert isinstance(e.kind, Kind)
        if e.target is Target.IDENTITY:
            assert e.constant is not None


def test_unknown_entry():
    with pytest.raises(UnknownEntryError):
        get_entry("nosuch")
    with pytest.raises(KeyError):
        evaluate("nosuch")


def test_config_validation():
    with pytest.raises(ValueError):
        CatalogConfig(abs_tol=-1.0)
    assert CatalogConfig().with_tol(1e-4).abs_tol == 1e-4


# --- worked examples -----------------------------------------------------------------

def test_examples():
    r = evaluate("arctan-integral", CatalogConfig(1e-10))
    assert r.converged and abs(r.value - G) < 1e-9
    r = evaluate("leibniz", CatalogConfig(1e-12))
    assert r.converged and abs(r.value - math.pi / 4) < 1e-12
    r = evaluate("zeta2-lerch", CatalogConfig(1e-8))
    assert r.converged and abs(r.value - math.pi ** 2 / 6) < 1e-7


# --- whole-catalog checks -------------------------------------------------------------

def _oracle(entry):
    if entry.target is Target.IDENTITY:
        return entry.constant()
    return ORACLE[entry.target]


def test_every_entry_converges_within_acceptance(tight):
    cfg = CatalogConfig(1e-10)
    for eid, t in tight.items():
        r = t.result
        assert r.converged, (eid, r.note)
        assert abs(r.value - _oracle(t.entry)) <= t.entry.acceptance(cfg), eid


def test_entry_reference_matches_oracle():
    for e in catalog():
        assert e.reference() == pytest.approx(_oracle(e), abs=1e-14), e.id


def test_error_estimates_are_honest(tight):
    """|value - closed form| <= 10 err_estimate (closed-form entries get an ulp-level floor)."""
    for eid, t in tight.items():
        r = t.result
        err = abs(r.value - _oracle(t.entry))
        assert err <= 10 * max(r.err_estimate, 4e-16 * abs(r.value)), (eid, err, r.err_estimate)


def test_tolerance_monotonicity(tight, loose):
    for eid in tight:
        a, b = loose[eid].result, tight[eid].result
        assert a.err_estimate >= b.err_estimate, eid
        assert abs(a.value - b.value) <= max(a.err_estimate, 1e-15), eid


def test_concurrent_matches_sequential(tight):
    par = evaluate_all(CatalogConfig(abs_tol=1e-10), workers=4)
    assert set(par) == set(tight)
    for eid in tight:
        assert par[eid].result == tight[eid].result, eid


def test_evaluate_all_subset():
    out = evaluate_all(CatalogConfig(1e-8), ids=["leibniz", "beta-series"])
    assert set(out) == {"leibniz", "beta-series"}


def test_reference_independence(monkeypatch):
    def forbidden():
        raise RuntimeError("reference constants read")

    for mod in (sf_mod, dist_mod, ineq_mod, rep_mod):
        if hasattr(mod, "reference_constants"):
            monkeypatch.setattr(mod, "reference_constants", forbidden)
    cfg = CatalogConfig(1e-8)
    for e in catalog():
        if e.uses_reference:
            continue
        assert e.compute(cfg).converged, e.id
    flagged = {e.id for e in catalog() if e.uses_reference}
    assert {"pietra-fixed-point", "catalan11", "catalan12", "appery-from-gini"} <= flagged


def test_valid_bounds_chain(tight):
    g = tight["beta-series"].result.value
    lower, upper = 7 * ZETA3 / (4 * math.pi), 7 * ZETA3 / (2 * math.pi)
    assert lower < g < upper
    assert g < math.pi ** 2 / 8


# --- individual entries ------------------------------------------------------------------

def test_convolution_m2_is_catalan_squared(tight):
    assert abs(tight["convolution-m2"].result.value - G * G) < 1e-8


def test_location_scale_defaults_and_identity():
    cfg = CatalogConfig(1e-10)
    assert cfg.tau == 1.0 and cfg.sigma == 2.0
    shifted = evaluate("location-scale", cfg)
    plain = evaluate("location-scale", CatalogConfig(1e-10, tau=0.0, sigma=1.0))
    assert abs(shifted.value - G) < 1e-8
    assert abs(plain.value - evaluate("mean-integral", cfg).value) < 1e-10
    assert "differs by" in shifted.note


@pytest.mark.parametrize("tau,sigma", [(1.0, 2.0), (0.5, 3.0), (2.0, 0.5)])
def test_location_scale_tau_subtracted_variant(tau, sigma):
    # subtracting tau instead of sigma*tau leaves G + (pi^2/8) tau (sigma - 1) / sigma^2
    r = location_scale_verbatim(tau, sigma, CatalogConfig(1e-10))
    expected = G + math.pi ** 2 / 8 * tau * (sigma - 1) / sigma ** 2
    assert r.value == pytest.approx(expected, abs=1e-8)


def test_location_scale_variant_invariant_only_at_unit_scale():
    assert location_scale_verbatim(3.0, 1.0).value == pytest.approx(G, abs=1e-8)


def test_pietra_map_identity():
    r = pietra_map(G)
    assert abs(r.value - G) < 1e-12


def test_pietra_fixed_point_never_wrong():
    r = pietra_fixed_point(0.9)
    if r.converged:
        assert abs(r.value - G) < 1e-8
    else:
        assert "non-isolated" in r.note


def test_pietra_map_is_identity_everywhere():
    # the map reproduces its argument, so no iteration can single out G
    for x in (0.5, 0.9, 1.2):
        assert pietra_map(x).value == pytest.approx(x, abs=1e-10)


def test_odds_trapezoid_scaling():
    errs = {n: G - odds_trapezoid(n).value for n in (100, 200, 400, 800)}
    for n in (200, 400):
        assert 3.4 <= errs[n] / errs[2 * n] <= 4.6
    for n in (100, 200, 400):
        est = odds_trapezoid(n).error_estimate
        assert est * errs[n] > 0
        assert 0.5 <= errs[n] / est <= 2.0


def test_odds_trapezoid_fixed_n():
    r = evaluate("odds-trapezoid", CatalogConfig(1e-10, trapezoid_n=400))
    assert r.work == 401  # n + 1 integrand values
    assert abs(r.value - G) < 1e-5


@pytest.mark.parametrize("r", [0.5, 2.0, 3.0])
def test_negbinom_general_r_reported(r):
    res = evaluate("negbinom-mixture", CatalogConfig(1e-8, negbinom_r=r))
    # experimental: either an honest value or an explicit non-convergence
    if res.converged:
        assert abs(res.value - G) < 1e-6
    else:
        assert res.note
    assert not get_entry("negbinom-mixture").gated(CatalogConfig(negbinom_r=r))
    assert get_entry("negbinom-mixture").gated(CatalogConfig(negbinom_r=1.0))


def test_geometric_equals_negbinom_r1():
    cfg = CatalogConfig(1e-9)
    assert evaluate("geometric-mixture", cfg).value == pytest.approx(evaluate("negbinom-mixture", cfg).value, abs=1e-8)


# --- Jensen bounds ---------------------------------------------------------------------

def _moment_oracle(a):
    return 2 * mpmath.gamma(1 + a) * (2 / mpmath.pi) ** (a + 1) * mpmath.dirichlet(1 + a, [0, 1, 0, -1])


def test_jensen_examples():
    b = jensen_bounds(2.0)
    assert b.kind == "upper"
    assert b.catalan_bound == pytest.approx(math.pi ** 2 / 8, abs=1e-10)
    b = jensen_bounds(0.5)
    assert b.kind == "lower" and b.catalan_bound < G


@pytest.mark.parametrize("a", [0.25, 0.5, 2.0, 3.0, -0.5, 0.0])
def test_jensen_bounds_bracket(a):
    b = jensen_bounds(a)
    if b.kind == "upper":
        assert b.catalan_bound > G
    else:
        assert b.catalan_bound < G
    if a != 0.0:
        expected = float(_moment_oracle(a)) ** (1 / a) * math.pi ** 2 / 8
        assert b.catalan_bound == pytest.approx(expected, rel=1e-9)


def test_jensen_negative_order_is_lower_bound():
    # x^a is convex for a < 0, so E X^a >= mu^a; raising to 1/a < 0 flips it
    assert jensen_bounds(-0.5).kind == "lower"


def test_jensen_degenerate_and_domain():
    with pytest.raises(DegenerateBoundError):
        jensen_bounds(1.0)
    with pytest.raises(ValueError):
        jensen_bounds(-1.0)
