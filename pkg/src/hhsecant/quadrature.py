"""Adaptive integration and series summation with error estimates.

Everything here returns an :class:`EvalResult` so callers can tell an
estimate that met its tolerance from one that ran out of budget.

Integrands are called with a numpy array of abscissae and must return an
array of the same shape (plain numpy expressions do this for free).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "EvalResult",
    "QuadratureConfig",
    "SeriesConfig",
    "ConvergenceError",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_double",
    "trapezoid_uniform",
    "trapezoid_error_estimate",
    "cvz_sum",
    "sum_alternating",
    "sum_monotone",
    "sum_double",
]


class ConvergenceError(ArithmeticError):
    """Raised when a scalar routine cannot reach its requested accuracy."""


@dataclass(frozen=True)
class EvalResult:
    value: float
    err_estimate: float
    work: int
    converged: bool
    note: str = ""

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for the adaptive integrators.

    A semi-infinite range is cut at the first ``X`` where the crude tail
    bound ``|f(X)| (X - a + 1)`` drops below half the tolerance, or where
    ``|f(X)| <= truncation_guard`` (default 0: only exact underflow).
    ``rel_tol`` lets large-valued integrals stop on relative accuracy.
    """

    abs_tol: float = 1e-10
    max_subdivisions: int = 2000
    truncation_guard: float = 0.0
    rel_tol: float = 0.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.truncation_guard < 0:
            raise ValueError("truncation_guard must be >= 0")
        if self.rel_tol < 0:
            raise ValueError("rel_tol must be >= 0")

    def with_tol(self, abs_tol: float) -> "QuadratureConfig":
        return QuadratureConfig(abs_tol, self.max_subdivisions, self.truncation_guard, self.rel_tol)


@dataclass(frozen=True)
class SeriesConfig:
    """Tolerance and term budget for summation; ``method`` picks the accelerator."""

    abs_tol: float = 1e-12
    max_terms: int = 4096
    method: str = "cvz"

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.method not in ("cvz", "euler"):
            raise ValueError(f"unknown acceleration method {self.method!r}")

    def with_tol(self, abs_tol: float) -> "SeriesConfig":
        return SeriesConfig(abs_tol, self.max_terms, self.method)


# ---------------------------------------------------------------------------
# Gauss-Kronrod 7/15 pair
# ---------------------------------------------------------------------------

_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the 7-point rule live on the odd Kronrod nodes.
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_WK_FULL = np.concatenate([_WK[:-1], _WK[::-1]])
_WG_FULL = np.zeros(15)
_WG_FULL[[1, 3, 5]] = _WG[:3]
_WG_FULL[7] = _WG[3]
_WG_FULL[[9, 11, 13]] = _WG[2::-1]


_EPS = float(np.finfo(float).eps)
_ROUNDOFF = 50.0 * _EPS


def _gk15(f, a: float, b: float) -> tuple[float, float, float]:
    """Kronrod value, error estimate and its round-off floor on one panel.

    The estimate is max(|K - G|, 50 eps int|f|): the Gauss/Kronrod difference
    alone can drop far below what double arithmetic resolves.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = np.asarray(f(c + h * _NODES), dtype=float)
    if y.shape != (15,):
        y = np.broadcast_to(y, (15,))
    k = h * float(_WK_FULL @ y)
    g = h * float(_WG_FULL @ y)
    floor = _ROUNDOFF * abs(h) * float(_WK_FULL @ np.abs(y))
    return k, max(abs(k - g), floor), floor


def _adaptive(f, a: float, b: float, cfg: QuadratureConfig) -> EvalResult:
    if a == b:
        return EvalResult(0.0, 0.0, 0, True)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    val, err, floor = _gk15(f, a, b)
    evals = 15
    if not (math.isfinite(val) and math.isfinite(err)):
        return EvalResult(math.nan, math.inf, evals, False, "non-finite integrand")
    heap = [(-err, a, b, val, err, floor)]
    n_intervals = 1
    total_err = err
    total_floor = floor
    note = ""
    while True:
        target = cfg.abs_tol
        if cfg.rel_tol:
            target = max(target, cfg.rel_tol * abs(math.fsum(item[3] for item in heap)))
        if total_err <= target:
            break
        if total_floor > target and total_err <= 2.0 * total_floor:
            # what is left is round-off; splitting cannot reduce it
            note = "tolerance below round-off level"
            break
        if n_intervals >= cfg.max_subdivisions:
            note = "subdivision budget exhausted"
            break
        _, lo, hi, v, e, fl = heap[0]
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi) or (hi - lo) <= 4e-16 * max(abs(lo), abs(hi)):
            note = "interval cannot be split further"
            break
        heapq.heappop(heap)
        v1, e1, f1 = _gk15(f, lo, mid)
        v2, e2, f2 = _gk15(f, mid, hi)
        evals += 30
        if not all(math.isfinite(q) for q in (v1, e1, v2, e2)):
            return EvalResult(math.nan, math.inf, evals, False, "non-finite integrand")
        heapq.heappush(heap, (-e1, lo, mid, v1, e1, f1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2, f2))
        n_intervals += 1
        total_err += e1 + e2 - e
        total_floor += f1 + f2 - fl
        if total_err <= 2 * cfg.abs_tol:
            total_err = math.fsum(item[4] for item in heap)
    # fixed summation order (by left endpoint) keeps results bitwise reproducible
    items = sorted(heap, key=lambda item: item[1])
    value = math.fsum(item[3] for item in items)
    err = math.fsum(item[4] for item in items)
    target = max(cfg.abs_tol, cfg.rel_tol * abs(value))
    ok = err <= target
    return EvalResult(sign * value, err, evals, ok, "" if ok else note)


def integrate_finite(f: Callable, a: float, b: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    The endpoints themselves are never evaluated, so integrable endpoint
    singularities are fine.
    """
    cfg = cfg or QuadratureConfig()
    return _adaptive(f, float(a), float(b), cfg)


def _find_cutoff(f, a: float, budget: float, guard: float) -> float | None:
    def small(x):
        fx = abs(float(np.asarray(f(np.array([x])), dtype=float).ravel()[0]))
        if not math.isfinite(fx):
            return False
        return fx <= guard or fx * (x - a + 1.0) <= budget

    for j in range(0, 64):
        x = a + 2.0 ** j
        if small(x) and small(a + 2.0 ** (j + 1)):
            return x
    return None


def integrate_semi_infinite(f: Callable, a: float, cfg: QuadratureConfig | None = None) -> EvalResult:
    """Integral of ``f`` over ``[a, inf)`` through ``x = a + t/(1-t)``.

    Half of the tolerance goes to cutting the range at a point ``X`` beyond
    which ``|f(X)|(X-a+1)`` is below it; the other half to the adaptive rule
    on the mapped interval. The tail estimate is added to ``err_estimate``.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    half = 0.5 * cfg.abs_tol
    cut = _find_cutoff(f, a, half, cfg.truncation_guard)
    if cut is None:
        return EvalResult(math.nan, math.inf, 128, False, "integrand does not decay")
    fx = abs(float(np.asarray(f(np.array([cut])), dtype=float).ravel()[0]))
    tail = fx * (cut - a + 1.0)
    t_max = (cut - a) / (cut - a + 1.0)

    def g(t):
        one_minus = 1.0 - t
        return f(a + t / one_minus) / (one_minus * one_minus)

    inner = _adaptive(g, 0.0, t_max, cfg.with_tol(half))
    err = inner.err_estimate + tail
    target = max(cfg.abs_tol, cfg.rel_tol * abs(inner.value))
    return EvalResult(inner.value, err, inner.work + 4, inner.converged and err <= target, inner.note)


def integrate_double(
    f: Callable,
    outer: tuple[float, float],
    inner: Callable[[float], tuple[float, float]],
    cfg: QuadratureConfig | None = None,
) -> EvalResult:
    """Iterated integral  ∫_{outer} ∫_{inner(p)} f(p, t) dt dp.

    ``f(p, t)`` receives a scalar ``p`` and an array ``t``. Each inner
    integral gets a share of the tolerance scaled by the outer length.
    """
    cfg = cfg or QuadratureConfig()
    a, b = map(float, outer)
    width = max(b - a, 1e-300)
    inner_cfg = cfg.with_tol(0.25 * cfg.abs_tol / width)
    stats = {"work": 0, "ok": True, "err": 0.0}

    def g(ps):
        out = np.empty(len(ps))
        for i, p in enumerate(ps):
            lo, hi = inner(float(p))
            r = _adaptive(lambda t: f(float(p), t), float(lo), float(hi), inner_cfg)
            stats["work"] += r.work
            stats["ok"] = stats["ok"] and r.converged
            stats["err"] = max(stats["err"], r.err_estimate)
            out[i] = r.value
        return out

    res = _adaptive(g, a, b, cfg.with_tol(0.5 * cfg.abs_tol))
    err = res.err_estimate + stats["err"] * width
    return EvalResult(res.value, err, res.work + stats["work"], res.converged and stats["ok"] and err <= cfg.abs_tol)


# ---------------------------------------------------------------------------
# Uniform trapezoidal rule
# ---------------------------------------------------------------------------

def trapezoid_uniform(
    f: Callable, a: float, b: float, n: int, fa: float | None = None, fb: float | None = None
) -> float:
    """Composite trapezoidal rule with ``n`` equal panels.

    ``fa``/``fb`` replace ``f(a)``/``f(b)`` where the integrand only has a
    limiting value at an endpoint.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    h = (b - a) / n
    fa = float(f(np.array([a]))[0]) if fa is None else fa
    fb = float(f(np.array([b]))[0]) if fb is None else fb
    interior = np.asarray(f(a + h * np.arange(1, n)), dtype=float) if n > 1 else np.zeros(0)
    return h * (0.5 * (fa + fb) + math.fsum(interior))


def trapezoid_error_estimate(fprime_a: float, fprime_b: float, a: float, b: float, n: int) -> float:
    """Leading-order error (exact minus rule) of :func:`trapezoid_uniform`:
    ``-(b-a)^2 / (12 n^2) * (f'(b) - f'(a))``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return -((b - a) ** 2) / (12.0 * n * n) * (fprime_b - fprime_a)


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------

_CVZ_MAX_N = 256  # (3 + sqrt 8)^n overflows a double near n = 400


def cvz_sum(a: Sequence[float]) -> float:
    """Cohen-Rodriguez Villegas-Zagier estimate of sum (-1)^k a_k from a_0..a_{n-1}.

    Error is about 5.8^-n for totally monotone a_k.
    """
    n = len(a)
    if n == 0:
        return 0.0
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return s / d


def _euler_transform(a: Sequence[float]) -> tuple[float, float]:
    # repeated averaging of partial sums; returns (value, |last two levels| diff)
    sums = np.cumsum([(-1) ** k * x for k, x in enumerate(a)])
    prev = sums[-1]
    diff = math.inf
    while len(sums) > 1:
        sums = 0.5 * (sums[1:] + sums[:-1])
        diff = abs(sums[-1] - prev)
        prev = sums[-1]
    return float(prev), float(diff)


class _TermCache:
    def __init__(self, term):
        self.term = term
        self.values: list[float] = []

    def upto(self, n: int) -> list[float]:
        while len(self.values) < n:
            self.values.append(float(self.term(len(self.values))))
        return self.values[:n]


def sum_alternating(term: Callable[[int], float], cfg: SeriesConfig | None = None) -> EvalResult:
    """Accelerated sum of ``sum_k (-1)^k term(k)``, k >= 0.

    ``term`` returns the unsigned magnitude. The CVZ estimate is computed for
    n = 8, 16, ... and the difference between successive estimates is the
    error estimate; if that stalls the Euler transform is tried on the
    terms already computed.
    """
    cfg = cfg or SeriesConfig()
    cache = _TermCache(term)
    if cfg.method == "euler":
        return _sum_alternating_euler(cache, cfg)
    n = min(8, cfg.max_terms)
    prev = cvz_sum(cache.upto(n))
    best_err = math.inf
    best = prev
    while n < min(cfg.max_terms, _CVZ_MAX_N):
        n = min(2 * n, cfg.max_terms, _CVZ_MAX_N)
        vals = cache.upto(n)
        if not all(math.isfinite(v) for v in vals):
            return EvalResult(math.nan, math.inf, n, False, "non-finite term")
        cur = cvz_sum(vals)
        err = abs(cur - prev)
        if err < best_err:
            best_err, best = err, cur
        if err <= max(cfg.abs_tol, _rounding_floor(cur, vals)):
            if _tail_monotone(vals):
                return EvalResult(cur, err, n, True)
            return EvalResult(cur, err, n, False, "terms not monotone in tail")
        prev = cur
    fallback = _sum_alternating_euler(cache, cfg)
    if fallback.converged or fallback.err_estimate < best_err:
        return fallback
    return EvalResult(best, best_err, len(cache.values), False, "term budget exhausted")


def _rounding_floor(value: float, vals: Sequence[float]) -> float:
    # successive estimates cannot agree better than a few ulps of the largest quantity
    return 16.0 * _EPS * max(abs(value), max((abs(v) for v in vals), default=0.0))


def _tail_monotone(vals: Sequence[float]) -> bool:
    tail = np.abs(np.asarray(vals[len(vals) // 2:]))
    return bool(np.all(np.diff(tail) <= 1e-14 * np.max(tail, initial=0.0) + 1e-300))


def _sum_alternating_euler(cache: _TermCache, cfg: SeriesConfig) -> EvalResult:
    n = min(32, cfg.max_terms)
    prev = None
    while True:
        vals = cache.upto(n)
        value, diff = _euler_transform(vals)
        if prev is not None:
            err = max(abs(value - prev), diff)
            if err <= max(cfg.abs_tol, _rounding_floor(value, vals)):
                return EvalResult(value, err, n, _tail_monotone(vals))
            if n >= cfg.max_terms:
                return EvalResult(value, err, n, False, "term budget exhausted")
        prev = value
        if n >= cfg.max_terms:
            return EvalResult(value, math.inf, n, False, "term budget exhausted")
        n = min(2 * n, cfg.max_terms)


def sum_monotone(term: Callable[[int], float], cfg: SeriesConfig | None = None, start: int = 0) -> EvalResult:
    """Sum of a slowly convergent one-signed series via Richardson extrapolation.

    Assumes the tail after N terms has an asymptotic expansion in powers of
    1/N (true when the terms themselves expand in powers of 1/k). Partial
    sums at N = 16, 32, 64, ... are extrapolated on a Romberg-style table.
    """
    cfg = cfg or SeriesConfig()
    cache = _TermCache(lambda k: term(k + start))
    table: list[list[float]] = []
    n = 16
    prev_diag = None
    while n <= cfg.max_terms:
        s = math.fsum(cache.upto(n))
        row = [s]
        for m, prev in enumerate(table[-1] if table else []):
            fac = 2.0 ** (m + 1)
            row.append((fac * row[m] - prev) / (fac - 1.0))
        table.append(row)
        diag = row[-1]
        if prev_diag is not None:
            err = abs(diag - prev_diag)
            if err <= cfg.abs_tol:
                return EvalResult(diag, err, n, True)
        prev_diag = diag
        n *= 2
    err = abs(table[-1][-1] - table[-2][-2]) if len(table) > 1 else math.inf
    return EvalResult(table[-1][-1], err, len(cache.values), False, "term budget exhausted")


_GROWTH_LIMIT = 16


def sum_double(
    term: Callable[[int, int], float],
    cfg: SeriesConfig | None = None,
    outer: str = "direct",
    outer_start: int = 0,
) -> EvalResult:
    """Sum over i of  sign_i * sum_j (-1)^j term(i, j).

    The inner alternating index is always accelerated. ``outer="direct"``
    adds outer terms (sign +1) until three consecutive inner sums fall below
    abs_tol/10 and the geometric tail bound from the last term ratio,
    |v| rho / (1 - rho), is below abs_tol/2; that bound joins the error
    estimate, and a run of ``_GROWTH_LIMIT`` growing outer terms aborts with
    ``converged=False``. ``outer="alternating"`` uses sign (-1)^i and accelerates the
    outer index as well.
    """
    cfg = cfg or SeriesConfig()
    inner_cfg = cfg.with_tol(cfg.abs_tol / 10.0)
    work = 0
    ok = True
    inner_err = 0.0

    def inner(i: int) -> float:
        nonlocal work, ok, inner_err
        r = sum_alternating(lambda j: term(i, j), inner_cfg)
        work += r.work
        ok = ok and r.converged
        inner_err += r.err_estimate
        return r.value

    if outer == "alternating":
        res = sum_alternating(lambda i: inner(i + outer_start), cfg.with_tol(cfg.abs_tol / 2))
        err = res.err_estimate + inner_err
        sign = -1.0 if outer_start % 2 else 1.0
        return EvalResult(sign * res.value, err, work, res.converged and ok, res.note)
    if outer != "direct":
        raise ValueError(f"unknown outer mode {outer!r}")
    parts: list[float] = []
    small = 0
    growing = 0
    tail = math.inf
    i = outer_start
    while small < 3 or tail > cfg.abs_tol / 2.0:
        if i - outer_start >= cfg.max_terms:
            return EvalResult(math.fsum(parts), math.inf, work, False, "outer budget exhausted")
        v = inner(i)
        if not math.isfinite(v):
            return EvalResult(math.nan, math.inf, work, False, f"non-finite outer term at {i}")
        growing = growing + 1 if parts and abs(v) > abs(parts[-1]) else 0
        if growing >= _GROWTH_LIMIT:
            return EvalResult(math.fsum(parts) + v, math.inf, work, False, f"outer terms growing at index {i}")
        if parts and parts[-1] != 0.0:
            rho = abs(v / parts[-1])
            tail = abs(v) * rho / (1.0 - rho) if rho < 1.0 else math.inf
        elif v == 0.0:
            tail = 0.0
        parts.append(v)
        small = small + 1 if abs(v) < cfg.abs_tol / 10.0 else 0
        i += 1
    value = math.fsum(parts)
    err = inner_err + tail
    return EvalResult(value, err, work, ok)
