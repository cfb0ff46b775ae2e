"""Named verification suites behind `mlfrac verify` and the test harness.

Each runner returns CheckRow records: one row per executed check, oriented so
``satisfied`` is True when the property holds. Rows marked informational
never fail a suite; they record measured discrepancies that are reported,
not asserted (the printed-formula comparison of the convolution integral,
for instance).

Grids here are sized for an interactive run; the acceptance test suite
drives the same machinery at its full published grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as bd
from . import caputo as cp
from . import fundamental_solution as fs
from . import special_functions as sf

__all__ = ["CheckRow", "run_suite", "SUITES"]


@dataclass(frozen=True)
class CheckRow:
    suite: str
    check: str
    detail: str
    value: float
    threshold: float
    satisfied: bool
    informational: bool = False


def _row(suite, check, detail, value, threshold, ok, info=False) -> CheckRow:
    return CheckRow(suite, check, detail, float(value), float(threshold),
                    bool(ok), info)


# --------------------------------------------------------------------------


def run_ml_suite() -> list[CheckRow]:
    rows = []
    # exponential anchor at alpha = 1
    rs = np.linspace(-20.0, 20.0, 101)
    worst = max(abs(sf.ml_e(1.0, float(r)).value - math.exp(r))
                / math.exp(r) for r in rs)
    rows.append(_row("ml", "anchor_exp", "alpha=1;r=[-20,20]", worst, 1e-12,
                     worst <= 1e-12))
    # erfcx anchor at alpha = 1/2
    worst = 0.0
    for r in np.linspace(-20.0, 20.0, 81):
        r = float(r)
        ref = (sf.erfcx_oracle(-r) if r <= 0
               else 2.0 * math.exp(r * r) - sf.erfcx_cf(max(r, 1.0))
               if r >= 2.0 else math.exp(r * r) * (1.0 + sf.erf_series(r)))
        worst = max(worst, abs(sf.ml_e(0.5, r).value - ref) / abs(ref))
    rows.append(_row("ml", "anchor_erfcx", "alpha=0.5;r=[-20,20]", worst,
                     1e-9, worst <= 1e-9))
    # positivity across the sampled plane
    neg = 0
    for alpha in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0):
        for r in np.linspace(-50.0, 50.0, 41):
            e = sf.ml_e(alpha, float(r))
            aa = sf.ml_e_alpha_alpha(alpha, float(r))
            if (e.value if math.isfinite(e.value) else 1.0) <= 0:
                neg += 1
            if (aa.value if math.isfinite(aa.value) else 1.0) <= 0:
                neg += 1
    rows.append(_row("ml", "positivity", "alpha={0.5..1.0};r=[-50,50]", neg,
                     0, neg == 0))
    # monotone growth on the positive axis (via logs: overflow-safe)
    ok = True
    for alpha in (0.5, 0.75, 0.9):
        vals = [sf.ml_e(alpha, float(r)).log_value
                for r in np.linspace(0, 30, 31)]
        ok &= all(b > a for a, b in zip(vals, vals[1:]))
    rows.append(_row("ml", "monotone_positive", "alpha={0.5,0.75,0.9}",
                     0.0 if ok else 1.0, 0, ok))
    # derivative identity against central differences
    h = 1e-5
    worst = 0.0
    for alpha in (0.5, 0.75, 0.9):
        for r in np.linspace(-10.0, 10.0, 21):
            r = float(r)
            cd = (sf.ml_e(alpha, r + h).value
                  - sf.ml_e(alpha, r - h).value) / (2 * h)
            ep = sf.ml_e_prime(alpha, r).value
            worst = max(worst, abs(cd - ep) / abs(ep))
    rows.append(_row("ml", "derivative_fd", "h=1e-5;r=[-10,10]", worst, 1e-6,
                     worst <= 1e-6))
    # exact identity alpha * E' = E_aa
    worst = max(abs(alpha * sf.ml_e_prime(alpha, r).value
                    - sf.ml_e_alpha_alpha(alpha, r).value)
                / sf.ml_e_alpha_alpha(alpha, r).value
                for alpha in (0.5, 0.75, 0.9) for r in (-7.0, -1.0, 2.0))
    rows.append(_row("ml", "derivative_exact", "alpha*E'=E_aa", worst, 5e-16,
                     worst <= 5e-16))
    # regime continuity: both methods at the same point
    for alpha in (0.5, 0.75, 0.9):
        inner = sf.ml_e(alpha, -32.0, sf.MLParams(alpha, series_radius=32.5))
        outer = sf.ml_e(alpha, -32.0, sf.MLParams(alpha, series_radius=31.5))
        rel = abs(inner.value - outer.value) / abs(outer.value)
        rows.append(_row("ml", "regime_continuity",
                         f"alpha={alpha};r=-32;{inner.method}|{outer.method}",
                         rel, 1e-9, rel <= 1e-9))
    # log route consistency
    worst = max(abs(sf.ml_log_e(a, r) - math.log(sf.ml_e(a, r).value))
                for a in (0.5, 0.75) for r in (0.5, 3.0, 20.0))
    rows.append(_row("ml", "log_route", "vs log(ml_e)", worst, 1e-10,
                     worst <= 1e-10))
    return rows


def run_caputo_suite() -> list[CheckRow]:
    rows = []
    grid = cp.TimeGrid(1.0, 1024)
    for alpha in (0.5, 0.75):
        for lam in (-1.0, 1.0):
            res = cp.eigenrelation_residual(alpha, lam, grid)
            nodes = grid.nodes[1:]
            worst = float(res[nodes >= 0.25].max())
            rows.append(_row("caputo", "eigenrelation",
                             f"alpha={alpha};lambda={lam};n=1024", worst,
                             5e-3, worst <= 5e-3))
    for alpha in (0.5, 0.75):
        exact = 2.0 / math.gamma(3.0 - alpha)
        res = cp.l1_convergence_order(lambda t: t ** 2, alpha, 1.0, 1024,
                                      exact)
        dev = abs(res.order_estimate - (2.0 - alpha))
        rows.append(_row("caputo", "l1_order", f"alpha={alpha};u=t^2", dev,
                         0.2, dev <= 0.2))
    for alpha in (0.5, 0.75):
        for lam in (-2.0, 1.0):
            for t in (0.5, 2.0):
                v = cp.volterra_residual(alpha, lam, t, 512)
                rows.append(_row("caputo", "volterra",
                                 f"alpha={alpha};lambda={lam};t={t}", v,
                                 1e-6, v <= 1e-6))
    xi_vals = {}
    for alpha in (0.5, 0.75, 0.9):
        for t in (0.5, 1.0, 2.0, 4.0):
            rep = cp.xi_check(alpha, t)
            xi_vals.setdefault(alpha, []).append(rep.lhs)
            rel = abs(rep.lhs - rep.rhs) / rep.rhs
            rows.append(_row("caputo", "xi_beta_identity",
                             f"alpha={alpha};t={t}", rel, 1e-8, rep.satisfied))
            if t == 1.0:
                dev = abs(rep.context["printed_formula"] - rep.lhs) / rep.lhs
                rows.append(_row("caputo", "xi_printed_formula",
                                 f"alpha={alpha};t={t};informational", dev,
                                 math.inf, True, info=True))
    for alpha, vals in xi_vals.items():
        spread = (max(vals) - min(vals)) / max(vals)
        rows.append(_row("caputo", "xi_t_independence", f"alpha={alpha}",
                         spread, 1e-8, spread <= 1e-8))
    return rows


def run_solution_suite() -> list[CheckRow]:
    rows = []
    for d, a in ((1.0, 0.0), (1.0, 1.0), (0.5, 2.0)):
        params = fs.FracParams(1.0, d, a)
        worst = 0.0
        for x in (0.0, 1.0, 3.0, 5.0):
            for t in (0.1, 1.0, 5.0):
                ref = fs.u_gaussian(x, t, params)
                got = fs.u_quadrature(x, t, params, 1e-10).u
                if ref >= 1e-8:
                    worst = max(worst, abs(got - ref) / ref)
                else:
                    # deep in the Gaussian tail the value sits below the
                    # O(1)-mass rounding floor (~1e-15 absolute); relative
                    # accuracy is out of reach there in double precision
                    worst = max(worst, abs(got - ref) * 1e-4)
        rows.append(_row("solution", "gaussian_limit", f"d={d};a={a}", worst,
                         1e-6, worst <= 1e-6))
    tol = 2e-9
    for alpha in (0.5, 0.75, 0.9):
        for x in (2.0, 5.0, 10.0):
            for t in (0.5, 1.0, 5.0):
                s = fs.u_series(x, t, alpha, tol)
                q = fs.u_quadrature(x, t, fs.FracParams(alpha, 1.0, 1.0), tol)
                diff = abs(s.u - q.u)
                budget = s.abs_error_bound + q.abs_error_bound
                ok = diff <= budget and (abs(q.u) > 1.0 or diff <= 1e-8)
                rows.append(_row("solution", "series_vs_quadrature",
                                 f"alpha={alpha};x={x};t={t}", diff, budget,
                                 ok))
                seq = fs.term_sequence(x, t, alpha, tol)
                laws = (np.all(seq.terms > 0)
                        and np.all(np.diff(seq.terms[1:]) < 0)
                        and seq.terms[0] > 0.5 * seq.terms[1])
                rows.append(_row("solution", "term_laws",
                                 f"alpha={alpha};x={x};t={t}",
                                 0.0 if laws else 1.0, 0, laws))
    ev = fs.u_quadrature(2.5, 1.0, fs.FracParams(0.75, 1.0, 1.0))
    ev2 = fs.u_quadrature(-2.5, 1.0, fs.FracParams(0.75, 1.0, 1.0))
    rows.append(_row("solution", "evenness", "x=2.5;alpha=0.75",
                     abs(ev.u - ev2.u), 0, ev.u == ev2.u))
    deleg = fs.u_series(0.2, 1.0, 0.5)
    rows.append(_row("solution", "small_x_delegation", "x=0.2",
                     0.0, 0, deleg.method == fs.DIRECT_QUADRATURE))
    for alpha in (0.5, 0.75, 0.9):
        params = fs.FracParams(alpha, 1.0, 1.0)
        ratio = fs.spectral_tail_ratio(100.0, 1.0, params)
        rows.append(_row("solution", "spectral_tail",
                         f"alpha={alpha};xi=100", abs(ratio - 1.0), 1e-2,
                         0.99 <= ratio <= 1.01))
        devs = [abs(fs.spectral_tail_ratio(float(z), 1.0, params) - 1.0)
                for z in (8, 16, 32, 64, 128, 256)]
        dec = all(b < a for a, b in zip(devs, devs[1:]))
        rows.append(_row("solution", "spectral_tail_decreasing",
                         f"alpha={alpha};xi=8..256", devs[-1], devs[0], dec))
    return rows


def run_bounds_suite() -> list[CheckRow]:
    rows = []
    rs = np.logspace(-6, 3, 40)
    for alpha in (0.5, 0.75, 0.9, 1.0):
        bad = sum(not bd.check_ml_upper(alpha, float(r)).satisfied for r in rs)
        rows.append(_row("bounds", "ml_upper", f"alpha={alpha}", bad, 0,
                         bad == 0))
        if alpha < 1.0:
            bad = sum(not bd.check_ml_lower(alpha, float(r)).satisfied
                      for r in rs)
            rows.append(_row("bounds", "ml_lower", f"alpha={alpha}", bad, 0,
                             bad == 0))
    worst = max(abs(bd.check_ml_upper(1.0, float(r)).margin) for r in rs)
    rows.append(_row("bounds", "ml_upper_equality_at_1", "alpha=1", worst,
                     1e-12, worst <= 1e-12))
    for alpha in (0.5, 0.75):
        for x in (5.0, 10.0, 20.0):
            for t in (0.5, 2.0):
                rep = bd.a0_lower_bound(x, t, alpha)
                rows.append(_row("bounds", "a0_lower",
                                 f"alpha={alpha};x={x};t={t}", rep.margin, 0,
                                 rep.satisfied))
                for k in (1, 2):
                    if x > math.pi * (2 * k + 1) / 2:
                        rep = bd.ak_upper_bound(k, x, t, alpha)
                        rows.append(_row("bounds", "ak_upper",
                                         f"alpha={alpha};x={x};t={t};k={k}",
                                         rep.margin, 0, rep.satisfied))
    for alpha, beta, c in ((0.5, 0.4, 1.0), (0.75, 0.25, 3.0)):
        cfg = bd.FrontConfig(beta, c, alpha,
                             t_grid=tuple(np.geomspace(5.0, 40.0, 6)))
        samples = bd.front_track(cfg)
        lg = [s.log_u for s in samples]
        inc = all(b > a for a, b in zip(lg, lg[1:]))
        slope = (lg[-1] - lg[0]) / (40.0 - 5.0)
        sandwich = all(s.bracket_ok for s in samples)
        rows.append(_row("bounds", "front_divergence",
                         f"alpha={alpha};beta={beta};c={c}", slope, 0.8,
                         inc and slope >= 0.8 and sandwich))
    return rows


def run_all() -> list[CheckRow]:
    return (run_ml_suite() + run_caputo_suite() + run_solution_suite()
            + run_bounds_suite())


SUITES = {
    "ml": run_ml_suite,
    "caputo": run_caputo_suite,
    "solution": run_solution_suite,
    "bounds": run_bounds_suite,
    "all": run_all,
}


def run_suite(name: str) -> list[CheckRow]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{sorted(SUITES)}") from None
    return fn()
