"""Acceptance gate: every published criterion at its stated tolerance.

One test per criterion; each prints a PASS line on success (run with -s or
-rA to see them). Grids and thresholds are frozen here, not configurable.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from mlfrac.bounds import (
    DOTTIE,
    FrontConfig,
    a0_lower_bound,
    ak_upper_bound,
    check_ml_lower,
    check_ml_upper,
    front_track,
)
from mlfrac.caputo import (
    TimeGrid,
    eigenrelation_residual,
    l1_convergence_order,
    volterra_residual,
    xi_check,
)
from mlfrac.fundamental_solution import (
    FracParams,
    spectral_tail_ratio,
    term_sequence,
    u_gaussian,
    u_quadrature,
    u_series,
)
from mlfrac.special_functions import ml_e, ml_e_alpha_alpha, ml_e_prime

from _oracles import e_half_closed_form


def _report(number, name):
    print(f"ACCEPTANCE {number:2d} {name}: PASS")


def test_criterion_01_ml_closed_form_anchors():
    rs = np.linspace(-20.0, 20.0, 1000)
    worst_exp = max(abs(ml_e(1.0, float(r)).value - math.exp(r))
                    / math.exp(r) for r in rs)
    assert worst_exp <= 1e-12, f"exp anchor worst {worst_exp:.3e}"
    worst_half = 0.0
    for r in rs:
        ref = e_half_closed_form(float(r))
        worst_half = max(worst_half,
                         abs(ml_e(0.5, float(r)).value - ref) / abs(ref))
    assert worst_half <= 1e-9, f"erfcx anchor worst {worst_half:.3e}"
    _report(1, "ml closed-form anchors")


def test_criterion_02_derivative_identity():
    h = 1e-5
    worst = 0.0
    for alpha in (0.5, 0.75, 0.9):
        for r in np.linspace(-10.0, 10.0, 81):
            r = float(r)
            cd = (ml_e(alpha, r + h).value - ml_e(alpha, r - h).value) / (2 * h)
            ep = ml_e_prime(alpha, r).value
            worst = max(worst, abs(cd - ep) / abs(ep))
    assert worst <= 1e-6, f"derivative worst {worst:.3e}"
    _report(2, "derivative identity vs finite differences")


def test_criterion_03_positivity():
    violations = 0
    for alpha in (0.5, 0.6, 0.7, 0.8, 0.9, 1.0):
        for r in np.linspace(-50.0, 50.0, 101):
            for fn in (ml_e, ml_e_alpha_alpha):
                got = fn(alpha, float(r))
                positive = got.value > 0.0 or (math.isinf(got.value)
                                               and got.log_value is not None)
                violations += 0 if positive else 1
    assert violations == 0
    _report(3, "positivity across the sampled plane")


def test_criterion_04_caputo_eigenrelation():
    grid = TimeGrid(1.0, 4096)
    for alpha in (0.5, 0.75):
        for lam in (-1.0, 1.0):
            res = eigenrelation_residual(alpha, lam, grid)
            worst = float(res[grid.nodes[1:] >= 0.25].max())
            assert worst <= 5e-3, (alpha, lam, worst)
    for alpha in (0.5, 0.75):
        exact = 2.0 / math.gamma(3.0 - alpha)
        res = l1_convergence_order(lambda t: t ** 2, alpha, 1.0, 4096, exact)
        assert abs(res.order_estimate - (2.0 - alpha)) <= 0.2, \
            (alpha, res.order_estimate)
    _report(4, "Caputo eigenrelation and L1 order")


def test_criterion_05_volterra_residual():
    for alpha in (0.5, 0.6, 0.75, 0.9):
        for lam in (-2.0, -1.0, 1.0):
            for t in (0.5, 1.0, 2.0):
                v = volterra_residual(alpha, lam, t, 2048)
                assert v <= 1e-6, (alpha, lam, t, v)
    _report(5, "Volterra residual")


# shared by criteria 6 and 8
_GRID_XS = (2.0, 5.0, 10.0, 20.0, 50.0)
_GRID_TS = (0.5, 1.0, 5.0, 20.0)
_GRID_ALPHAS = (0.5, 0.75, 0.9)


def _pair_tolerance(x, t, alpha):
    rough = u_quadrature(x, t, FracParams(alpha, 1.0, 1.0), 1e-6)
    return 2e-9 * max(1.0, abs(rough.u))


@pytest.fixture(scope="module")
def series_quadrature_grid():
    out = {}
    for alpha in _GRID_ALPHAS:
        for x in _GRID_XS:
            for t in _GRID_TS:
                tol = _pair_tolerance(x, t, alpha)
                s = u_series(x, t, alpha, tol)
                q = u_quadrature(x, t, FracParams(alpha, 1.0, 1.0), tol)
                out[(alpha, x, t)] = (s, q, tol)
    return out


def test_criterion_06_series_quadrature_equivalence(series_quadrature_grid):
    for (alpha, x, t), (s, q, _tol) in series_quadrature_grid.items():
        diff = abs(s.u - q.u)
        budget = s.abs_error_bound + q.abs_error_bound
        assert diff <= budget, (alpha, x, t, diff, budget)
        if abs(q.u) <= 1.0:
            assert diff <= 1e-8, (alpha, x, t, diff)
    _report(6, "series vs quadrature equivalence")


def test_criterion_07_gaussian_limit():
    for d, a in ((1.0, 0.0), (1.0, 1.0), (0.5, 2.0)):
        params = FracParams(1.0, d, a)
        for x in (0.0, 1.0, 2.0, 3.0, 4.0, 5.0):
            for t in (0.1, 0.5, 1.0, 5.0):
                ref = u_gaussian(x, t, params)
                got = u_quadrature(x, t, params, 1e-10).u
                if ref >= 1e-8:
                    assert abs(got - ref) / ref <= 1e-6, (d, a, x, t)
                else:
                    # below the double-precision mass floor only the
                    # absolute agreement is checkable
                    assert abs(got - ref) <= 1e-12, (d, a, x, t)
    _report(7, "Gaussian limit")


def test_criterion_08_term_sequence_laws(series_quadrature_grid):
    violations = 0
    for (alpha, x, t), (_s, _q, tol) in series_quadrature_grid.items():
        seq = term_sequence(x, t, alpha, tol)
        if not np.all(seq.terms > 0.0):
            violations += 1
        if not np.all(np.diff(seq.terms[1:]) < 0.0):
            violations += 1
        if not seq.terms[0] > 0.5 * seq.terms[1]:
            violations += 1
    assert violations == 0
    _report(8, "term-sequence laws")


def test_criterion_09_function_inequality_grids():
    alphas = [round(a, 2) for a in np.arange(0.5, 1.0001, 0.05)]
    rs = np.logspace(-6.0, 3.0, 200)
    for alpha in alphas:
        for r in rs:
            assert check_ml_upper(alpha, float(r)).satisfied, (alpha, r)
            if alpha < 1.0:
                assert check_ml_lower(alpha, float(r)).satisfied, (alpha, r)
    worst = max(abs(check_ml_upper(1.0, float(r)).margin) for r in rs)
    assert worst <= 1e-12, worst
    _report(9, "function-level inequality grids")


def test_criterion_10_coefficient_inequality_grids():
    for alpha in (0.5, 0.75, 0.9):
        for x in (5.0, 10.0, 20.0, 50.0):
            for t in (0.5, 1.0, 2.0, 5.0, 10.0):
                for ell in (DOTTIE, 1.0, 0.1):
                    rep = a0_lower_bound(x, t, alpha, ell)
                    assert rep.satisfied, (alpha, x, t, ell)
                for k in (1, 2, 3):
                    if x > math.pi * (2 * k + 1) / 2:
                        rep = ak_upper_bound(k, x, t, alpha)
                        assert rep.satisfied, (alpha, x, t, k)
    _report(10, "coefficient inequality grids")


def test_criterion_11_front_divergence():
    t_grid = tuple(np.geomspace(5.0, 40.0, 8))
    for alpha in (0.5, 0.75):
        for beta in (0.25, 0.4, 0.49):
            for c in (1.0, 3.0):
                cfg = FrontConfig(beta, c, alpha, t_grid=t_grid)
                samples = front_track(cfg)
                logs = [s.log_u for s in samples]
                assert all(b > a for a, b in zip(logs, logs[1:])), \
                    (alpha, beta, c)
                slope_gain = logs[-1] - logs[0]
                assert slope_gain >= 0.8 * 35.0, (alpha, beta, c, slope_gain)
                assert all(s.bracket_ok for s in samples), (alpha, beta, c)
    _report(11, "front divergence certificate")


def test_criterion_12_spectral_tail():
    for alpha in (0.5, 0.75, 0.9):
        params = FracParams(alpha, 1.0, 1.0)
        ratio = spectral_tail_ratio(100.0, 1.0, params)
        assert 0.99 <= ratio <= 1.01, (alpha, ratio)
        devs = [abs(spectral_tail_ratio(float(z), 1.0, params) - 1.0)
                for z in (8, 16, 32, 64, 128, 256)]
        assert all(b < a for a, b in zip(devs, devs[1:])), (alpha, devs)
    _report(12, "spectral tail law")


def test_criterion_13_xi_cross_check():
    for alpha in (0.5, 0.6, 0.75, 0.9):
        vals = []
        for t in (0.5, 1.0, 2.0, 4.0):
            rep = xi_check(alpha, t)
            beta_value = math.pi / math.sin(math.pi * alpha)
            assert abs(rep.lhs - beta_value) / beta_value <= 1e-8, (alpha, t)
            assert "printed_formula" in rep.context
            vals.append(rep.lhs)
        spread = (max(vals) - min(vals)) / max(vals)
        assert spread <= 1e-8, (alpha, spread)
    # the printed closed form disagrees away from its calibration point;
    # recorded, never asserted
    rep = xi_check(0.5, 4.0)
    assert not rep.context["printed_matches_quadrature"]
    assert rep.satisfied
    _report(13, "convolution integral cross-check")


def test_criterion_14_cli_determinism():
    cmd = [sys.executable, "-m", "mlfrac.cli"]
    invocations = [
        ["ml", "--alpha", "0.5", "--r-min", "-5", "--r-max", "5",
         "--r-steps", "11"],
        ["ml", "--alpha", "0.9", "--r", "2.0", "--format", "json"],
        ["solution", "--alpha", "0.75", "--x", "1,5", "--t", "0.5,2"],
        ["solution", "--alpha", "1.0", "--x", "1", "--t", "1",
         "--format", "json"],
        ["front", "--alpha", "0.5", "--beta", "0.4", "--c", "1",
         "--t-min", "5", "--t-max", "40", "--t-steps", "6"],
        ["verify", "--suite", "ml", "--format", "json"],
    ]
    for args in invocations:
        first = subprocess.run(cmd + args, capture_output=True, text=True)
        second = subprocess.run(cmd + args, capture_output=True, text=True)
        assert first.returncode == second.returncode, args
        assert first.stdout == second.stdout, args
    full = subprocess.run(cmd + ["verify", "--suite", "all"],
                          capture_output=True, text=True)
    assert full.returncode == 0, full.stderr
    doc = subprocess.run(cmd + ["verify", "--suite", "caputo", "--format",
                                "json"], capture_output=True, text=True)
    assert json.loads(doc.stdout)["schema_version"] == "1"
    _report(14, "CLI determinism and verify gate")
