"""Independent reference computations for the tests.

Nothing here shares code with the evaluation paths under test: the
Mittag-Leffler reference sums the defining series in exact multiprecision
arithmetic, the closed form at order 1/2 goes through the package's
continued-fraction erfcx (itself cross-checked against scipy), and the
half-period coefficient oracle integrates in the spectral variable rho with
the square-root substitution carried out explicitly.
"""

from __future__ import annotations

import math

import mpmath as mp
import numpy as np

from mlfrac._quad import graded_knots, panel_nodes
from mlfrac.special_functions import erf_series, erfcx_oracle


def ml_reference(alpha: float, r: float, beta: float = 1.0) -> float:
    """Defining series in multiprecision; alpha enters as the exact float."""
    peak = abs(r) ** (1.0 / alpha)
    mp.mp.dps = max(60, int(peak / math.log(10)) + 40)
    a = mp.mpf(alpha)
    b = mp.mpf(beta)
    r_ = mp.mpf(r)
    total = mp.mpf(0)
    largest = mp.mpf(0)
    for k in range(0, 60000):
        term = r_ ** k / mp.gamma(b + mp.mpf(k) * a)
        total += term
        largest = max(largest, abs(term))
        if k > 10 and abs(term) < mp.mpf(10) ** (-mp.mp.dps + 8) * largest:
            break
    return float(total)


def e_half_closed_form(r: float) -> float:
    """E_{1/2}(r) = exp(r^2) erfc(-r), stitched to avoid overflow."""
    if r <= 0.0:
        return erfcx_oracle(-r)
    if r < 2.0:
        return math.exp(r * r) * (1.0 + erf_series(r))
    return 2.0 * math.exp(r * r) - erfcx_oracle(r)


def a_term_rho_oracle(k: int, x: float, t: float, alpha: float) -> float:
    """a_k via the spectral-variable integral with s = sqrt(1 - rho).

    The substitution (rho = 1 - s^2, drho = -2 s ds) removes the
    1/sqrt(1 - rho) endpoint singularity exactly and yields
    2 * int E_a(t^a (1 - s^2)) cos(x s) ds over the half-period in s,
    of which a_k is half. Panel placement here (graded, fixed count) shares
    nothing with the production integrator.
    """
    from mlfrac.special_functions import ml_e

    lo = 0.0 if k == 0 else math.pi * (2 * k - 1) / (2.0 * x)
    hi = math.pi * (2 * k + 1) / (2.0 * x)
    span = hi - lo
    pieces = np.concatenate([
        graded_knots(lo, lo + span / 2, 40, depth_left=6),
        graded_knots(lo + span / 2, hi, 40, depth_right=6),
    ])
    knots = np.unique(pieces)
    nodes, weights = panel_nodes(knots)
    vals = np.array([ml_e(alpha, t ** alpha * (1.0 - s * s)).value
                     for s in nodes])
    sign = 1.0 if k % 2 == 0 else -1.0
    return sign * float(np.dot(weights, vals * np.cos(x * nodes)))
