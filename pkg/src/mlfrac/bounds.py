"""Machine checks of the Mittag-Leffler inequalities and front tracking.

The two function-level inequalities (for alpha >= 1/2, with E' = E_aa/alpha):

    upper:  E_a(r) <= alpha E_a'(r) + 1 - 1/Gamma(a) + (1/Gamma(1+a) - 1/Gamma(2a)) r
    lower:  E_a(r) >= (alpha/r) E_a'(r) - 1/(Gamma(a) r) + 1 - 1/Gamma(2a)

feed interval bounds on the half-period coefficients: a_0 from below and a_k
(k >= 1) from above, via differences of E_a at nearby arguments. Combining
a_0's lower bound with a_1's upper bound gives a computable lower bound for
u(x, t) itself, which along x = c t^beta (beta < 1/2) certifies divergence.

Differences of exponentially large E values are assembled in factored form,
exp(L_max) * (1 - exp(dL) + small), with expm1 keeping the near-cancellation
exact; when the assembled bracket loses more than 13 digits to cancellation
the bound is declared vacuous instead of trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .fundamental_solution import _a_term_scaled, a_term, u_series
from .special_functions import ml_e, ml_e_alpha_alpha, ml_log_e

__all__ = [
    "BoundReport",
    "FrontConfig",
    "FrontSample",
    "make_report",
    "check_ml_upper",
    "check_ml_lower",
    "a0_lower_bound",
    "ak_upper_bound",
    "front_lower_bound",
    "front_track",
    "dottie_number",
    "DOTTIE",
    "A_MINUS",
    "A_PLUS",
]

A_MINUS = math.pi / 2.0
A_PLUS = 3.0 * math.pi / 2.0
_LINEAR_LIMIT = 600.0  # assemble in factored form beyond this log scale
_VACUOUS_RESIDUE = 1e-13


def dottie_number(iterations: int = 160) -> float:
    """Fixed point of cos by plain iteration; converges linearly to 1e-14+."""
    x = 0.739
    for _ in range(iterations):
        x = math.cos(x)
    return x


DOTTIE = dottie_number()


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one inequality check.

    margin is oriented so that `satisfied` <=> margin >= -tol_eq with
    tol_eq = 1e-12 * max(1, |lhs|, |rhs|). When context carries a
    ``log_scale`` entry, lhs/rhs/margin are all scaled by exp(-log_scale);
    the satisfaction rule is scale-invariant.
    """

    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    context: dict = field(default_factory=dict)


def make_report(lhs: float, rhs: float, direction: str,
                context: dict | None = None) -> BoundReport:
    """Assemble a report; direction is 'le' (lhs <= rhs), 'ge', or 'eq'.

    'eq' checks agreement within the band 1e-8 * max(1, |lhs|, |rhs|)
    (margin = band - |lhs - rhs|), which is the quadrature-vs-identity
    tolerance used by the consistency suites.
    """
    context = dict(context or {})
    if direction == "le":
        margin = rhs - lhs
    elif direction == "ge":
        margin = lhs - rhs
    elif direction == "eq":
        band = 1e-8 * max(1.0, abs(lhs), abs(rhs))
        margin = band - abs(lhs - rhs)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    tol_eq = 1e-12 * max(1.0, abs(lhs), abs(rhs))
    context.setdefault("direction", direction)
    return BoundReport(lhs, rhs, margin, bool(margin >= -tol_eq), context)


def _gamma_constants(alpha: float) -> tuple[float, float, float]:
    g_a = math.gamma(alpha)
    g_1a = math.gamma(1.0 + alpha)
    g_2a = math.gamma(2.0 * alpha)
    return g_a, g_1a, g_2a


def check_ml_upper(alpha: float, r: float) -> BoundReport:
    """E_a(r) against alpha E_a'(r) + 1 - 1/G(a) + (1/G(1+a) - 1/G(2a)) r."""
    if not 0.5 <= alpha <= 1.0:
        raise DomainError("the upper bound needs alpha in [1/2, 1]")
    if r < 0:
        raise DomainError("the upper bound needs r >= 0")
    g_a, g_1a, g_2a = _gamma_constants(alpha)
    affine = (1.0 - 1.0 / g_a) + (1.0 / g_1a - 1.0 / g_2a) * r
    e = ml_e(alpha, r)
    eaa = ml_e_alpha_alpha(alpha, r)
    ctx = {"check": "ml_upper", "alpha": alpha, "r": r}
    log_e = e.log_value if e.log_value is not None else math.log(max(e.value, 1e-300))
    log_eaa = (eaa.log_value if eaa.log_value is not None
               else math.log(max(eaa.value, 1e-300)))
    scale = max(log_e, log_eaa)
    if scale <= _LINEAR_LIMIT:
        return make_report(e.value, eaa.value + affine, "le", ctx)
    damp = math.exp(-scale)
    ctx["log_scale"] = scale
    lhs = math.exp(log_e - scale)
    rhs = math.exp(log_eaa - scale) + affine * damp
    return make_report(lhs, rhs, "le", ctx)


def check_ml_lower(alpha: float, r: float) -> BoundReport:
    """E_a(r) against (a/r) E_a'(r) - 1/(G(a) r) + 1 - 1/G(2a)."""
    if not 0.5 <= alpha <= 1.0:
        raise DomainError("the lower bound needs alpha in [1/2, 1]")
    if r <= 0:
        raise DomainError("the lower bound needs r > 0")
    g_a, _, g_2a = _gamma_constants(alpha)
    ctx = {"check": "ml_lower", "alpha": alpha, "r": r}
    e = ml_e(alpha, r)
    if r < 0.5:
        # (E_aa(r) - 1/G(a))/r amplifies rounding by 1/r; sum the shifted
        # series sum_j r^j / G(a(j+2)) instead, which is the same quantity
        shifted = 0.0
        for j in range(200):
            term = r ** j / math.gamma(alpha * (j + 2))
            shifted += term
            if j > 2 and term < 1e-18 * shifted:
                break
        rhs = shifted + 1.0 - 1.0 / g_2a
        return make_report(e.value, rhs, "ge", ctx)
    affine = 1.0 - 1.0 / g_2a - 1.0 / (g_a * r)
    eaa = ml_e_alpha_alpha(alpha, r)
    log_e = e.log_value if e.log_value is not None else math.log(max(e.value, 1e-300))
    log_eaa = (eaa.log_value if eaa.log_value is not None
               else math.log(max(eaa.value, 1e-300)))
    scale = max(log_e, log_eaa - math.log(r))
    if scale <= _LINEAR_LIMIT:
        return make_report(e.value, eaa.value / r + affine, "ge", ctx)
    damp = math.exp(-scale)
    ctx["log_scale"] = scale
    lhs = math.exp(log_e - scale)
    rhs = math.exp(log_eaa - math.log(r) - scale) + affine * damp
    return make_report(lhs, rhs, "ge", ctx)


def _c0(alpha: float, x: float, t: float, ell: float) -> float:
    t_a = t ** alpha
    g_a = math.gamma(alpha)
    g_2a = math.gamma(2.0 * alpha)
    return (t_a / (alpha * g_a) * math.log1p(-(ell * ell) / (x * x))
            + ell * ell * t_a * t_a / (alpha * x * x) * (1.0 - 1.0 / g_2a))


def _c1(alpha: float, x: float, t: float, k: int) -> float:
    t_a = t ** alpha
    g_a = math.gamma(alpha)
    g_1a = math.gamma(1.0 + alpha)
    g_2a = math.gamma(2.0 * alpha)
    lead = 4.0 * k * math.pi / (x * (2 * k - 1)) * (1.0 - 1.0 / g_a)
    quad = (t_a * k * math.pi / (x * (2 * k - 1))
            * (1.0 / g_1a - 1.0 / g_2a)
            * (4.0 - (math.pi / x) ** 2 * (1.0 + 4.0 * k * k)))
    return lead + quad


def a0_lower_bound(x: float, t: float, alpha: float,
                   ell: float = DOTTIE) -> BoundReport:
    """a_0(x, t) against its interval lower bound (any ell in (0, pi/2))."""
    if not 0.0 < ell < math.pi / 2.0:
        raise DomainError("ell must lie in (0, pi/2)")
    if x <= math.pi / 2.0:
        raise DomainError("the a_0 bound needs x > pi/2")
    if not 0.5 <= alpha < 1.0:
        raise DomainError("the a_0 bound needs alpha in [1/2, 1)")
    if t <= 0:
        raise DomainError("t must be positive")
    r1 = t ** alpha
    r2 = r1 * (1.0 - (ell * ell) / (x * x))
    log_e1 = ml_log_e(alpha, r1)
    log_e2 = ml_log_e(alpha, r2)
    coef = alpha * math.cos(ell) * x / (ell * r1 * r1)
    c0 = _c0(alpha, x, t, ell)
    ctx = {"check": "a0_lower", "alpha": alpha, "x": x, "t": t, "ell": ell}
    if log_e1 <= _LINEAR_LIMIT:
        bracket = math.exp(log_e1) * (-math.expm1(log_e2 - log_e1)) + c0
        return make_report(a_term(0, x, t, alpha), coef * bracket, "ge", ctx)
    ctx["log_scale"] = log_e1
    damp = math.exp(-log_e1)
    bracket = -math.expm1(log_e2 - log_e1) + c0 * damp
    lhs = _a_term_scaled(0, x, t, alpha, log_e1)
    return make_report(lhs, coef * bracket, "ge", ctx)


def ak_upper_bound(k: int, x: float, t: float, alpha: float) -> BoundReport:
    """a_k(x, t) (k >= 1) against its interval upper bound."""
    if k < 1:
        raise DomainError("k must be at least 1")
    if x <= math.pi * (2 * k + 1) / 2.0:
        raise DomainError(f"the a_k bound needs x > pi (2k+1)/2 = "
                          f"{math.pi * (2 * k + 1) / 2.0:.6f}")
    if not 0.5 <= alpha < 1.0:
        raise DomainError("the a_k bound needs alpha in [1/2, 1)")
    if t <= 0:
        raise DomainError("t must be positive")
    r1 = t ** alpha * (1.0 - (math.pi * (2 * k - 1) / (2.0 * x)) ** 2)
    r2 = t ** alpha * (1.0 - (math.pi * (2 * k + 1) / (2.0 * x)) ** 2)
    log_e1 = ml_log_e(alpha, r1)
    log_e2 = ml_log_e(alpha, r2)
    coef = 2.0 * alpha * x / ((2 * k - 1) * math.pi * t ** alpha)
    ck = _c1(alpha, x, t, k)
    ctx = {"check": "ak_upper", "alpha": alpha, "x": x, "t": t, "k": k}
    if log_e1 <= _LINEAR_LIMIT:
        bracket = math.exp(log_e1) * (-math.expm1(log_e2 - log_e1)) + ck
        return make_report(a_term(k, x, t, alpha), coef * bracket, "le", ctx)
    ctx["log_scale"] = log_e1
    damp = math.exp(-log_e1)
    bracket = -math.expm1(log_e2 - log_e1) + ck * damp
    lhs = _a_term_scaled(k, x, t, alpha, log_e1)
    return make_report(lhs, coef * bracket, "le", ctx)


@dataclass(frozen=True)
class FrontConfig:
    """Trajectory x = c t^beta for the divergence certificate.

    beta = 0 (a fixed observation point) is admitted: the reaction term alone
    drives growth there. The divergence theorem itself concerns
    beta in (0, 1/2).
    """

    beta: float
    c: float
    alpha: float
    ell: float = DOTTIE
    t_grid: tuple = ()

    def __post_init__(self):
        if not 0.0 <= self.beta < 0.5:
            raise DomainError("beta must lie in [0, 1/2)")
        if self.c <= 0:
            raise DomainError("c must be positive")
        if not 0.5 <= self.alpha < 1.0:
            raise DomainError("front tracking needs alpha in [1/2, 1)")
        if not 0.0 < self.ell < math.pi / 2.0:
            raise DomainError("ell must lie in (0, pi/2)")
        ts = tuple(float(t) for t in self.t_grid)
        if any(t <= 0 for t in ts):
            raise DomainError("t_grid must be positive")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("t_grid must be strictly increasing")
        object.__setattr__(self, "t_grid", ts)


@dataclass(frozen=True)
class FrontSample:
    t: float
    x: float
    log_u: float
    log_lower_bound: float
    bracket_ok: bool


def front_lower_bound(t: float, config: FrontConfig) -> float:
    """log of the assembled lower bound for u(c t^beta, t); -inf if vacuous.

    Combines the a_0 lower bound (with cos ell = ell by default) and the
    k = 1 upper bound through u > (a_0 - a_1)/pi, entirely in factored
    exponential form. A bracket that is nonpositive or sits below the
    cancellation floor is vacuous, not an error.
    """
    alpha, ell = config.alpha, config.ell
    x = config.c * t ** config.beta
    if x <= A_PLUS:
        raise DomainError("the front bound needs x = c t^beta > 3 pi / 2")
    r1 = t ** alpha
    log_e1 = ml_log_e(alpha, r1)
    damp = math.exp(-log_e1) if log_e1 < 700 else 0.0

    log_e_ell = ml_log_e(alpha, r1 * (1.0 - (ell / x) ** 2))
    coef0 = alpha * math.cos(ell) * x / (ell * r1 * r1)
    term0 = coef0 * (-math.expm1(log_e_ell - log_e1) + _c0(alpha, x, t, ell) * damp)

    log_em = ml_log_e(alpha, r1 * (1.0 - (A_MINUS / x) ** 2))
    log_ep = ml_log_e(alpha, r1 * (1.0 - (A_PLUS / x) ** 2))
    coef1 = 2.0 * alpha * x / (math.pi * r1)
    term1 = coef1 * (math.exp(log_em - log_e1) * (-math.expm1(log_ep - log_em))
                     + _c1(alpha, x, t, 1) * damp)

    combined = term0 - term1
    if combined <= 0 or combined < _VACUOUS_RESIDUE * (abs(term0) + abs(term1)):
        return -math.inf
    return log_e1 + math.log(combined) - math.log(math.pi)


def front_track(config: FrontConfig) -> list[FrontSample]:
    """log u along x = c t^beta with the assembled lower bound per sample."""
    if not config.t_grid:
        raise DomainError("config.t_grid is empty")
    samples = []
    for t in config.t_grid:
        x = config.c * t ** config.beta
        est_log = ml_log_e(config.alpha, t ** config.alpha) \
            + math.log(config.alpha * max(x, 1e-6)) \
            - 2.0 * config.alpha * math.log(t) - math.log(math.pi)
        tol = max(1e-13, 1e-11 * math.exp(min(est_log, 600.0)))
        sol = u_series(x, t, config.alpha, tol)
        if sol.log_u is None:
            raise DomainError(f"u(x={x}, t={t}) evaluated nonpositive")
        if x > A_PLUS * (1.0 + 1e-12):
            lb = front_lower_bound(t, config)
        else:
            lb = -math.inf
        samples.append(FrontSample(t, x, sol.log_u, lb,
                                   bool(sol.log_u >= lb - 1e-9)))
    return samples
