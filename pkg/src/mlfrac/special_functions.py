"""Mittag-Leffler functions E_a, E_{a,a}, their logarithms, and companions.

The one-parameter function is the entire series

    E_a(r) = sum_{k>=0} r^k / Gamma(1 + k*a),      0 < a <= 1,

and the two-parameter sibling used here is E_{a,a}(r) = sum r^k / Gamma(a + k*a),
which equals a * E_a'(r). Four evaluation regimes are used on the real line:

* ``TaylorSeries``       -- the defining series, compensated summation. Used
  wherever the alternating cancellation (for r < 0) or the term budget
  (for r > 0) keeps the condition number harmless.
* ``SpectralIntegral``   -- for moderately negative r, the completely monotone
  representation E_a(-x) = sin(a pi)/(a pi) * int_0^inf exp(-(s x)^{1/a})
  / (s^2 + 2 s cos(a pi) + 1) ds, whose integrand is positive (no
  cancellation). The naive series loses ~x^{1/a}/ln 10 digits there, e.g.
  62 digits at a=1/2, r=-12, which no double-double accumulator survives.
* ``AsymptoticNegative`` -- the inverse-power expansion
  -sum_{n>=1} r^-n / Gamma(1 - n a), optimally truncated.
* ``AsymptoticPositive`` -- (1/a) exp(r^{1/a}) minus the same inverse-power
  correction; switches to a log-domain result once exp overflows.

``ClosedForm`` covers a = 1, where E_1 = exp and the negative-axis power
expansion is identically zero.

Also hosts the gamma front end and the erf/erfcx oracles used by the test
suites (Taylor series and a Lentz continued fraction; both independent of
every Mittag-Leffler code path above).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammainc as _reg_lower_gamma
from scipy.special import rgamma as _rgamma

from .errors import DomainError, PoleError

# method tags
TAYLOR_SERIES = "TaylorSeries"
ASYMPTOTIC_NEGATIVE = "AsymptoticNegative"
ASYMPTOTIC_POSITIVE = "AsymptoticPositive"
CLOSED_FORM = "ClosedForm"
SPECTRAL_INTEGRAL = "SpectralIntegral"

EXP_OVERFLOW = 700.0        # exponents beyond this are carried as log_value
_POS_ASYM_EXP = 50.0        # r^(1/a) above this: positive asymptotic regime
_NEG_TAYLOR_EXP = 6.9       # cancellation budget exp(6.9) ~ 1e3 (3 digits)
_TAYLOR_MAX_TERMS = 512
_TAYLOR_RTOL = 1e-18
_SPECTRAL_SERIES_TERMS = 52
_SPECTRAL_SB = 0.5          # split point of the spectral integral
_SPECTRAL_EXP_CUT = 46.0    # exp(-46) ~ 1e-20 tail cut


@dataclass(frozen=True)
class MLEval:
    """One Mittag-Leffler evaluation.

    ``value`` is authoritative while finite; on overflow it is ``inf`` and
    ``log_value`` takes over. ``err_estimate`` is an absolute error bound
    except for AsymptoticPositive log-domain results, where it bounds the
    error of ``log_value`` itself.
    """

    value: float
    log_value: float | None
    method: str
    err_estimate: float


@dataclass(frozen=True)
class MLParams:
    """Regime-switch configuration for the evaluators."""

    alpha: float
    series_radius: float = 32.0
    asymptotic_terms: int = 24

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not (math.isfinite(self.series_radius) and self.series_radius > 0):
            raise DomainError("series_radius must be finite and positive")
        if self.asymptotic_terms < 1:
            raise DomainError("asymptotic_terms must be >= 1")


# --------------------------------------------------------------------------
# gamma front end and erf/erfc oracles


def gamma_fn(s: float) -> float:
    """Gamma(s); raises PoleError at nonpositive integers.

    Expansion code that needs 1/Gamma at poles should use reciprocals
    (scipy's rgamma returns 0 there), not this function.
    """
    if s <= 0 and s == math.floor(s):
        raise PoleError(f"gamma pole at s = {s}")
    try:
        return math.gamma(s)
    except OverflowError:
        return math.inf


def erf_series(z: float) -> float:
    """erf by its Maclaurin series; oracle-grade for |z| <= 3."""
    if abs(z) > 3.0:
        raise DomainError("erf_series is an oracle for |z| <= 3")
    term = z
    total = [z]
    k = 0
    while abs(term) > 1e-20 * max(1.0, abs(math.fsum(total))) and k < 200:
        k += 1
        term = (-1) ** k * z ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1))
        total.append(term)
    return 2.0 / math.sqrt(math.pi) * math.fsum(total)


def erfcx_cf(z: float) -> float:
    """Scaled complementary error function exp(z^2) erfc(z), z >= 1.

    Modified Lentz evaluation of the classical continued fraction
    sqrt(pi) erfcx(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))).
    """
    if z < 1.0:
        raise DomainError("erfcx_cf is an oracle for z >= 1")
    tiny = 1e-300
    f = z if z != 0 else tiny
    c = f
    d = 0.0
    for n in range(1, 400):
        a_n = 0.5 * n
        d = z + a_n * d
        if d == 0.0:
            d = tiny
        c = z + a_n / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return 1.0 / (math.sqrt(math.pi) * f)


def erfc_oracle(z: float) -> float:
    """erfc via the series/continued-fraction pair above."""
    if z >= 2.0:
        return erfcx_cf(z) * math.exp(-z * z)
    if z <= -2.0:
        return 2.0 - erfcx_cf(-z) * math.exp(-z * z)
    return 1.0 - erf_series(z)


def erfcx_oracle(z: float) -> float:
    """exp(z^2) erfc(z) without intermediate under/overflow, |z| <= 26."""
    if z >= 2.0:
        return erfcx_cf(z)
    if abs(z) < 2.0:
        return math.exp(z * z) * (1.0 - erf_series(z))
    # z <= -2: erfc(z) = 2 - erfc(-z)
    return 2.0 * math.exp(z * z) - erfcx_cf(-z)


# --------------------------------------------------------------------------
# cached per-alpha coefficient tables


@lru_cache(maxsize=64)
def _neg_asym_coeffs(alpha: float, m: int, shift_beta: float) -> np.ndarray:
    """1/Gamma(beta - n*alpha) for n = 1..m; zero at the poles.

    Arguments within 1e-12 of a nonpositive integer are snapped onto the
    pole: float rounding of n*alpha otherwise turns an exact zero into
    rgamma fuzz of order n! * 1e-16, which poisons optimal truncation.
    """
    n = np.arange(1, m + 1, dtype=float)
    s = shift_beta - n * alpha
    near = np.round(s)
    pole = (near <= 0) & (np.abs(s - near) < 1e-12)
    out = _rgamma(np.where(pole, 1.0, s))
    out[pole] = 0.0
    return out


@lru_cache(maxsize=64)
def _chebyshev_u(alpha: float, m: int) -> np.ndarray:
    """U_m(cos(pi - a pi)) = sin((m+1)(pi - a pi)) / sin(a pi), m = 0..m-1."""
    phi = math.pi - alpha * math.pi
    idx = np.arange(1, m + 1, dtype=float)
    return np.sin(idx * phi) / math.sin(alpha * math.pi)


# --------------------------------------------------------------------------
# Taylor regime


def _taylor_ml(alpha: float, r: float, beta_offset: float) -> tuple[float, float]:
    """sum_k r^k / Gamma(beta_offset + k alpha) by compensated summation.

    Returns (value, absolute error estimate). beta_offset is 1 for E_a and
    alpha for E_{a,a}.
    """
    if r == 0.0:
        return 1.0 / math.gamma(beta_offset), 1e-16 / math.gamma(beta_offset)
    log_abs_r = math.log(abs(r))
    sign_r = 1.0 if r > 0 else -1.0
    terms = []
    max_term = 0.0
    last = math.inf
    for k in range(_TAYLOR_MAX_TERMS):
        log_t = k * log_abs_r - math.lgamma(beta_offset + k * alpha)
        t = math.exp(log_t)
        term = t if (sign_r > 0 or k % 2 == 0) else -t
        terms.append(term)
        max_term = max(max_term, t)
        last = t
        if k > 2 and t < _TAYLOR_RTOL * max(abs(math.fsum(terms)), 1e-280):
            break
    value = math.fsum(terms)
    # term-level rounding rides on the largest term; the tail on the last one
    err = last + 5e-16 * max_term
    return value, err


# --------------------------------------------------------------------------
# spectral regime (negative axis)


def _spectral_knots(alpha: float, x: float) -> np.ndarray:
    """Panel knots on [s_b, s_max] for the spectral integrand."""
    s_b = _SPECTRAL_SB
    s_max = _SPECTRAL_EXP_CUT ** alpha / x
    if s_max <= s_b:
        return np.array([])
    knots = {s_b, s_max}
    # equal steps in the exponent (s x)^(1/alpha)
    u0 = (s_b * x) ** (1.0 / alpha)
    u1 = _SPECTRAL_EXP_CUT
    n_exp = int(math.ceil((u1 - u0) / 2.0))
    for j in range(1, n_exp):
        knots.add((u0 + j * (u1 - u0) / n_exp) ** alpha / x)
    # base resolution for the rational factor
    s = s_b
    while s < min(s_max, 4.0):
        s += 0.25
        knots.add(min(s, s_max))
    # refinement near the q-minimum s0 = -cos(a pi) when it approaches a pole
    if alpha > 0.5:
        s0 = -math.cos(alpha * math.pi)
        w = math.sin(alpha * math.pi)
        for f in (-3.0, -2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 3.0):
            p = s0 + f * w
            if s_b < p < s_max:
                knots.add(p)
    return np.array(sorted(knots))


def _spectral_ml(alpha: float, x: float, weight_pow: float) -> float:
    """int_0^inf s^weight_pow exp(-(s x)^(1/a)) / (s^2 + 2 s cos(a pi) + 1) ds,
    scaled by sin(a pi)/(a pi).

    weight_pow = 0 gives E_a(-x); weight_pow = 1/a gives the core of
    E_{a,a}(-x) (which carries an extra x^((1-a)/a) outside).
    """
    theta = alpha * math.pi
    cos_t = math.cos(theta)
    s_b = _SPECTRAL_SB
    u_b = (s_b * x) ** (1.0 / alpha)

    # [0, s_b]: expand 1/q in Chebyshev-U coefficients, integrate termwise
    # against the exact incomplete-gamma moments of exp(-(s x)^(1/a)).
    m = _SPECTRAL_SERIES_TERMS
    u_coeff = _chebyshev_u(alpha, m)
    mm = np.arange(m, dtype=float)
    a_m = alpha * (mm + 1.0) + (alpha * weight_pow)
    log_moment = (
        math.log(alpha)
        - (mm + 1.0 + weight_pow) * math.log(x)
        + np.array([math.lgamma(v) for v in a_m])
    )
    reg = _reg_lower_gamma(a_m, u_b)
    series_terms = u_coeff * reg * np.exp(log_moment)
    i_series = math.fsum(series_terms.tolist())

    # [s_b, s_max]: analytic integrand, Gauss-Legendre panels
    knots = _spectral_knots(alpha, x)
    i_gl = 0.0
    if knots.size >= 2:
        from ._quad import panel_nodes

        nodes, weights = panel_nodes(knots)
        q = nodes * nodes + 2.0 * cos_t * nodes + 1.0
        f = np.exp(-((nodes * x) ** (1.0 / alpha))) / q
        if weight_pow != 0.0:
            f = f * nodes ** weight_pow
        i_gl = float(np.dot(weights, f))

    return math.sin(theta) / (alpha * math.pi) * (i_series + i_gl)


# --------------------------------------------------------------------------
# asymptotic regimes


def _neg_asym_sum(alpha: float, r: float, m_terms: int,
                  shift_beta: float) -> tuple[float, float]:
    """-sum_n r^-n / Gamma(shift_beta - n alpha), optimally truncated.

    Returns (value, magnitude of the first omitted term). The term-magnitude
    envelope of this expansion decreases until n ~ |r|^(1/a)/a, so the
    smallest-term truncation point is min(m_terms, that index); comparing
    consecutive magnitudes directly would instead stop at the spurious dips
    rgamma produces just off its poles.
    """
    n_turn = max(1, int(math.ceil(abs(r) ** (1.0 / alpha) / alpha)))
    n_use = min(m_terms, n_turn)
    coeffs = _neg_asym_coeffs(alpha, n_use + 2, shift_beta)
    total = 0.0
    rn = 1.0
    for n in range(1, n_use + 1):
        rn *= r
        total -= coeffs[n - 1] / rn
    sentinel = 0.0
    scale = abs(r) ** (-(n_use + 1))
    for c in coeffs[n_use:]:
        if c != 0.0:
            sentinel = scale * abs(c)
            break
        scale /= abs(r)
    return total, sentinel


def _eval_negative(alpha: float, r: float, params: MLParams,
                   shift_beta: float) -> MLEval:
    x = -r
    taylor_lim = min(params.series_radius, _NEG_TAYLOR_EXP ** alpha)
    if x <= taylor_lim:
        value, err = _taylor_ml(alpha, r, shift_beta)
        return MLEval(value, None, TAYLOR_SERIES, err)
    if x < params.series_radius:
        if shift_beta == 1.0:
            value = _spectral_ml(alpha, x, 0.0)
        else:
            value = x ** ((1.0 - alpha) / alpha) * _spectral_ml(
                alpha, x, 1.0 / alpha)
        return MLEval(value, None, SPECTRAL_INTEGRAL, 2e-12 * abs(value))
    value, sentinel = _neg_asym_sum(alpha, r, params.asymptotic_terms,
                                    shift_beta)
    return MLEval(value, None, ASYMPTOTIC_NEGATIVE, sentinel)


def _eval_positive_asym(alpha: float, r: float, params: MLParams,
                        shift_beta: float) -> MLEval:
    big_r = r ** (1.0 / alpha)
    corr, sentinel = _neg_asym_sum(alpha, r, params.asymptotic_terms,
                                   shift_beta)
    if shift_beta == 1.0:
        log_lead = big_r - math.log(alpha)
    else:
        log_lead = big_r - math.log(alpha) + (1.0 - alpha) / alpha * math.log(r)
    if log_lead <= EXP_OVERFLOW:
        lead = math.exp(log_lead)
        value = lead + corr
        return MLEval(value, math.log(value), ASYMPTOTIC_POSITIVE,
                      sentinel + 1e-15 * value)
    # correction is algebraically small against exp(r^(1/a)); log1p term is 0
    return MLEval(math.inf, log_lead, ASYMPTOTIC_POSITIVE, 1e-14)


# --------------------------------------------------------------------------
# public evaluators


def _check_alpha(alpha: float, params: MLParams | None) -> MLParams:
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if params is None:
        return MLParams(alpha)
    if params.alpha != alpha:
        raise DomainError("params.alpha disagrees with the alpha argument")
    return params


def ml_e(alpha: float, r: float, params: MLParams | None = None) -> MLEval:
    """E_alpha(r) with regime-switched evaluation; positive for real r."""
    params = _check_alpha(alpha, params)
    if alpha == 1.0:
        if r <= EXP_OVERFLOW:
            v = math.exp(r)
            return MLEval(v, math.log(v) if v > 0 else None, CLOSED_FORM,
                          2e-16 * v)
        return MLEval(math.inf, r, CLOSED_FORM, 1e-15)
    if r == 0.0:
        return MLEval(1.0, 0.0, TAYLOR_SERIES, 1e-16)
    if r > 0:
        if r <= params.series_radius and r ** (1.0 / alpha) < _POS_ASYM_EXP:
            value, err = _taylor_ml(alpha, r, 1.0)
            return MLEval(value, math.log(value), TAYLOR_SERIES, err)
        return _eval_positive_asym(alpha, r, params, 1.0)
    return _eval_negative(alpha, r, params, 1.0)


def ml_e_alpha_alpha(alpha: float, r: float,
                     params: MLParams | None = None) -> MLEval:
    """E_{alpha,alpha}(r) = sum_k r^k / Gamma(alpha + k alpha)."""
    params = _check_alpha(alpha, params)
    if alpha == 1.0:
        if r <= EXP_OVERFLOW:
            v = math.exp(r)
            return MLEval(v, math.log(v) if v > 0 else None, CLOSED_FORM,
                          2e-16 * v)
        return MLEval(math.inf, r, CLOSED_FORM, 1e-15)
    if r == 0.0:
        v = 1.0 / math.gamma(alpha)
        return MLEval(v, math.log(v), TAYLOR_SERIES, 1e-16 * v)
    if r > 0:
        if r <= params.series_radius and r ** (1.0 / alpha) < _POS_ASYM_EXP:
            value, err = _taylor_ml(alpha, r, alpha)
            return MLEval(value, math.log(value), TAYLOR_SERIES, err)
        return _eval_positive_asym(alpha, r, params, alpha)
    return _eval_negative(alpha, r, params, alpha)


def ml_e_prime(alpha: float, r: float,
               params: MLParams | None = None) -> MLEval:
    """E_alpha'(r) = E_{alpha,alpha}(r) / alpha."""
    inner = ml_e_alpha_alpha(alpha, r, params)
    log_v = None if inner.log_value is None else inner.log_value - math.log(alpha)
    return MLEval(inner.value / alpha, log_v, inner.method,
                  inner.err_estimate / alpha)


def ml_log_e(alpha: float, r: float, params: MLParams | None = None) -> float:
    """log E_alpha(r) for r > 0, continuous across the regime switch."""
    params = _check_alpha(alpha, params)
    if r <= 0:
        raise DomainError("ml_log_e needs r > 0; use ml_e elsewhere")
    if alpha == 1.0:
        return r
    if r <= params.series_radius and r ** (1.0 / alpha) < _POS_ASYM_EXP:
        value, _ = _taylor_ml(alpha, r, 1.0)
        return math.log(value)
    big_r = r ** (1.0 / alpha)
    corr, _ = _neg_asym_sum(alpha, r, params.asymptotic_terms, 1.0)
    log_lead = big_r - math.log(alpha)
    damp = math.exp(-big_r) if big_r < 745.0 else 0.0
    return log_lead + math.log1p(alpha * corr * damp)


# --------------------------------------------------------------------------
# vectorized core for the quadrature integrands


def ml_e_values(alpha: float, r: np.ndarray, scale_log: float = 0.0,
                params: MLParams | None = None) -> np.ndarray:
    """E_alpha(r) * exp(-scale_log) elementwise, for integration kernels.

    Matches the scalar ml_e regimes; the spectral band falls back to the
    scalar path per element. scale_log lets callers work at exp(t) dynamic
    range without overflow; entries whose scaled value underflows return 0.
    """
    params = _check_alpha(alpha, params)
    r = np.asarray(r, dtype=float)
    out = np.empty_like(r)
    if alpha == 1.0:
        with np.errstate(over="ignore", under="ignore"):
            out[:] = np.exp(np.minimum(r - scale_log, 745.0))
        return out

    inv_a = 1.0 / alpha
    pos = r > 0
    zero = r == 0.0
    out[zero] = math.exp(-scale_log) if scale_log < 700 else 0.0

    if np.any(pos):
        rp = r[pos]
        big_r = rp ** inv_a
        taylor = (rp <= params.series_radius) & (big_r < _POS_ASYM_EXP)
        vals = np.empty_like(rp)
        if np.any(taylor):
            vals[taylor] = _taylor_values(alpha, rp[taylor], scale_log, 1.0)
        asym = ~taylor
        if np.any(asym):
            ra = rp[asym]
            coeffs = _neg_asym_coeffs(alpha, params.asymptotic_terms, 1.0)
            n = np.arange(1, params.asymptotic_terms + 1, dtype=float)
            corr = -(ra[:, None] ** (-n[None, :]) * coeffs[None, :]).sum(axis=1)
            expo = ra ** inv_a - math.log(alpha) - scale_log
            with np.errstate(over="ignore", under="ignore"):
                lead = np.exp(np.minimum(expo, 745.0))
                damp = np.exp(np.maximum(-scale_log, -745.0))
            vals[asym] = lead + corr * damp
        out[pos] = vals

    neg = r < 0
    if np.any(neg):
        x = -r[neg]
        vals = np.empty_like(x)
        taylor_lim = min(params.series_radius, _NEG_TAYLOR_EXP ** alpha)
        small = x <= taylor_lim
        if np.any(small):
            vals[small] = _taylor_values(alpha, -x[small], scale_log, 1.0)
        mid = (~small) & (x < params.series_radius)
        if np.any(mid):
            damp = math.exp(-scale_log) if scale_log < 700 else 0.0
            idx = np.nonzero(mid)[0]
            for i in idx:
                vals[i] = _spectral_ml(alpha, x[i], 0.0) * damp
        far = x >= params.series_radius
        if np.any(far):
            xf = x[far]
            coeffs = _neg_asym_coeffs(alpha, params.asymptotic_terms, 1.0)
            n = np.arange(1, params.asymptotic_terms + 1, dtype=float)
            signs = (-1.0) ** (n + 1)
            series = (xf[:, None] ** (-n[None, :]) * (signs * coeffs)[None, :]).sum(axis=1)
            damp = math.exp(-scale_log) if scale_log < 700 else 0.0
            vals[far] = series * damp
        out[neg] = vals
    return out


def _taylor_values(alpha: float, r: np.ndarray, scale_log: float,
                   beta_offset: float) -> np.ndarray:
    """Vectorized Taylor sum exp(-scale_log) * sum_k r^k/Gamma(beta + k a)."""
    r = np.asarray(r, dtype=float)
    max_exp = float(np.max(np.abs(r)) ** (1.0 / alpha)) if r.size else 0.0
    k_max = min(_TAYLOR_MAX_TERMS, int((max_exp + 80.0) / alpha) + 40)
    k = np.arange(k_max, dtype=float)
    lg = np.array([math.lgamma(beta_offset + kk * alpha) for kk in k])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore",
                     under="ignore"):
        log_abs = k[None, :] * np.where(r == 0, -np.inf,
                                        np.log(np.abs(r)))[:, None] - lg[None, :]
        log_abs[r == 0.0, 0] = -lg[0]
        log_abs[r == 0.0, 1:] = -np.inf
        row_max = log_abs.max(axis=1, keepdims=True)
        terms = np.exp(log_abs - row_max)
    terms[~np.isfinite(terms)] = 0.0
    negative = r < 0
    if np.any(negative):
        signs = np.ones(k_max)
        signs[1::2] = -1.0
        sums = np.where(negative,
                        (terms * signs[None, :]).sum(axis=1),
                        terms.sum(axis=1))
    else:
        sums = terms.sum(axis=1)
    with np.errstate(over="ignore", under="ignore"):
        return sums * np.exp(np.minimum(row_max[:, 0] - scale_log, 745.0))
