"""Deterministic Gauss-Legendre panel quadrature helpers.

All routines place nodes from closed-form rules on the inputs alone, so a
given call always evaluates the integrand at exactly the same points in the
same order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

GL_ORDER = 20


@lru_cache(maxsize=8)
def _gl_rule(order: int = GL_ORDER):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_nodes(knots: np.ndarray, order: int = GL_ORDER):
    """Nodes and weights for composite Gauss-Legendre over consecutive knots.

    Returns flat arrays; node count is order * (len(knots) - 1).
    """
    x, w = _gl_rule(order)
    a = np.asarray(knots[:-1], dtype=float)
    b = np.asarray(knots[1:], dtype=float)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate(f, knots, order: int = GL_ORDER) -> float:
    """Integrate a vectorized callable over the panels defined by knots."""
    knots = np.asarray(knots, dtype=float)
    if knots.size < 2:
        return 0.0
    nodes, weights = panel_nodes(knots, order)
    return float(np.dot(weights, f(nodes)))


def graded_knots(a: float, b: float, n_uniform: int, depth_left: int = 0,
                 depth_right: int = 0, ratio: float = 0.4) -> np.ndarray:
    """Panel knots on [a, b]: uniform interior, geometric cascades at endpoints.

    The cascades shrink panel widths by ``ratio`` per level toward an endpoint,
    which restores fast convergence when the integrand is only Holder
    continuous there.
    """
    if b <= a:
        return np.array([a, b])
    base = np.linspace(a, b, max(2, n_uniform + 1))
    knots = list(base)
    if depth_left > 0:
        w = base[1] - base[0]
        extra = [a + w * ratio ** j for j in range(1, depth_left + 1)]
        knots.extend(extra)
    if depth_right > 0:
        w = base[-1] - base[-2]
        extra = [b - w * ratio ** j for j in range(1, depth_right + 1)]
        knots.extend(extra)
    out = np.unique(np.asarray(knots, dtype=float))
    return out


def euler_transform(partial_sums: np.ndarray,
                    levels: int = 24) -> tuple[float, float]:
    """Accelerate an alternating series from its partial sums.

    A fixed number of pairwise-averaging stages (van Wijngaarden form of the
    Euler transformation), read off at the deepest index so the estimate
    reflects the far end of the computed segments. Averaging all the way down
    to one entry would instead weight the sums binomially around the middle
    index, discarding half the tail. Returns (estimate, error_estimate); the
    error estimate combines the final-stage spread with the last level-to-
    level change.
    """
    s = np.asarray(partial_sums, dtype=float)
    if s.size == 0:
        return 0.0, np.inf
    if s.size == 1:
        return float(s[0]), np.inf
    prev_last = float(s[-1])
    depth = min(levels, s.size - 1)
    for _ in range(depth):
        s = 0.5 * (s[:-1] + s[1:])
        level_change = abs(float(s[-1]) - prev_last)
        prev_last = float(s[-1])
    spread = abs(float(s[-1]) - float(s[-2])) if s.size >= 2 else 0.0
    return float(s[-1]), spread + level_change
