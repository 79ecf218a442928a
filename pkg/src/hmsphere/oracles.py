"""Deliberately naive reference computations.

Each function here recomputes a library quantity along a different route
(subset enumeration, dense grid scans, clipped quadrature with analytic tail
terms, finite differences).  They are slow and only meant for verification.
"""

from __future__ import annotations

import itertools
import math
import warnings
from typing import Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .curvature import Params

__all__ = [
    "elementary_symmetric_bruteforce",
    "scalar_curvature_bruteforce",
    "q_direct",
    "q_prime_fd",
    "q_double_prime_fd",
    "scan_roots",
    "clipped_period_integrals",
]


def elementary_symmetric_bruteforce(values: Sequence[float], m: int) -> float:
    """Sum of products over all m-subsets (exponential cost)."""
    return math.fsum(math.prod(c) for c in itertools.combinations(values, m))


def scalar_curvature_bruteforce(lambdas: Sequence[float]) -> float:
    """Gauss equation as a double sum: R = sum_{i != j} (1 + l_i l_j)."""
    n = len(lambdas)
    return math.fsum(
        1.0 + lambdas[i] * lambdas[j] for i in range(n) for j in range(n) if i != j
    )


def q_direct(params: Params, C: float, v):
    """q(v; C) with the textbook formula, vectorised over numpy arrays."""
    v = np.asarray(v, dtype=float)
    n, m, H = params.n, params.m, params.H
    return C - v ** 2 * (v ** (-n) + H) ** (2.0 / m) - v ** 2


def q_prime_fd(params: Params, v: float, h: float = 1e-5) -> float:
    """Five-point central difference of q' (C cancels)."""
    step = h * v
    f = lambda x: float(q_direct(params, 0.0, x))
    return (f(v - 2 * step) - 8 * f(v - step) + 8 * f(v + step) - f(v + 2 * step)) / (12 * step)


def q_double_prime_fd(params: Params, v: float, h: float = 1e-4) -> float:
    step = h * v
    f = lambda x: float(q_direct(params, 0.0, x))
    return (
        -f(v - 2 * step) + 16 * f(v - step) - 30 * f(v) + 16 * f(v + step) - f(v + 2 * step)
    ) / (12 * step * step)


def scan_roots(params: Params, C: float, num: int = 200_001, lo: float | None = None):
    """Sign changes of q on a dense log-spaced grid in (lo, sqrt(C)).

    Returns a list of ``(v_left, v_right)`` brackets.
    """
    hi = math.sqrt(C)
    if lo is None:
        lo = hi * 1e-12
    v = np.geomspace(lo, hi, num)
    with np.errstate(over="ignore"):
        s = np.sign(q_direct(params, C, v))
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    return [(float(v[i]), float(v[i + 1])) for i in idx]


def _tail(y0, y1, q1, q2, eps):
    # int_0^eps (y0 + y1 s) / sqrt(q1 s + q2 s^2 / 2) ds, expanded to O(eps^(3/2))
    return (2.0 * y0 * math.sqrt(eps) + 2.0 / 3.0 * (y1 - y0 * q2 / (4.0 * q1)) * eps ** 1.5) / math.sqrt(q1)


def clipped_period_integrals(
    params: Params, C: float, t1: float, t2: float, clip: float = 1e-5
) -> tuple[float, float]:
    """T and P by plain adaptive quadrature in t on a clipped interval.

    The integrable 1/sqrt singularities at t1 and t2 are cut off at a
    distance ``clip`` times the shortest local length scale and replaced by
    analytic tail integrals from second-order Taylor models of q and the
    weight.
    Derivatives of q come from finite differences of the textbook formula.
    """
    n, m, H = params.n, params.m, params.H
    sc = math.sqrt(C)

    def q(t):
        return C - t * t * (t ** (-n) + H) ** (2.0 / m) - t * t

    def y(t):
        return sc * t * (t ** (-n) + H) ** (1.0 / m) / (C - t * t)

    def dy(t):
        h = 1e-6 * t
        return (y(t + h) - y(t - h)) / (2 * h)

    q1a, q2a = q_prime_fd(params, t1), q_double_prime_fd(params, t1)
    q1b, q2b = -q_prime_fd(params, t2), q_double_prime_fd(params, t2)

    # cut-offs are small against every length on which q or the weight vary
    L = t2 - t1
    e1 = clip * min(t1, L, abs(q1a / q2a), (C - t1 * t1) / (2 * t1))
    e2 = clip * min(t2, L, abs(q1b / q2b), (C - t2 * t2) / (2 * t2))
    a, b = t1 + e1, t2 - e2
    # graded breakpoints towards both cut-offs keep each piece well behaved
    mid = 0.5 * (a + b)
    knots = [a + (mid - a) * 10.0 ** -j for j in range(8, 0, -1)]
    knots += [mid] + [b - (b - mid) * 10.0 ** -j for j in range(1, 9)]
    knots = [a] + [x for x in knots if a < x < b] + [b]
    opts = dict(epsabs=1e-13, epsrel=1e-11, limit=200)
    T_mid = P_mid = 0.0
    with warnings.catch_warnings():
        # roundoff in q next to the cut-offs caps the attainable accuracy far
        # below what the comparison needs; the residual is judged by the caller
        warnings.simplefilter("ignore", IntegrationWarning)
        for lo, hi in zip(knots, knots[1:]):
            T_mid += quad(lambda t: 1.0 / math.sqrt(q(t)), lo, hi, **opts)[0]
            P_mid += quad(lambda t: y(t) / math.sqrt(q(t)), lo, hi, **opts)[0]

    T_tail = _tail(1.0, 0.0, q1a, q2a, e1) + _tail(1.0, 0.0, q1b, q2b, e2)
    P_tail = _tail(y(t1), dy(t1), q1a, q2a, e1) + _tail(y(t2), -dy(t2), q1b, q2b, e2)
    return 2.0 * (T_mid + T_tail), 2.0 * (P_mid + P_tail)
