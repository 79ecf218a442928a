"""The oscillation potential of the profile equation.

Along a profile the variable w obeys ``w'^2 = q(w)`` with

    q(v; C) = C - v^2 (v^-n + H)^(2/m) - v^2.

q has a single interior maximum at v0 (its second derivative is below -2
everywhere), so for every energy C above ``c0 = C - q(v0)`` there are exactly
two positive turning points t1 < v0 < t2 and w oscillates between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq

from . import kernels
from .curvature import Params
from .errors import BracketError, DomainError

__all__ = [
    "CriticalData",
    "RootPair",
    "q_eval",
    "q_prime",
    "q_double_prime",
    "lambda_of",
    "critical_point",
    "critical_point_closed_form",
    "roots",
]


@dataclass(frozen=True)
class CriticalData:
    """Maximum of q: location ``v0``, energy threshold ``c0`` and ``a = -q''(v0)/2``."""

    v0: float
    c0: float
    a: float


@dataclass(frozen=True)
class RootPair:
    """Turning points ``t1 < t2`` of q(.; C) at energy ``C``."""

    t1: float
    t2: float
    C: float


def _check_v(v):
    if not v > 0:
        raise ValueError(f"v must be positive, got {v}")


def q_eval(params: Params, C: float, v: float) -> float:
    _check_v(v)
    return kernels.q(v, params.n, params.m, params.H, C)


def q_prime(params: Params, v: float) -> float:
    _check_v(v)
    return kernels.dq(v, params.n, params.m, params.H)


def q_double_prime(params: Params, v: float) -> float:
    _check_v(v)
    return kernels.d2q(v, params.n, params.m, params.H)


def lambda_of(params: Params, v: float) -> float:
    """Multiple principal curvature ``(v^-n + H)^(1/m)`` at profile value v."""
    _check_v(v)
    return kernels.lam(v, params.n, params.m, params.H)


@lru_cache(maxsize=1024)
def critical_point(params: Params) -> CriticalData:
    """Locate the maximum of q numerically.

    The bracket is grown geometrically from v = 1 until q' changes sign,
    then refined with Brent's method.
    """
    n, m, H = params.n, params.m, params.H
    lo = hi = 1.0
    for _ in range(2000):
        if kernels.dq(lo, n, m, H) > 0:
            break
        lo *= 0.5
    else:
        raise BracketError("q' never positive while shrinking towards 0")
    for _ in range(2000):
        if kernels.dq(hi, n, m, H) < 0:
            break
        hi *= 2.0
    else:
        raise BracketError("q' never negative while growing")
    v0 = brentq(lambda v: kernels.dq(v, n, m, H), lo, hi, xtol=1e-300, rtol=1e-15, maxiter=500)
    _, lX = kernels.log_x(v0, n, m, H)
    c0 = math.exp(2.0 / m * lX + 2.0 * math.log(v0)) + v0 * v0
    a = -0.5 * kernels.d2q(v0, n, m, H)
    return CriticalData(v0=v0, c0=c0, a=a)


def critical_point_closed_form(params: Params) -> CriticalData | None:
    """Printed closed forms for the critical data, where they exist.

    Covers m = 4 (separate expressions for H = 1 and H != 1), m = 2, and the
    H -> 0 limit for any m.  Returns None otherwise.  The m = 4, H != 1
    expressions have a removable 0/0 at H = 1, so within 1e-3 of it an
    equivalent cancellation-free rearrangement is used instead.
    """
    n, m, H = params.n, params.m, params.H
    if H == 0:
        r = (n - m) / m
        return CriticalData(v0=r ** (m / (2 * n)), c0=r ** (m / n) * n / (n - m), a=2 * n / m)
    if m == 2:
        base = (n - 2) / (2 * (H + 1))
        return CriticalData(
            v0=base ** (1 / n),
            c0=base ** (2 / n) * n * (H + 1) / (n - 2),
            a=n * (H + 1),
        )
    if m == 4:
        if H == 1:
            base = (n - 4) ** 2 / (8 * n - 16)
            return CriticalData(
                v0=base ** (1 / n),
                c0=base ** (2 / n) * (n / (n - 4) + 1),
                a=2 * (n - 2) ** 2 / n,
            )
        if abs(H - 1) < 1e-3:
            return _m4_near_one(n, H)
        s = math.sqrt(n * (n - 4) * H + 4)
        num = s - n * H + 4 * H - 2
        base = num / (4 * H * (1 - H))
        c0 = base ** (2 / n) * ((H * (s - n * H + 2) / num) ** 0.5 + 1)
        poly = (
            n * n * (n - 4) * H * H
            + n * (-n * n + 4 * n + 4) * H
            - 4 * n
            + (n * n - 2 * n + (-n * n + 2 * n) * H) * s
        )
        a = H ** 0.5 * poly / (abs(s - n * H + 2) ** 1.5 * abs(num) ** 0.5)
        return CriticalData(v0=base ** (1 / n), c0=c0, a=a)
    return None


def _m4_near_one(n: int, H: float) -> CriticalData:
    # with s^2 = n(n-4)H + 4, the vanishing factors of the printed forms are
    #   s - (n-4)H - 2 = (n-4)^2 H (1-H) / (s + (n-4)H + 2)
    #   s - nH + 2     = n^2 H (1-H) / (s + nH - 2)
    #   n - 2 - s      = n(n-4)(1-H) / (n - 2 + s)
    # and dividing them out leaves expressions that are smooth through H = 1
    s = math.sqrt(n * (n - 4) * H + 4)
    u = s + (n - 4) * H + 2
    w = s + n * H - 2
    base = (n - 4) ** 2 / (4 * u)
    c0 = base ** (2 / n) * (n * math.sqrt(H * u / w) / (n - 4) + 1)
    a = s * w ** 1.5 * math.sqrt(u) / (n * H ** 1.5 * (n - 2 + s))
    return CriticalData(v0=base ** (1 / n), c0=c0, a=a)


def roots(params: Params, C: float, tol: float = 1e-12, maxiter: int = 200) -> RootPair:
    """Turning points of q(.; C), found in log v by safeguarded false position.

    The inner bracket halves v from v0 until q < 0 (q -> -inf as v -> 0);
    the outer bracket is [v0, sqrt(C)], where q(sqrt(C)) < 0.
    """
    crit = critical_point(params)
    if not C > crit.c0 or not kernels.q(crit.v0, params.n, params.m, params.H, C) > 0:
        raise DomainError(f"no oscillation: C={C!r} must exceed c0={crit.c0!r}")
    try:
        t1, t2 = kernels.turning_points(params.n, params.m, params.H, C, crit.v0, tol, maxiter)
    except ArithmeticError as exc:
        raise BracketError(str(exc)) from exc
    return RootPair(t1=t1, t2=t2, C=C)
