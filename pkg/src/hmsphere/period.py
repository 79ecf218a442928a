"""Arc-length period T and angular period P of the profile oscillation.

Over one oscillation of w between the turning points, the generating curve
advances in longitude by

    P(C) = 2 * int_{t1}^{t2} sqrt(C) t lambda(t) / ((C - t^2) sqrt(q(t))) dt,

and the hypersurface closes up after k oscillations when P = 2 pi / k.
P has closed-form limits at both ends of the energy range:

* C -> c0+ :  B = 2 pi sqrt(c0) / (sqrt(a) sqrt(c0 - v0^2))
* C -> inf :  A = 2 arctan(H^(-1/m))
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels_py, kernels
from .curvature import Params
from .errors import DomainError
from .potential import critical_point, q_double_prime, q_prime, roots
from .quadrature import gauss_kronrod, tanh_sinh

__all__ = [
    "PeriodBounds",
    "PeriodSample",
    "period_sample",
    "half_period_T",
    "period_P",
    "period_P_scaled",
    "limit_at_c0",
    "limit_at_c0_printed",
    "limit_at_infinity",
    "bounds",
]

TOL_QUAD = 1e-10


@dataclass(frozen=True)
class PeriodBounds:
    """Limits of P: ``A`` as C -> infinity, ``B`` as C -> c0+."""

    A: float
    B: float


@dataclass(frozen=True)
class PeriodSample:
    C: float
    t1: float
    t2: float
    T: float
    P: float


def period_sample(
    params: Params, C: float, tol_quad: float = TOL_QUAD, tol_root: float = 1e-12
) -> PeriodSample:
    """Turning points, full period T and angular period P at energy C."""
    rp = roots(params, C, tol_root)
    n, m, H = params.n, params.m, params.H
    assert rp.t2 * rp.t2 < C, "C - t^2 must stay positive on [t1, t2]"
    T, P, ok = kernels.period_pair(n, m, H, C, rp.t1, rp.t2, tol_quad)
    if not ok:
        # panel budget exhausted: redo both integrals with tanh-sinh in u
        f = _kernels_py.period_integrand(n, m, H, C, rp.t1, rp.t2)
        T = 2.0 * tanh_sinh(lambda u: f(u)[0], 0.0, math.pi, tol_quad).value
        P = 2.0 * tanh_sinh(lambda u: f(u)[1], 0.0, math.pi, tol_quad).value
    return PeriodSample(C=C, t1=rp.t1, t2=rp.t2, T=T, P=P)


def half_period_T(params: Params, C: float, tol_quad: float = TOL_QUAD) -> float:
    """Full period T = 2 * int dt / sqrt(q) of w(s).

    The name follows the integral's ``T/2`` over a half-oscillation; the
    return value is the complete period.
    """
    return period_sample(params, C, tol_quad).T


def period_P(params: Params, C: float, tol_quad: float = TOL_QUAD) -> float:
    return period_sample(params, C, tol_quad).P


def period_P_scaled(params: Params, C: float, tol_quad: float = TOL_QUAD) -> float:
    """P evaluated in the rescaled variable x = t / sqrt(C).

    Independent evaluation path used to cross-check :func:`period_P`:

        P = 2 int_{x1}^{x2} x Lam(x) / ((1 - x^2) sqrt(Q(x))) dx,
        Q(x) = 1 - x^2 (1 + Lam(x)^2),  Lam(x) = ((sqrt(C) x)^-n + H)^(1/m).

    Q is evaluated directly, with a second-order expansion inside a thin
    band at each turning point.  The band width balances the expansion's
    truncation error against the cancellation error of the direct form.
    """
    n, m, H = params.n, params.m, params.H
    rp = roots(params, C)
    sc = math.sqrt(C)
    x1, x2 = rp.t1 / sc, rp.t2 / sc
    L = x2 - x1
    half_log_c = 0.5 * math.log(C)
    log_h = math.log(H) if H > 0 else -math.inf

    def big_lam(x):
        lx = -n * (math.log(x) + half_log_c)
        hi, lo = max(lx, log_h), min(lx, log_h)
        return math.exp((hi + math.log1p(math.exp(lo - hi))) / m)

    def Q(x):
        lam_x = big_lam(x)
        return 1.0 - x * x * (1.0 + lam_x * lam_x)

    # Q'(x) = q'(sqrt(C) x) / sqrt(C), Q''(x) = q''(sqrt(C) x)
    dQ1 = q_prime(params, rp.t1) / sc
    dQ2 = q_prime(params, rp.t2) / sc
    d2Q1 = q_double_prime(params, rp.t1)
    d2Q2 = q_double_prime(params, rp.t2)
    eps = 2.2e-16
    band1 = (eps * min(x1, L) ** 2 / abs(dQ1)) ** (1 / 3)
    band2 = (eps * min(x2, L) ** 2 / abs(dQ2)) ** (1 / 3)

    def integrand(u):
        d1 = L * math.sin(0.5 * u) ** 2
        d2 = L * math.cos(0.5 * u) ** 2
        x = x1 + d1 if d1 <= d2 else x2 - d2
        psi = Q(x) / (d1 * d2)
        if d1 < band1 or (d1 <= d2 and not psi > 0):
            psi = (dQ1 + 0.5 * d2Q1 * d1) / d2
        elif d2 < band2 or (d2 < d1 and not psi > 0):
            psi = (-dQ2 + 0.5 * d2Q2 * d2) / d1
        return x * big_lam(x) / ((1.0 - x * x) * math.sqrt(psi))

    return 2.0 * gauss_kronrod(integrand, 0.0, math.pi, rtol=tol_quad).value


def limit_at_c0(params: Params) -> float:
    """Limit B of P as C decreases to c0 (the harmonic, small-oscillation limit)."""
    crit = critical_point(params)
    n, m, H = params.n, params.m, params.H
    # c0 - v0^2 = v0^2 lambda(v0)^2, formed without subtraction
    _, lX = kernels.log_x(crit.v0, n, m, H)
    gap = math.exp(2.0 / m * lX + 2.0 * math.log(crit.v0))
    return 2.0 * math.pi * math.sqrt(crit.c0) / (math.sqrt(crit.a) * math.sqrt(gap))


def limit_at_c0_printed(params: Params) -> float | None:
    """Specialised closed forms of B: m = 4, m = 2 and H = 0 (any m)."""
    n, m, H = params.n, params.m, params.H
    if H == 0:
        return math.sqrt(2.0) * math.pi
    if m == 4:
        return 2.0 * math.pi / (n * (n - 4) * H + 4) ** 0.25
    if m == 2:
        return 2.0 * math.pi / math.sqrt(n * H + 2)
    return None


def limit_at_infinity(params: Params) -> float:
    """Limit A = 2 arctan(H^(-1/m)) of P as C -> infinity."""
    if not params.H > 0:
        raise DomainError("the C -> infinity limit needs H_m > 0 (it is pi at H_m = 0)")
    return 2.0 * math.atan2(1.0, params.H ** (1.0 / params.m))


def bounds(params: Params) -> PeriodBounds:
    params.require_positive()
    return PeriodBounds(A=limit_at_infinity(params), B=limit_at_c0(params))
