"""Pure-Python hot kernels.

Same call signatures as the compiled ``_kernels`` extension; selected by
:mod:`hmsphere.kernels` when the extension is unavailable.
"""

from __future__ import annotations

import math

from .quadrature import gauss_kronrod_vec

def log_x(v, n, m, h):
    """Return ``(log v^-n, log(v^-n + h))`` without forming ``v^-n``."""
    lx = -n * math.log(v)
    if h > 0.0:
        lh = math.log(h)
        if lx > lh:
            return lx, lx + math.log1p(math.exp(lh - lx))
        return lx, lh + math.log1p(math.exp(lx - lh))
    return lx, lx


def lam(v, n, m, h):
    return math.exp(log_x(v, n, m, h)[1] / m)


def q(v, n, m, h, c):
    lx, lX = log_x(v, n, m, h)
    return c - math.exp(2.0 / m * lX + 2.0 * math.log(v)) - v * v


def dq(v, n, m, h):
    lx, lX = log_x(v, n, m, h)
    return 2.0 * v * (-math.exp(2.0 / m * lX) + n / m * math.exp(lx + (2.0 - m) / m * lX) - 1.0)


def d2q(v, n, m, h):
    lx, lX = log_x(v, n, m, h)
    pre = (2.0 - 2.0 * m) / m * lX
    s = (2 * n * n - 3 * n * m + m * m) * math.exp(pre + 2.0 * lx)
    if h > 0.0:
        s += m * (n * n - 3 * n + 2 * m) * h * math.exp(pre + lx)
        s += m * m * h * h * math.exp(pre)
    return -2.0 / (m * m) * s - 2.0


def _solve_log(n, m, h, c, xa, xb, rtol, maxiter):
    """Root of q(exp(x)) on [xa, xb] by Illinois false position + bisection.

    Returns ``(v, iterations)``; ``rtol`` is relative in ``v`` (absolute in x).
    """
    fa = q(math.exp(xa), n, m, h, c)
    fb = q(math.exp(xb), n, m, h, c)
    if fa == 0.0:
        return math.exp(xa), 0
    if fb == 0.0:
        return math.exp(xb), 0
    side = 0
    it = 0
    while it < maxiter and xb - xa > rtol:
        it += 1
        x = (xa * fb - xb * fa) / (fb - fa)
        if not (xa < x < xb) or side == 2 or side == -2:
            x = 0.5 * (xa + xb)
            side = 0
        fx = q(math.exp(x), n, m, h, c)
        if fx == 0.0:
            return math.exp(x), it
        if (fx > 0.0) == (fa > 0.0):
            xa, fa = x, fx
            if side == -1:
                fb *= 0.5
            side = -1 if side >= 0 else side - 1
        else:
            xb, fb = x, fx
            if side == 1:
                fa *= 0.5
            side = 1 if side <= 0 else side + 1
    x = xa if abs(fa) < abs(fb) else xb
    return math.exp(x), it


def turning_points(n, m, h, c, v0, rtol=1e-12, maxiter=200):
    """Turning points ``(t1, t2)`` of q(.; c) around the maximum at ``v0``.

    Caller guarantees ``q(v0) > 0``.
    """
    x0 = math.log(v0)
    lo = x0 - math.log(2.0)
    for _ in range(4000):
        if q(math.exp(lo), n, m, h, c) < 0.0:
            break
        lo -= math.log(2.0)
    else:
        raise ArithmeticError("could not bracket the inner turning point")
    t1, _ = _solve_log(n, m, h, c, lo, x0, rtol, maxiter)
    t2, _ = _solve_log(n, m, h, c, x0, 0.5 * math.log(c), rtol, maxiter)
    return t1, t2


def f_drop(tk, d, n, m, h):
    """F(tk) - F(tk + d) with F(v) = v^2 lambda(v)^2 + v^2, accurate relative to |d|.

    ``d`` may be negative (``d > -tk``).  Since q = C - F, this is
    q(tk + d) - q(tk) without the cancellation of subtracting two O(C) values.
    """
    rho = d / tk
    lp = math.log1p(rho)
    lx, lX = log_x(tk, n, m, h)
    if abs(n * lp) <= 0.5:
        frac = math.exp(lx - lX)
        dlogX = math.log1p(frac * math.expm1(-n * lp))
    else:
        dlogX = log_x(tk + d, n, m, h)[1] - lX
    dg = 2.0 / m * dlogX + 2.0 * lp
    g = 2.0 / m * lX + 2.0 * math.log(tk)
    return -math.exp(g) * math.expm1(dg) - tk * tk * rho * (2.0 + rho)


def period_integrand(n, m, h, c, t1, t2):
    """Integrands of T/2 and P/2 in the variable u of t = t1 + (t2 - t1) sin^2(u/2).

    The substitution turns the inverse square-root endpoint singularities
    into a smooth function 1/sqrt(psi) on [0, pi], psi = q / ((t - t1)(t2 - t)).
    q is rebuilt from the nearer turning point so psi keeps full relative
    accuracy at both ends.
    """
    L = t2 - t1
    # F(t2) - F(t1); nonzero only through root error, spread linearly
    skew = -f_drop(t1, L, n, m, h)
    dq1 = dq(t1, n, m, h)
    dq2 = dq(t2, n, m, h)
    sc = math.sqrt(c)

    def integrand(u):
        s = math.sin(0.5 * u)
        co = math.cos(0.5 * u)
        d1 = L * s * s
        d2 = L * co * co
        if d1 <= d2:
            t = t1 + d1
            qt = f_drop(t1, d1, n, m, h) + skew * (d1 / L)
        else:
            t = t2 - d2
            qt = f_drop(t2, -d2, n, m, h) - skew * (d2 / L)
        psi = qt / (d1 * d2)
        if not psi > 0.0:
            # first-order endpoint limit
            psi = dq1 / d2 if d1 <= d2 else -dq2 / d1
        w = 1.0 / math.sqrt(psi)
        return (w, sc * t * lam(t, n, m, h) / (c - t * t) * w)

    return integrand


def period_pair(n, m, h, c, t1, t2, rtol=1e-10):
    """Full period T and angular period P at energy ``c``.

    Returns ``(T, P, converged)``.
    """
    f = period_integrand(n, m, h, c, t1, t2)
    vals, _, ok = gauss_kronrod_vec(f, 0.0, math.pi, 2, rtol)
    return 2.0 * vals[0], 2.0 * vals[1], ok
