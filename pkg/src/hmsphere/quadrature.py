"""Adaptive quadrature rules used by the period integrals.

Two schemes live here:

* :func:`gauss_kronrod`: adaptive 7/15-point Gauss--Kronrod panels, the
  workhorse for the smooth integrands produced by the cosine substitution.
* :func:`tanh_sinh`: double-exponential quadrature, tolerant of integrable
  endpoint singularities.  Used as the fallback when the panel scheme runs
  out of panels.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

# 15-point Kronrod abscissae on [-1, 1] (positive half, descending) and
# weights; every odd-indexed node is also a 7-point Gauss node.
XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

MAX_PANELS = 400


class QuadratureResult(tuple):
    """``(value, error_estimate, converged)``; unpacks like a tuple."""

    __slots__ = ()

    def __new__(cls, value, error, converged):
        return super().__new__(cls, (value, error, converged))

    value = property(lambda self: self[0])
    error = property(lambda self: self[1])
    converged = property(lambda self: self[2])


def _gk15(f, a, b, width):
    """One Kronrod panel for a vector-valued integrand of size ``width``."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    kron = [WGK[7] * fc[i] for i in range(width)]
    gauss = [WG[3] * fc[i] for i in range(width)]
    for j in range(7):
        dx = h * XGK[j]
        f1 = f(c - dx)
        f2 = f(c + dx)
        for i in range(width):
            s = f1[i] + f2[i]
            kron[i] += WGK[j] * s
            if j % 2 == 1:
                gauss[i] += WG[j // 2] * s
    return [h * k for k in kron], [abs(h * (k - g)) for k, g in zip(kron, gauss)]


def gauss_kronrod_vec(
    f: Callable[[float], Sequence[float]],
    a: float,
    b: float,
    width: int,
    rtol: float = 1e-10,
    atol: float = 0.0,
    max_panels: int = MAX_PANELS,
):
    """Integrate a vector-valued ``f`` over ``[a, b]`` with shared panels.

    Globally adaptive: the panel with the worst error (relative to each
    component's goal ``max(atol, rtol * |I_i|)``) is bisected until the
    summed error meets the goal or ``max_panels`` is reached.

    Returns ``(values, errors, converged)``.
    """
    vals, errs = _gk15(f, a, b, width)
    panels = [(a, b, vals, errs)]
    while True:
        total = [sum(p[2][i] for p in panels) for i in range(width)]
        err = [sum(p[3][i] for p in panels) for i in range(width)]
        goal = [max(atol, rtol * abs(v)) for v in total]
        if all(e <= g for e, g in zip(err, goal)):
            return total, err, True
        if len(panels) >= max_panels:
            return total, err, False
        worst = max(
            range(len(panels)),
            key=lambda j: max(panels[j][3][i] / (goal[i] or 1e-300) for i in range(width)),
        )
        lo, hi, _, _ = panels.pop(worst)
        mid = 0.5 * (lo + hi)
        lv, le = _gk15(f, lo, mid, width)
        rv, re_ = _gk15(f, mid, hi, width)
        panels.append((lo, mid, lv, le))
        panels.append((mid, hi, rv, re_))


def gauss_kronrod(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = 1e-10,
    atol: float = 0.0,
    max_panels: int = MAX_PANELS,
) -> QuadratureResult:
    """Adaptive Gauss--Kronrod (G7/K15) integral of a scalar function."""
    vals, errs, ok = gauss_kronrod_vec(lambda x: (f(x),), a, b, 1, rtol, atol, max_panels)
    return QuadratureResult(vals[0], errs[0], ok)


def tanh_sinh(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = 1e-10,
    max_level: int = 12,
) -> QuadratureResult:
    """Double-exponential quadrature on ``[a, b]``.

    Halves the step until two successive levels agree to ``rtol``.  Nodes are
    built from the distance to the nearest endpoint, so ``f`` is never
    evaluated exactly at ``a`` or ``b``.  With a singular integrand and a
    nonzero endpoint the accuracy is capped by how close to that endpoint a
    double can get (about 1e-8 for an inverse square root at 1.0).
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    h = 1.0
    tmax = 6.0  # weights are far below any double beyond this

    def contrib(t):
        sh = 0.5 * math.pi * math.sinh(t)
        if sh > 700.0:
            return 0.0
        ch = math.cosh(sh)
        w = 0.5 * math.pi * math.cosh(t) / (ch * ch)
        # 1 - tanh(sh) without cancellation
        comp = 1.0 / (math.exp(sh) * ch)
        x_hi = b - half * comp
        x_lo = a + half * comp
        # nodes that round onto an endpoint are dropped
        return w * ((f(x_hi) if x_hi < b else 0.0) + (f(x_lo) if x_lo > a else 0.0))

    total = 0.5 * math.pi * f(mid)
    k = 1
    while k * h <= tmax:
        total += contrib(k * h)
        k += 1
    estimate = half * h * total
    err = math.inf
    for _ in range(max_level):
        h *= 0.5
        k = 1
        while k * h <= tmax:
            total += contrib(k * h)
            k += 2
        new = half * h * total
        err = abs(new - estimate)
        estimate = new
        if err <= rtol * abs(new):
            return QuadratureResult(new, err, True)
    return QuadratureResult(estimate, err, False)
