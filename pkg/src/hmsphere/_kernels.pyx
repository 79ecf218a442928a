# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: potential q(v; C), turning points, period integrals.

Mirror of ``_kernels_py``; both must agree to rounding.
"""

from libc.math cimport exp, log, log1p, expm1, sqrt, sin, cos, fabs, M_PI

cdef enum:
    MAX_PANELS = 400


cdef double[8] XGK = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
]
cdef double[8] WGK = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
cdef double[4] WG = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]


cdef inline void _log_x(double v, double n, double h, double* lx, double* lX) noexcept nogil:
    cdef double lh
    lx[0] = -n * log(v)
    if h > 0.0:
        lh = log(h)
        if lx[0] > lh:
            lX[0] = lx[0] + log1p(exp(lh - lx[0]))
        else:
            lX[0] = lh + log1p(exp(lx[0] - lh))
    else:
        lX[0] = lx[0]


cdef inline double _lam(double v, double n, double m, double h) noexcept nogil:
    cdef double lx, lX
    _log_x(v, n, h, &lx, &lX)
    return exp(lX / m)


cdef inline double _q(double v, double n, double m, double h, double c) noexcept nogil:
    cdef double lx, lX
    _log_x(v, n, h, &lx, &lX)
    return c - exp(2.0 / m * lX + 2.0 * log(v)) - v * v


cdef inline double _dq(double v, double n, double m, double h) noexcept nogil:
    cdef double lx, lX
    _log_x(v, n, h, &lx, &lX)
    return 2.0 * v * (-exp(2.0 / m * lX) + n / m * exp(lx + (2.0 - m) / m * lX) - 1.0)


cdef inline double _d2q(double v, double n, double m, double h) noexcept nogil:
    cdef double lx, lX, pre, s
    _log_x(v, n, h, &lx, &lX)
    pre = (2.0 - 2.0 * m) / m * lX
    s = (2.0 * n * n - 3.0 * n * m + m * m) * exp(pre + 2.0 * lx)
    if h > 0.0:
        s += m * (n * n - 3.0 * n + 2.0 * m) * h * exp(pre + lx)
        s += m * m * h * h * exp(pre)
    return -2.0 / (m * m) * s - 2.0


cdef double _f_drop(double tk, double d, double n, double m, double h) noexcept nogil:
    cdef double rho = d / tk
    cdef double lp = log1p(rho)
    cdef double lx, lX, lx2, lX2, dlogX, dg, g
    _log_x(tk, n, h, &lx, &lX)
    if fabs(n * lp) <= 0.5:
        dlogX = log1p(exp(lx - lX) * expm1(-n * lp))
    else:
        _log_x(tk + d, n, h, &lx2, &lX2)
        dlogX = lX2 - lX
    dg = 2.0 / m * dlogX + 2.0 * lp
    g = 2.0 / m * lX + 2.0 * log(tk)
    return -exp(g) * expm1(dg) - tk * tk * rho * (2.0 + rho)


cdef double _solve_log(double n, double m, double h, double c,
                       double xa, double xb, double rtol, int maxiter) noexcept nogil:
    cdef double fa = _q(exp(xa), n, m, h, c)
    cdef double fb = _q(exp(xb), n, m, h, c)
    cdef double x, fx
    cdef int side = 0
    cdef int it = 0
    if fa == 0.0:
        return exp(xa)
    if fb == 0.0:
        return exp(xb)
    while it < maxiter and xb - xa > rtol:
        it += 1
        x = (xa * fb - xb * fa) / (fb - fa)
        if not (xa < x < xb) or side == 2 or side == -2:
            x = 0.5 * (xa + xb)
            side = 0
        fx = _q(exp(x), n, m, h, c)
        if fx == 0.0:
            return exp(x)
        if (fx > 0.0) == (fa > 0.0):
            xa = x
            fa = fx
            if side == -1:
                fb *= 0.5
            side = -1 if side >= 0 else side - 1
        else:
            xb = x
            fb = fx
            if side == 1:
                fa *= 0.5
            side = 1 if side <= 0 else side + 1
    if fabs(fa) < fabs(fb):
        return exp(xa)
    return exp(xb)


def log_x(double v, double n, double m, double h):
    cdef double lx, lX
    _log_x(v, n, h, &lx, &lX)
    return lx, lX


def lam(double v, double n, double m, double h):
    return _lam(v, n, m, h)


def q(double v, double n, double m, double h, double c):
    return _q(v, n, m, h, c)


def dq(double v, double n, double m, double h):
    return _dq(v, n, m, h)


def d2q(double v, double n, double m, double h):
    return _d2q(v, n, m, h)


def f_drop(double tk, double d, double n, double m, double h):
    return _f_drop(tk, d, n, m, h)


def turning_points(double n, double m, double h, double c, double v0,
                   double rtol=1e-12, int maxiter=200):
    """Turning points ``(t1, t2)`` of q(.; c) around the maximum at ``v0``."""
    cdef double x0 = log(v0)
    cdef double step = log(2.0)
    cdef double lo = x0 - step
    cdef int i
    cdef bint found = False
    cdef double t1, t2
    with nogil:
        for i in range(4000):
            if _q(exp(lo), n, m, h, c) < 0.0:
                found = True
                break
            lo -= step
    if not found:
        raise ArithmeticError("could not bracket the inner turning point")
    with nogil:
        t1 = _solve_log(n, m, h, c, lo, x0, rtol, maxiter)
        t2 = _solve_log(n, m, h, c, x0, 0.5 * log(c), rtol, maxiter)
    return t1, t2


cdef struct PeriodCtx:
    double n, m, h, c, sc, t1, t2, L, skew, dq1, dq2


cdef inline void _integrand(PeriodCtx* k, double u, double* fT, double* fP) noexcept nogil:
    cdef double s = sin(0.5 * u)
    cdef double co = cos(0.5 * u)
    cdef double d1 = k.L * s * s
    cdef double d2 = k.L * co * co
    cdef double t, qt, psi, w
    if d1 <= d2:
        t = k.t1 + d1
        qt = _f_drop(k.t1, d1, k.n, k.m, k.h) + k.skew * (d1 / k.L)
    else:
        t = k.t2 - d2
        qt = _f_drop(k.t2, -d2, k.n, k.m, k.h) - k.skew * (d2 / k.L)
    psi = qt / (d1 * d2)
    if not psi > 0.0:
        if d1 <= d2:
            psi = k.dq1 / d2
        else:
            psi = -k.dq2 / d1
    w = 1.0 / sqrt(psi)
    fT[0] = w
    fP[0] = k.sc * t * _lam(t, k.n, k.m, k.h) / (k.c - t * t) * w


cdef void _gk15(PeriodCtx* k, double a, double b, double* val, double* err) noexcept nogil:
    cdef double c = 0.5 * (a + b)
    cdef double hw = 0.5 * (b - a)
    cdef double kT, kP, gT, gP, f1T, f1P, f2T, f2P, fcT, fcP, dx
    cdef int j
    _integrand(k, c, &fcT, &fcP)
    kT = WGK[7] * fcT
    kP = WGK[7] * fcP
    gT = WG[3] * fcT
    gP = WG[3] * fcP
    for j in range(7):
        dx = hw * XGK[j]
        _integrand(k, c - dx, &f1T, &f1P)
        _integrand(k, c + dx, &f2T, &f2P)
        kT += WGK[j] * (f1T + f2T)
        kP += WGK[j] * (f1P + f2P)
        if j % 2 == 1:
            gT += WG[j // 2] * (f1T + f2T)
            gP += WG[j // 2] * (f1P + f2P)
    val[0] = hw * kT
    val[1] = hw * kP
    err[0] = fabs(hw * (kT - gT))
    err[1] = fabs(hw * (kP - gP))


cdef bint _adaptive(PeriodCtx* k, double rtol, double* out) noexcept nogil:
    cdef double lo[MAX_PANELS]
    cdef double hi[MAX_PANELS]
    cdef double vT[MAX_PANELS]
    cdef double vP[MAX_PANELS]
    cdef double eT[MAX_PANELS]
    cdef double eP[MAX_PANELS]
    cdef double val[2]
    cdef double err[2]
    cdef int npan = 1
    cdef int i, worst
    cdef double sT, sP, rT, rP, gT, gP, score, best, mid, a, b
    _gk15(k, 0.0, M_PI, val, err)
    lo[0] = 0.0
    hi[0] = M_PI
    vT[0] = val[0]
    vP[0] = val[1]
    eT[0] = err[0]
    eP[0] = err[1]
    while True:
        sT = 0.0
        sP = 0.0
        rT = 0.0
        rP = 0.0
        for i in range(npan):
            sT += vT[i]
            sP += vP[i]
            rT += eT[i]
            rP += eP[i]
        gT = rtol * fabs(sT)
        gP = rtol * fabs(sP)
        if gT == 0.0:
            gT = 1e-300
        if gP == 0.0:
            gP = 1e-300
        out[0] = sT
        out[1] = sP
        if rT <= gT and rP <= gP:
            return True
        if npan + 1 >= MAX_PANELS:
            return False
        worst = 0
        best = -1.0
        for i in range(npan):
            score = eT[i] / gT
            if eP[i] / gP > score:
                score = eP[i] / gP
            if score > best:
                best = score
                worst = i
        a = lo[worst]
        b = hi[worst]
        mid = 0.5 * (a + b)
        _gk15(k, a, mid, val, err)
        hi[worst] = mid
        vT[worst] = val[0]
        vP[worst] = val[1]
        eT[worst] = err[0]
        eP[worst] = err[1]
        _gk15(k, mid, b, val, err)
        lo[npan] = mid
        hi[npan] = b
        vT[npan] = val[0]
        vP[npan] = val[1]
        eT[npan] = err[0]
        eP[npan] = err[1]
        npan += 1


def period_pair(double n, double m, double h, double c, double t1, double t2,
                double rtol=1e-10):
    """Full period T and angular period P at energy ``c``.

    Returns ``(T, P, converged)``.
    """
    cdef PeriodCtx k
    cdef double out[2]
    cdef bint ok
    k.n = n
    k.m = m
    k.h = h
    k.c = c
    k.sc = sqrt(c)
    k.t1 = t1
    k.t2 = t2
    k.L = t2 - t1
    with nogil:
        k.skew = -_f_drop(t1, k.L, n, m, h)
        k.dq1 = _dq(t1, n, m, h)
        k.dq2 = _dq(t2, n, m, h)
        ok = _adaptive(&k, rtol, out)
    return 2.0 * out[0], 2.0 * out[1], bool(ok)
