"""Desk-scale invariant checks run by ``hmsphere verify``.

Each check returns ``(residual, limit)`` and passes when the residual is
finite and below the limit.  Random parameter draws come from the
``random.Random`` instance handed in, so a fixed seed reproduces a run.
"""

from __future__ import annotations

import io
import math
import random
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import _kernels_py, kernels
from .curvature import (
    Params,
    elementary_symmetric,
    h2_from_scalar,
    mth_mean_curvature,
    mu_from_lambda,
    scalar_curvature,
)
from .existence import (
    ExistenceQuery,
    admissible_range,
    admissible_range_numeric,
    exists_embedded,
    solve_for_period,
)
from .oracles import (
    clipped_period_integrals,
    elementary_symmetric_bruteforce,
    q_double_prime_fd,
    q_prime_fd,
    scalar_curvature_bruteforce,
    scan_roots,
)
from .period import (
    limit_at_c0,
    limit_at_c0_printed,
    limit_at_infinity,
    period_P,
    period_P_scaled,
    period_sample,
)
from .potential import critical_point, critical_point_closed_form, q_double_prime, q_prime, roots
from .profile import closure_check, curve_point, integrate_profile

SUITES = ("curvature", "potential", "period", "limits", "existence", "profile", "cli")

_REGISTRY: list[tuple[str, str, Callable]] = []


@dataclass
class CheckResult:
    ident: str
    suite: str
    passed: bool
    residual: float
    limit: float
    seconds: float
    detail: str = ""


def check(suite: str, ident: str):
    def deco(fn):
        _REGISTRY.append((suite, f"{suite}.{ident}", fn))
        return fn

    return deco


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def _random_params(rng, n_lo=3, n_hi=10, h_lo=-2.0, h_hi=1.0):
    n = rng.randint(n_lo, n_hi)
    return Params(n, rng.randint(1, n - 1), 10 ** rng.uniform(h_lo, h_hi))


# -- curvature -------------------------------------------------------------


@check("curvature", "symmetric_vs_enumeration")
def _(rng):
    worst = 0.0
    for _ in range(200):
        vals = [rng.uniform(0.1, 3.0) for _ in range(rng.randint(1, 8))]
        m = rng.randint(1, len(vals))
        worst = max(worst, _rel(elementary_symmetric(vals, m), elementary_symmetric_bruteforce(vals, m)))
    return worst, 1e-12


@check("curvature", "mu_keeps_Hm")
def _(rng):
    worst = 0.0
    for _ in range(200):
        p = _random_params(rng)
        lam = (p.H + rng.uniform(0.01, 5.0)) ** (1.0 / p.m)
        mu = mu_from_lambda(p, lam)
        worst = max(worst, _rel(mth_mean_curvature([lam] * (p.n - 1) + [mu], p.m), p.H))
    return worst, 1e-10


@check("curvature", "gauss_equation")
def _(rng):
    worst = 0.0
    for _ in range(100):
        vals = [rng.uniform(-2.0, 2.0) for _ in range(rng.randint(2, 8))]
        R = scalar_curvature(len(vals), vals).R
        worst = max(worst, abs(R - scalar_curvature_bruteforce(vals)) / (1 + abs(R)))
        n = len(vals)
        worst = max(worst, abs(h2_from_scalar(R, n) - mth_mean_curvature(vals, 2)))
    return worst, 1e-12


# -- potential -------------------------------------------------------------


@check("potential", "closed_form_critical_data")
def _(rng):
    worst = 0.0
    cases = [Params(n, 4, H) for n in range(5, 11) for H in (0.1, 0.5, 1.0, 2.0, 10.0)]
    cases += [Params(n, 2, H) for n in range(3, 9) for H in (0.1, 1.0, 7.0)]
    for p in cases:
        num, ref = critical_point(p), critical_point_closed_form(p)
        worst = max(worst, _rel(num.v0, ref.v0), _rel(num.c0, ref.c0), _rel(num.a, ref.a))
    return worst, 1e-10


def _derivative_points(rng, count=40):
    for _ in range(count):
        p = _random_params(rng)
        yield p, critical_point(p).v0 * rng.uniform(0.5, 2.0)


@check("potential", "q_prime_vs_finite_differences")
def _(rng):
    worst = 0.0
    for p, v in _derivative_points(rng):
        d = q_prime(p, v)
        worst = max(worst, abs(d - q_prime_fd(p, v)) / max(abs(d), 1.0))
    return worst, 1e-6


@check("potential", "q_double_prime_vs_finite_differences")
def _(rng):
    worst = 0.0
    for p, v in _derivative_points(rng):
        worst = max(worst, _rel(q_double_prime(p, v), q_double_prime_fd(p, v)))
    return worst, 1e-5


@check("potential", "strict_concavity")
def _(rng):
    # margin of q'' below -2 must stay positive; report its negative
    worst = -math.inf
    for p, v in _derivative_points(rng, 200):
        worst = max(worst, q_double_prime(p, v) + 2.0)
    return worst, 0.0


@check("potential", "roots_vs_grid_scan")
def _(rng):
    bad = 0
    for _ in range(20):
        p = _random_params(rng)
        crit = critical_point(p)
        C = crit.c0 * (1 + 10 ** rng.uniform(-2, 2))
        rp = roots(p, C)
        br = scan_roots(p, C, num=50_001)
        ok = (
            len(br) == 2
            and br[0][0] <= rp.t1 <= br[0][1]
            and br[1][0] <= rp.t2 <= br[1][1]
            and rp.t1 < crit.v0 < rp.t2 < math.sqrt(C)
        )
        bad += not ok
    return float(bad), 0.5


# -- period ----------------------------------------------------------------


@check("period", "cosine_substitution_vs_clipped")
def _(rng):
    worst = 0.0
    for _ in range(10):
        p = _random_params(rng)
        C = critical_point(p).c0 * (1 + 10 ** rng.uniform(-2, 2))
        s = period_sample(p, C)
        T, P = clipped_period_integrals(p, C, s.t1, s.t2)
        worst = max(worst, _rel(s.T, T), _rel(s.P, P))
    return worst, 1e-6


@check("period", "rescaled_form_agrees")
def _(rng):
    worst = 0.0
    for _ in range(10):
        p = _random_params(rng)
        C = critical_point(p).c0 * (1 + 10 ** rng.uniform(-2, 2))
        worst = max(worst, _rel(period_P_scaled(p, C), period_P(p, C)))
    return worst, 1e-9


@check("period", "backend_parity")
def _(rng):
    worst = 0.0
    for _ in range(10):
        p = _random_params(rng)
        crit = critical_point(p)
        C = crit.c0 * (1 + 10 ** rng.uniform(-3, 3))
        t1, t2 = _kernels_py.turning_points(p.n, p.m, p.H, C, crit.v0)
        a = _kernels_py.period_pair(p.n, p.m, p.H, C, t1, t2)
        b = kernels.period_pair(p.n, p.m, p.H, C, t1, t2)
        worst = max(worst, _rel(a[0], b[0]), _rel(a[1], b[1]))
    return worst, 1e-9


# -- limits ----------------------------------------------------------------


@check("limits", "harmonic_limit_convergence")
def _(rng):
    p = Params(5, 4, 1.0)
    c0 = critical_point(p).c0
    target = 2 * math.pi / math.sqrt(3)
    errs = [abs(period_P(p, c0 * (1 + 10.0 ** -j)) - target) for j in range(2, 7)]
    if any(b >= a for a, b in zip(errs, errs[1:])):
        return math.inf, 1e-2
    return errs[-1], 1e-2


@check("limits", "large_C_limit")
def _(rng):
    worst = 0.0
    for n in range(5, 11):
        for H in (0.1, 0.5, 1.0, 2.0, 10.0):
            p = Params(n, 4, H)
            worst = max(worst, abs(period_P(p, 1e8) - limit_at_infinity(p)))
    return worst, 1e-2


@check("limits", "generic_vs_printed_B")
def _(rng):
    worst = 0.0
    for _ in range(30):
        n = rng.randint(5, 12)
        H = 10 ** rng.uniform(-2, 1)
        for m in (2, 4):
            p = Params(n, m, H)
            worst = max(worst, _rel(limit_at_c0(p), limit_at_c0_printed(p)))
    return worst, 1e-10


@check("limits", "small_H_limit")
def _(rng):
    worst = 0.0
    for n in range(3, 9):
        for m in range(1, n):
            worst = max(worst, _rel(limit_at_c0(Params(n, m, 1e-10)), math.sqrt(2) * math.pi))
    return worst, 1e-5


# -- existence -------------------------------------------------------------


@check("existence", "range_closed_vs_numeric")
def _(rng):
    worst = 0.0
    for n, m, k in [(5, 4, 3), (6, 4, 4), (3, 2, 2), (4, 2, 3), (3, 1, 2), (5, 1, 3)]:
        worst = max(worst, _rel(admissible_range(n, m, k).H_hi, admissible_range_numeric(n, m, k).H_hi))
    return worst, 1e-8


@check("existence", "range_endpoint_identities")
def _(rng):
    worst = 0.0
    cases = [(n, 4, k) for k in (3, 4, 5) for n in (5, 6)]
    cases += [(n, 2, k) for k in (2, 3) for n in (3, 4)]
    cases += [(n, 1, k) for k in (2, 3) for n in range(2, 6)]
    for n, m, k in cases:
        lo, hi = admissible_range(n, m, k)
        if lo > 0:
            worst = max(worst, abs(limit_at_infinity(Params(n, m, lo)) - 2 * math.pi / k))
        worst = max(worst, abs(limit_at_c0(Params(n, m, hi)) - 2 * math.pi / k))
    return worst, 1e-10


@check("existence", "certificate_reproduces")
def _(rng):
    p = Params(5, 4, 1.0)
    cert = exists_embedded(ExistenceQuery(p, 3))
    if cert.status != "certified" or not cert.C_star > critical_point(p).c0:
        return math.inf, 1e-9
    return max(cert.residual, abs(period_P(p, cert.C_star) - cert.P_achieved)), 1e-9


@check("existence", "small_H_half_turn")
def _(rng):
    worst = 0.0
    for m in range(1, 6):
        for H in (0.05, 0.02, 0.01):
            cert = solve_for_period(Params(6, m, H), math.pi)
            if cert.status == "certified":
                worst = max(worst, cert.residual)
                break
        else:
            return math.inf, 1e-9
    return worst, 1e-9


@check("existence", "above_range_unreachable")
def _(rng):
    out = solve_for_period(Params(5, 4, 20.0), 2 * math.pi / 3)
    return (0.0 if out.status == "unreachable" else 1.0), 0.5


# -- profile ---------------------------------------------------------------


@check("profile", "energy_ten_periods")
def _(rng):
    p = _random_params(rng, 3, 7, -1.0, 0.5)
    C = critical_point(p).c0 * (1 + 10 ** rng.uniform(-1, 1))
    prof = integrate_profile(p, C, 10, 100)
    return closure_check(prof, 10).max_energy_drift, 1e-8


@lru_cache(maxsize=None)
def _profile_case(seed_key: str, tol_ode: float):
    rng = random.Random(seed_key)
    p = _random_params(rng, 3, 7, -1.0, 0.5)
    C = critical_point(p).c0 * (1 + 10 ** rng.uniform(-1, 1))
    return integrate_profile(p, C, 1, 200, tol_ode=tol_ode)


def _one_period(rng, tol_ode=1e-10):
    return _profile_case(str(rng.random()), tol_ode)


@check("profile", "return_to_turning_point")
def _(rng):
    prof = _one_period(rng)
    return max(abs(prof[-1].w - prof.t1), abs(prof[-1].w_dot)), 1e-7


@check("profile", "theta_matches_quadrature")
def _(rng):
    prof = _one_period(rng)
    return abs(prof[-1].theta - prof.P), 1e-8


@check("profile", "reflection_symmetry")
def _(rng):
    prof = _one_period(rng)
    first, mid, last = prof[0], prof[100], prof[-1]
    return abs((last.theta - mid.theta) - (mid.theta - first.theta)), 1e-8


@check("profile", "theta_prime_two_forms")
def _(rng):
    # sqrt(1 - r^2 - r'^2) amplifies energy drift where r lambda is small
    prof = _one_period(rng, tol_ode=1e-13)
    sc = math.sqrt(prof.C)
    worst = 0.0
    for s in prof:
        g = 1 - s.r ** 2 - (s.w_dot / sc) ** 2
        worst = max(worst, abs(math.sqrt(g) - s.r * s.lam) / (1 - s.r ** 2))
    return worst, 1e-10


@check("profile", "orbit_radius_identity")
def _(rng):
    prof = _one_period(rng)
    worst = max(_rel((s.w_dot / s.w) ** 2 + s.lam ** 2 + 1, 1 / s.r ** 2) for s in prof)
    return worst, 1e-8


@check("profile", "samples_on_unit_sphere")
def _(rng):
    prof = _one_period(rng)
    return max(abs(math.fsum(y * y for y in s.y) - 1) for s in prof), 1e-12


@check("profile", "Hm_from_radius_constant")
def _(rng):
    # the absolute deviation grows like max(lambda)^m / H times the state error,
    # so this uses moderately conditioned cases and a tight integrator tolerance
    worst = 0.0
    for p, ratio in [(Params(3, 2, 0.25), 1.3), (Params(7, 4, 0.87), 1.14), (Params(4, 1, 0.9), 6.0)]:
        C = critical_point(p).c0 * ratio
        worst = max(worst, closure_check(integrate_profile(p, C, 1, 200, tol_ode=1e-13), 1).max_Hm_deviation)
    return worst, 1e-8


@check("profile", "w_range_matches_roots")
def _(rng):
    p = Params(5, 4, 1.0)
    prof = integrate_profile(p, 10.0, 1, 2000)
    ws = [s.w for s in prof]
    return max(abs(min(ws) - prof.t1), abs(max(ws) - prof.t2)), 1e-6


@lru_cache(maxsize=None)
def _closure_case():
    p = Params(5, 4, 1.0)
    cert = exists_embedded(ExistenceQuery(p, 3))
    return closure_check(integrate_profile(p, cert.C_star, 3, 200, tol_ode=1e-13), 3)


@check("profile", "closure_angle_defect")
def _(rng):
    return abs(_closure_case().delta_theta), 1e-4


@check("profile", "closure_energy_drift")
def _(rng):
    return _closure_case().max_energy_drift, 1e-8


@check("profile", "closure_Hm_from_radius")
def _(rng):
    return _closure_case().max_Hm_deviation, 1e-6


@check("profile", "curve_point_unit_norm")
def _(rng):
    worst = 0.0
    for _ in range(1000):
        y = curve_point(rng.uniform(0, math.pi), rng.uniform(-10, 10))
        worst = max(worst, abs(math.fsum(c * c for c in y) - 1))
    return worst, 1e-12


# -- cli -------------------------------------------------------------------


@check("cli", "csv_round_trip")
def _(rng):
    from .io import SWEEP_HEADER, csv_text, read_csv, sweep_rows

    p = _random_params(rng)
    c0 = critical_point(p).c0
    text = csv_text(SWEEP_HEADER, sweep_rows(period_sample(p, c0 * (1 + 10 ** e)) for e in (-2, 0, 2)))
    header, rows = read_csv(io.StringIO(text))
    return (0.0 if csv_text(header, rows) == text else 1.0), 0.5


@check("cli", "certificate_schema")
def _(rng):
    from .io import certificate_to_dict, validate_certificate

    validate_certificate(certificate_to_dict(solve_for_period(Params(3, 2, 0.5), math.pi), k=2))
    validate_certificate(certificate_to_dict(solve_for_period(Params(5, 4, 20.0), 2 * math.pi / 3), k=3))
    return 0.0, 0.5


def run(suite: str | None = None, seed: int = 0, stream=None) -> list[CheckResult]:
    """Run all checks (or one suite) and print one line per check to ``stream``."""
    if suite not in (None, "all") and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    results = []
    for i, (s, ident, fn) in enumerate(_REGISTRY):
        if suite not in (None, "all") and s != suite:
            continue
        rng = random.Random(f"{seed}:{ident}")
        t0 = time.perf_counter()
        try:
            residual, limit = fn(rng)
            detail = ""
        except Exception as exc:  # a crashing check is a failing check
            residual, limit, detail = math.nan, math.nan, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        ok = math.isfinite(residual) and residual < limit
        res = CheckResult(ident, s, ok, residual, limit, dt, detail)
        results.append(res)
        if stream is not None:
            tag = "PASS" if ok else "FAIL"
            line = f"{tag}  {ident:<44} {dt:7.3f}s  residual={residual:.3e}  limit={limit:.1e}"
            if detail:
                line += f"  ({detail})"
            print(line, file=stream, flush=True)
    return results
