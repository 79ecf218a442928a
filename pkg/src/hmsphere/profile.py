"""Generating curve of the rotational hypersurface.

The profile variable w(s) solves ``w'' = q'(w) / 2`` (the derivative of the
first integral ``w'^2 = q(w)``), the radius is ``r = w / sqrt(C)`` and the
longitude accumulates as ``theta' = r lambda / (1 - r^2)``.  The curve on
the unit 2-sphere is ``(cos vt, sin vt cos theta, sin vt sin theta)`` with
``cos vt = r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import kernels
from .curvature import Params, mth_mean_curvature, mu_from_lambda
from .errors import DomainError, IntegrationError
from .period import period_sample
from .potential import critical_point

__all__ = [
    "ProfileSample",
    "Profile",
    "ClosureReport",
    "integrate_profile",
    "curvatures_from_radius",
    "closure_check",
    "curve_point",
    "disk_projection",
]


@dataclass(frozen=True)
class ProfileSample:
    """One point of the generating curve with its diagnostics.

    ``energy_residual`` is ``w'^2 - q(w)`` (zero on the exact flow) and
    ``hm_residual`` is H_m recomputed from the radius-based curvatures
    minus the prescribed value.
    """

    s: float
    w: float
    w_dot: float
    r: float
    lam: float
    mu: float
    vartheta: float
    theta: float
    y: tuple[float, float, float]
    energy_residual: float
    hm_residual: float = 0.0


@dataclass
class Profile:
    """Sampled trajectory plus the data it was generated from."""

    params: Params
    C: float
    T: float
    P: float
    t1: float
    t2: float
    samples: list[ProfileSample] = field(default_factory=list)

    def __iter__(self):
        return iter(self.samples)

    def __len__(self):
        return len(self.samples)

    def __getitem__(self, i):
        return self.samples[i]


@dataclass(frozen=True)
class ClosureReport:
    """Defects of the sampled curve after k oscillations.

    ``max_energy_drift`` is relative to C; ``max_Hm_deviation`` is absolute.
    """

    k: int
    delta_theta: float
    w_mismatch: float
    wdot_mismatch: float
    max_energy_drift: float
    max_Hm_deviation: float

    @property
    def all_finite(self) -> bool:
        return all(
            math.isfinite(x)
            for x in (
                self.delta_theta,
                self.w_mismatch,
                self.wdot_mismatch,
                self.max_energy_drift,
                self.max_Hm_deviation,
            )
        )


def curve_point(vartheta: float, theta: float) -> tuple[float, float, float]:
    s = math.sin(vartheta)
    return (math.cos(vartheta), s * math.cos(theta), s * math.sin(theta))


def disk_projection(vartheta: float, theta: float) -> tuple[float, float]:
    """The last two coordinates of :func:`curve_point` (a point in the unit disk)."""
    _, y2, y3 = curve_point(vartheta, theta)
    return (y2, y3)


def curvatures_from_radius(r: float, r_dot: float, r_ddot: float) -> tuple[float, float]:
    """Principal curvatures of the rotational hypersurface from its radius function.

    Oriented so that the multiple curvature is positive:
    ``lam = sqrt(1 - r^2 - r'^2) / r`` and ``mu = -(r'' + r) / sqrt(1 - r^2 - r'^2)``.
    """
    if not 0 < r < 1:
        raise DomainError(f"radius must lie in (0, 1), got {r}")
    g = 1.0 - r * r - r_dot * r_dot
    if not g > 0:
        raise DomainError(f"umbilic/boundary point: 1 - r^2 - r'^2 = {g}")
    root = math.sqrt(g)
    return root / r, -(r_ddot + r) / root


def _sample(params: Params, C: float, s: float, w: float, wd: float, theta: float) -> ProfileSample:
    n, m, H = params.n, params.m, params.H
    sc = math.sqrt(C)
    r = w / sc
    lam = kernels.lam(w, n, m, H)
    mu = mu_from_lambda(params, lam)
    vartheta = math.acos(r)
    energy = wd * wd - kernels.q(w, n, m, H, C)
    wdd = 0.5 * kernels.dq(w, n, m, H)
    lam_r, mu_r = curvatures_from_radius(r, wd / sc, wdd / sc)
    hm = mth_mean_curvature([lam_r] * (n - 1) + [mu_r], m)
    return ProfileSample(
        s=s,
        w=w,
        w_dot=wd,
        r=r,
        lam=lam,
        mu=mu,
        vartheta=vartheta,
        theta=theta,
        y=curve_point(vartheta, theta),
        energy_residual=energy,
        hm_residual=hm - H,
    )


def integrate_profile(
    params: Params,
    C: float,
    k_periods: int = 1,
    samples_per_period: int = 200,
    tol_ode: float = 1e-10,
    tol_quad: float = 1e-10,
) -> Profile:
    """Integrate (w, w', theta) from the inner turning point over k periods.

    Uses DOP853 with relative tolerance ``tol_ode``; samples are taken from
    the integrator's dense output on a uniform grid of spacing
    ``T / samples_per_period``.

    Raises
    ------
    DomainError
        If ``C <= c0``.
    IntegrationError
        If the integrator stops early; ``exc.partial`` holds the samples
        computed up to that point.
    """
    if k_periods < 1 or samples_per_period < 2:
        raise ValueError("need k_periods >= 1 and samples_per_period >= 2")
    if not tol_ode > 0:
        raise ValueError("tol_ode must be positive")
    crit = critical_point(params)
    if not C > crit.c0:
        raise DomainError(f"no oscillation: C={C!r} must exceed c0={crit.c0!r}")
    ps = period_sample(params, C, tol_quad)
    n, m, H = params.n, params.m, params.H
    sc = math.sqrt(C)

    def rhs(_s, state):
        w, wd, _ = state
        r = w / sc
        return [wd, 0.5 * kernels.dq(w, n, m, H), r * kernels.lam(w, n, m, H) / (1.0 - r * r)]

    total = k_periods * samples_per_period
    grid = ps.T / samples_per_period * np.arange(total + 1)
    grid[-1] = k_periods * ps.T
    atol = np.array([ps.t1, ps.t2, 1.0]) * tol_ode * 1e-2
    sol = solve_ivp(
        rhs,
        (0.0, grid[-1]),
        [ps.t1, 0.0, 0.0],
        method="DOP853",
        t_eval=grid,
        rtol=tol_ode,
        atol=atol,
    )
    profile = Profile(params, C, ps.T, ps.P, ps.t1, ps.t2)
    try:
        for s, (w, wd, th) in zip(sol.t, sol.y.T):
            profile.samples.append(_sample(params, C, float(s), float(w), float(wd), float(th)))
    except DomainError as exc:
        raise IntegrationError(f"left the admissible region: {exc}", profile.samples) from exc
    if sol.status != 0:
        raise IntegrationError(f"integration stopped early: {sol.message}", profile.samples)
    return profile


def closure_check(samples, k: int) -> ClosureReport:
    """Closure defects of a trajectory that should close after k periods.

    ``delta_theta`` is ``theta(end) - theta(0) - 2 pi``.
    """
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    first, last = samples[0], samples[-1]
    C = (first.w / first.r) ** 2
    return ClosureReport(
        k=k,
        delta_theta=last.theta - first.theta - 2.0 * math.pi,
        w_mismatch=abs(last.w - first.w),
        wdot_mismatch=abs(last.w_dot - first.w_dot),
        max_energy_drift=max(abs(p.energy_residual) for p in samples) / C,
        max_Hm_deviation=max(abs(p.hm_residual) for p in samples),
    )
