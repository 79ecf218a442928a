import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hmsphere.profile as profile_mod
from hmsphere.curvature import Params, mth_mean_curvature
from hmsphere.errors import DomainError, IntegrationError
from hmsphere.existence import solve_for_period
from hmsphere.potential import critical_point
from hmsphere.profile import (
    closure_check,
    curvatures_from_radius,
    curve_point,
    disk_projection,
    integrate_profile,
)


@pytest.fixture(scope="module")
def reference_profile():
    p = Params(5, 4, 1.0)
    return integrate_profile(p, 10.0, k_periods=10, samples_per_period=200)


def test_clifford_radius_curvatures():
    lam, mu = curvatures_from_radius(1 / math.sqrt(2), 0.0, 0.0)
    assert lam == pytest.approx(1.0, rel=1e-15)
    assert mu == pytest.approx(-1.0, rel=1e-15)


def test_radius_curvatures_domain():
    with pytest.raises(DomainError):
        curvatures_from_radius(1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        curvatures_from_radius(0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        curvatures_from_radius(0.6, 0.8, 0.0)


def test_curve_point_examples():
    assert curve_point(0.0, 1.3) == (1.0, 0.0, 0.0)
    y = curve_point(math.pi / 2, 0.0)
    assert y == pytest.approx((0.0, 1.0, 0.0), abs=1e-16)
    assert disk_projection(math.pi / 2, math.pi / 2) == pytest.approx((0.0, 1.0), abs=1e-16)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, math.pi), st.floats(-20, 20))
def test_curve_point_on_unit_sphere(vt, th):
    assert math.fsum(c * c for c in curve_point(vt, th)) == pytest.approx(1.0, abs=1e-15)


def test_energy_conserved_over_ten_periods(reference_profile):
    drift = max(abs(s.energy_residual) for s in reference_profile) / reference_profile.C
    assert drift < 1e-8


def test_returns_to_inner_turning_point(reference_profile):
    prof = reference_profile
    one = prof[200]
    assert abs(one.w - prof.t1) < 1e-7
    assert abs(one.w_dot) < 1e-7
    assert abs(prof[100].w - prof.t2) < 1e-7


def test_theta_after_one_period_matches_quadrature(reference_profile):
    prof = reference_profile
    assert abs(prof[200].theta - prof.P) < 1e-8
    assert abs(prof[-1].theta - 10 * prof.P) < 1e-7


def test_reflection_symmetry_about_half_period(reference_profile):
    prof = reference_profile
    for j in range(0, 101, 10):
        a, b = prof[100 - j], prof[100 + j]
        assert abs(a.w - b.w) < 1e-8
        assert abs(a.w_dot + b.w_dot) < 1e-7
        assert abs((prof[100].theta - a.theta) - (b.theta - prof[100].theta)) < 1e-8


def test_w_stays_between_roots(reference_profile):
    prof = reference_profile
    ws = [s.w for s in prof]
    # dense output may overshoot a turning point by the integrator tolerance
    assert min(ws) >= prof.t1 * (1 - 1e-8)
    assert max(ws) <= prof.t2 * (1 + 1e-8)
    assert all(0 < s.r < 1 for s in prof)


def test_orbit_radius_identity(reference_profile):
    for s in reference_profile:
        lhs = (s.w_dot / s.w) ** 2 + s.lam ** 2 + 1
        assert lhs == pytest.approx(1 / s.r ** 2, rel=1e-8)


def test_samples_on_sphere_and_mu_formula(reference_profile):
    p = reference_profile.params
    for s in reference_profile:
        assert math.fsum(c * c for c in s.y) == pytest.approx(1.0, abs=1e-14)
        hm = mth_mean_curvature([s.lam] * (p.n - 1) + [s.mu], p.m)
        # e_m cancels terms of size lam^m, so the error scales with it
        assert abs(hm - p.H) <= 1e-14 * s.lam ** p.m


def test_theta_prime_two_forms():
    p = Params(6, 2, 0.4)
    prof = integrate_profile(p, critical_point(p).c0 * 3.0, tol_ode=1e-13)
    sc = math.sqrt(prof.C)
    for s in prof:
        g = 1 - s.r ** 2 - (s.w_dot / sc) ** 2
        assert abs(math.sqrt(g) - s.r * s.lam) / (1 - s.r ** 2) < 1e-10


@pytest.mark.parametrize(
    "params, ratio",
    [(Params(3, 2, 0.25), 1.3), (Params(7, 4, 0.87), 1.14), (Params(4, 1, 0.9), 6.0)],
)
def test_Hm_from_radius_is_constant(params, ratio):
    C = critical_point(params).c0 * ratio
    prof = integrate_profile(params, C, tol_ode=1e-13)
    assert closure_check(prof, 1).max_Hm_deviation < 1e-8


def test_closure_at_certified_energy():
    p = Params(5, 4, 1.0)
    cert = solve_for_period(p, 2 * math.pi / 3)
    prof = integrate_profile(p, cert.C_star, k_periods=3, tol_ode=1e-13)
    rep = closure_check(prof, 3)
    assert rep.all_finite
    assert abs(rep.delta_theta) < 1e-6
    assert rep.w_mismatch < 1e-7
    assert rep.wdot_mismatch < 1e-7
    assert rep.max_energy_drift < 1e-10
    assert rep.max_Hm_deviation < 1e-6


def test_closure_defect_off_certificate():
    p = Params(5, 4, 1.0)
    prof = integrate_profile(p, 10.0, k_periods=3)
    rep = closure_check(prof, 3)
    assert rep.delta_theta == pytest.approx(3 * (prof.P - 2 * math.pi / 3), abs=1e-7)


def test_closure_check_needs_samples(reference_profile):
    with pytest.raises(ValueError):
        closure_check(reference_profile.samples[:1], 1)


def test_argument_validation():
    p = Params(5, 4, 1.0)
    c0 = critical_point(p).c0
    with pytest.raises(DomainError):
        integrate_profile(p, c0)
    with pytest.raises(ValueError):
        integrate_profile(p, 10.0, k_periods=0)
    with pytest.raises(ValueError):
        integrate_profile(p, 10.0, samples_per_period=1)
    with pytest.raises(ValueError):
        integrate_profile(p, 10.0, tol_ode=0.0)


def test_sample_grid_spacing(reference_profile):
    s = np.array([x.s for x in reference_profile])
    assert len(s) == 2001
    assert np.allclose(np.diff(s), reference_profile.T / 200, rtol=1e-12)
    assert s[-1] == pytest.approx(10 * reference_profile.T, rel=1e-15)


def test_integrator_failure_keeps_partial_output(monkeypatch):
    real = profile_mod.solve_ivp

    def failing(*args, **kwargs):
        sol = real(*args, **kwargs)
        keep = len(sol.t) // 2
        sol.t, sol.y = sol.t[:keep], sol.y[:, :keep]
        sol.status, sol.message = -1, "step size too small"
        return sol

    monkeypatch.setattr(profile_mod, "solve_ivp", failing)
    with pytest.raises(IntegrationError) as info:
        integrate_profile(Params(5, 4, 1.0), 10.0)
    assert len(info.value.partial) == 100
    assert info.value.partial[0].w_dot == 0.0
