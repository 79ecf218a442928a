import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmsphere.curvature import Params
from hmsphere.errors import DomainError
from hmsphere.oracles import q_direct, q_double_prime_fd, q_prime_fd, scan_roots
from hmsphere.potential import (
    critical_point,
    critical_point_closed_form,
    lambda_of,
    q_double_prime,
    q_eval,
    q_prime,
    roots,
)

nm = st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1)))
positive_H = st.floats(0.01, 10.0)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_reference_case_closed_form():
    crit = critical_point(Params(5, 4, 1.0))
    assert crit.v0 == pytest.approx((1 / 24) ** 0.2, rel=1e-14)
    assert crit.c0 == pytest.approx(6 * (1 / 24) ** 0.4, rel=1e-14)
    assert crit.a == pytest.approx(3.6, rel=1e-14)


@pytest.mark.parametrize("n", range(5, 11))
@pytest.mark.parametrize("H", [0.1, 0.5, 1.0, 1.0 + 1e-9, 2.0, 10.0])
def test_m4_closed_forms(n, H):
    p = Params(n, 4, H)
    num, ref = critical_point(p), critical_point_closed_form(p)
    assert rel(num.v0, ref.v0) < 1e-10
    assert rel(num.c0, ref.c0) < 1e-10
    assert rel(num.a, ref.a) < 1e-10


def test_m4_c0_rearrangement_matches_definition():
    # the closed form for c0 with H != 1 is a rearranged expression;
    # compare it with the definition v0^2 (v0^-n + H)^(1/2) + v0^2
    for n in range(5, 11):
        for H in (0.1, 0.5, 2.0, 10.0):
            ref = critical_point_closed_form(Params(n, 4, H))
            direct = ref.v0 ** 2 * (ref.v0 ** -n + H) ** 0.5 + ref.v0 ** 2
            assert rel(ref.c0, direct) < 1e-12


@pytest.mark.parametrize("n", range(3, 10))
@pytest.mark.parametrize("H", [0.05, 1.0, 7.5])
def test_m2_closed_forms(n, H):
    p = Params(n, 2, H)
    num, ref = critical_point(p), critical_point_closed_form(p)
    assert rel(num.v0, ref.v0) < 1e-10
    assert rel(num.c0, ref.c0) < 1e-10
    assert rel(num.a, ref.a) < 1e-10


@pytest.mark.parametrize("n", range(3, 9))
def test_small_H_closed_forms(n):
    for m in range(1, n):
        num = critical_point(Params(n, m, 1e-10))
        ref = critical_point_closed_form(Params(n, m, 0.0))
        assert rel(num.v0, ref.v0) < 1e-6
        assert rel(num.c0, ref.c0) < 1e-6
        assert rel(num.a, 2 * n / m) < 1e-6


def test_closed_form_absent_for_other_m():
    assert critical_point_closed_form(Params(6, 3, 1.0)) is None


@settings(max_examples=100, deadline=None)
@given(nm, positive_H)
def test_critical_point_is_stationary(nm, H):
    p = Params(*nm, H)
    crit = critical_point(p)
    assert abs(q_prime(p, crit.v0)) < 1e-9 * max(1.0, crit.c0 / crit.v0)
    assert crit.a > 1.0
    assert crit.c0 > crit.v0 ** 2


@settings(max_examples=200, deadline=None)
@given(nm, st.floats(0.0, 10.0), st.floats(-6, 2))
def test_second_derivative_below_minus_two(nm, H, log_v):
    p = Params(*nm, H)
    d2 = q_double_prime(p, 10.0 ** log_v)
    assert d2 <= -2.0
    # the excess below -2 decays like v^-n and drops under one ulp for large v
    if log_v <= 0.5:
        assert d2 < -2.0


@settings(max_examples=100, deadline=None)
@given(nm, positive_H, st.floats(0.3, 3.0))
def test_derivatives_match_finite_differences(nm, H, scale):
    p = Params(*nm, H)
    v = critical_point(p).v0 * scale
    d1 = q_prime(p, v)
    assert abs(d1 - q_prime_fd(p, v)) <= 1e-6 * max(abs(d1), 1.0)
    assert q_double_prime(p, v) == pytest.approx(q_double_prime_fd(p, v), rel=1e-5)


@settings(max_examples=100, deadline=None)
@given(nm, positive_H, st.floats(-1, 6), st.floats(-3, 2))
def test_q_matches_textbook_formula(nm, H, log_c, log_v):
    p = Params(*nm, H)
    C, v = 10.0 ** log_c, 10.0 ** log_v
    ref = float(q_direct(p, C, v))
    assert q_eval(p, C, v) == pytest.approx(ref, rel=1e-12, abs=1e-12 * C)
    assert lambda_of(p, v) == pytest.approx((v ** -p.n + H) ** (1 / p.m), rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(nm, positive_H, st.floats(-3, 3))
def test_roots_ordering_and_zeros(nm, H, log_excess):
    p = Params(*nm, H)
    crit = critical_point(p)
    C = crit.c0 * (1 + 10.0 ** log_excess)
    rp = roots(p, C)
    assert 0 < rp.t1 < crit.v0 < rp.t2 < math.sqrt(C)
    for t in (rp.t1, rp.t2):
        # |q| at a root is bounded by the slope times the root tolerance
        assert abs(q_eval(p, C, t)) <= 1e-11 * abs(q_prime(p, t)) * t + 1e-13 * C


@pytest.mark.parametrize(
    "p, ratio",
    [(Params(5, 4, 1.0), 5.0), (Params(3, 2, 0.5), 1.01), (Params(8, 3, 2.0), 50.0), (Params(6, 1, 0.05), 2.0)],
)
def test_roots_inside_grid_scan_brackets(p, ratio):
    C = critical_point(p).c0 * ratio
    rp = roots(p, C)
    brackets = scan_roots(p, C)
    assert len(brackets) == 2
    assert brackets[0][0] <= rp.t1 <= brackets[0][1]
    assert brackets[1][0] <= rp.t2 <= brackets[1][1]


def test_roots_reject_subcritical_energy():
    p = Params(5, 4, 1.0)
    c0 = critical_point(p).c0
    with pytest.raises(DomainError):
        roots(p, c0)
    with pytest.raises(DomainError):
        roots(p, 0.5 * c0)


def test_nonpositive_v_rejected():
    p = Params(5, 4, 1.0)
    for fn in (lambda v: q_eval(p, 2.0, v), lambda v: q_prime(p, v), lambda v: q_double_prime(p, v), lambda v: lambda_of(p, v)):
        with pytest.raises(ValueError):
            fn(0.0)
        with pytest.raises(ValueError):
            fn(-1.0)


def test_extreme_energies_do_not_overflow():
    p = Params(12, 11, 0.01)
    crit = critical_point(p)
    rp = roots(p, 1e12)
    assert 0 < rp.t1 < crit.v0 < rp.t2 < 1e6


def test_m4_rearranged_form_agrees_with_printed_form():
    from hmsphere.potential import _m4_near_one

    for n in range(5, 15):
        for H in (0.01, 0.1, 0.5, 0.9, 1.1, 2.0, 10.0, 100.0):
            a, b = _m4_near_one(n, H), critical_point_closed_form(Params(n, 4, H))
            assert rel(a.v0, b.v0) < 1e-12
            assert rel(a.c0, b.c0) < 1e-12
            assert rel(a.a, b.a) < 1e-12
        assert rel(_m4_near_one(n, 1.0).a, 2 * (n - 2) ** 2 / n) < 1e-14
