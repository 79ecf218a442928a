import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmsphere.curvature import (
    Params,
    PrincipalCurvatures,
    elementary_symmetric,
    h2_from_scalar,
    mth_mean_curvature,
    mu_from_lambda,
    scalar_curvature,
)
from hmsphere.oracles import elementary_symmetric_bruteforce, scalar_curvature_bruteforce

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)


def test_params_validation():
    Params(5, 4, 1.0)
    Params(2, 1, 0.0)
    with pytest.raises(ValueError):
        Params(2, 4, 1.0)
    with pytest.raises(ValueError):
        Params(5, 5, 1.0)
    with pytest.raises(ValueError):
        Params(5, 0, 1.0)
    with pytest.raises(ValueError):
        Params(5, 2, -0.1)
    with pytest.raises(ValueError):
        Params(5, 2, math.inf)
    with pytest.raises(ValueError):
        Params(5.5, 2, 1.0)
    with pytest.raises(ValueError):
        Params(5, 2, 0.0).require_positive()


def test_elementary_symmetric_small_cases():
    assert elementary_symmetric([1, 2, 3], 1) == 6
    assert elementary_symmetric([1, 2, 3], 2) == 11
    assert elementary_symmetric([1, 2, 3], 3) == 6
    assert elementary_symmetric([1, 2, 3], 0) == 1


def test_unit_sphere_has_all_Hm_one():
    for n in range(1, 9):
        for m in range(1, n + 1):
            assert mth_mean_curvature([1.0] * n, m) == pytest.approx(1.0, rel=1e-15)


def test_mth_mean_curvature_rejects_bad_order():
    with pytest.raises(ValueError):
        mth_mean_curvature([1.0, 2.0], 3)
    with pytest.raises(ValueError):
        mth_mean_curvature([1.0, 2.0], 0)
    with pytest.raises(ValueError):
        mth_mean_curvature([], 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=1, max_size=8), st.data())
def test_symmetric_matches_enumeration(values, data):
    m = data.draw(st.integers(1, len(values)))
    fast = elementary_symmetric(values, m)
    slow = elementary_symmetric_bruteforce(values, m)
    # absolute scale of the individual products bounds the rounding error
    scale = elementary_symmetric_bruteforce([abs(v) for v in values], m)
    assert abs(fast - slow) <= 1e-12 * max(scale, 1e-300) + 1e-300


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=1, max_size=8), st.data())
def test_symmetric_is_permutation_invariant(values, data):
    m = data.draw(st.integers(1, len(values)))
    perm = data.draw(st.permutations(values))
    scale = elementary_symmetric_bruteforce([abs(v) for v in values], m)
    assert abs(elementary_symmetric(values, m) - elementary_symmetric(perm, m)) <= 1e-12 * scale + 1e-300


@settings(max_examples=200, deadline=None)
@given(
    st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))),
    st.floats(0.01, 10.0),
    st.floats(0.01, 10.0),
)
def test_mu_from_lambda_keeps_Hm(nm, H, excess):
    n, m = nm
    p = Params(n, m, H)
    lam = (H + excess) ** (1.0 / m)
    pc = PrincipalCurvatures.from_lambda(p, lam)
    hm = mth_mean_curvature(pc.as_list(n), m)
    assert hm == pytest.approx(H, rel=1e-10)


def test_from_lambda_requires_lambda_m_above_H():
    with pytest.raises(ValueError):
        PrincipalCurvatures.from_lambda(Params(5, 2, 4.0), 1.5)
    with pytest.raises(ValueError):
        mu_from_lambda(Params(5, 2, 1.0), 0.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=2, max_size=8))
def test_gauss_equation_matches_double_sum(values):
    n = len(values)
    rep = scalar_curvature(n, values)
    assert rep.R == pytest.approx(scalar_curvature_bruteforce(values), rel=1e-12, abs=1e-11)
    assert rep.S == pytest.approx(sum(v * v for v in values), rel=1e-12)
    assert rep.H == pytest.approx(sum(values) / n, rel=1e-12, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=2, max_size=8))
def test_h2_from_scalar_inverts_gauss_equation(values):
    n = len(values)
    R = scalar_curvature(n, values).R
    assert h2_from_scalar(R, n) == pytest.approx(mth_mean_curvature(values, 2), abs=1e-12 * (1 + abs(R)))


def test_scalar_curvature_examples():
    # totally geodesic equator: R = n(n-1)
    assert scalar_curvature(4, [0.0] * 4).R == 12.0
    # Clifford torus S^1(1/sqrt2) x S^1(1/sqrt2): curvatures 1 and -1, flat
    assert scalar_curvature(2, [1.0, -1.0]).R == 0.0
    assert h2_from_scalar(0.0, 2) == -1.0
    with pytest.raises(ValueError):
        scalar_curvature(3, [1.0, 2.0])
    with pytest.raises(ValueError):
        h2_from_scalar(1.0, 1)


def test_enumeration_oracle_itself():
    vals = [0.5, -1.25, 2.0, 3.0]
    for m in range(1, 5):
        direct = sum(math.prod(c) for c in itertools.combinations(vals, m))
        assert elementary_symmetric_bruteforce(vals, m) == pytest.approx(direct, rel=1e-15)
