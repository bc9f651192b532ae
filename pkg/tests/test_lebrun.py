import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kahlermaps.errors import SolveError
from kahlermaps.lebrun import (
    LebrunCoords,
    LebrunParams,
    lebrun_forward,
    lebrun_grad,
    lebrun_hessian,
    lebrun_jacobian,
    lebrun_map,
    lebrun_moment_sum,
    lebrun_potential,
    lebrun_solve,
    verify_lebrun_claims,
)
from kahlermaps.potentials import grad_potential
from kahlermaps.special_maps import build_special_map

# 30-digit roots of G(U, V) = (1, 2) at m = 1/4, and of U e^U = 1 (omega constant)
U_QUARTER, V_QUARTER = 1.22544679211447403597, 1.63205780362691728869
OMEGA = 0.56714329040978387300


def test_params_validation():
    with pytest.raises(ValueError):
        LebrunParams(-0.1)


def test_forward_examples():
    assert np.array_equal(lebrun_forward(LebrunCoords(1.0, 2.0), 0.0), [1.0, 2.0])
    assert np.array_equal(lebrun_forward((3.5, 3.5), 0.7), [3.5, 3.5])
    assert np.allclose(lebrun_forward((1.0, 0.0), 0.25), [math.exp(0.5), 0.0], rtol=1e-15)


def test_jacobian_examples():
    assert np.array_equal(lebrun_jacobian((0.4, 2.0), 0.0), np.eye(2))
    assert np.allclose(lebrun_jacobian((1.0, 1.0), 0.5), [[2, -1], [-1, 2]], atol=1e-15)
    assert np.linalg.det(lebrun_jacobian((2.0, 3.0), 1.0)) == pytest.approx(11.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-3, 10), st.floats(1e-3, 10), st.sampled_from([0.0, 0.1, 0.5, 1.0]))
def test_jacobian_matches_finite_differences(U, V, m):
    J = lebrun_jacobian((U, V), m)
    h = 1e-6
    fd = np.column_stack(
        [(lebrun_forward((U + h * e[0], V + h * e[1]), m) - lebrun_forward((U - h * e[0], V - h * e[1]), m)) / (2 * h)
         for e in np.eye(2)]
    )
    assert np.max(np.abs(fd - J)) <= 1e-6 * np.max(np.abs(J))
    assert abs(np.linalg.det(J) - (1 + 2 * m * (U + V))) <= 1e-12 * max(1.0, np.max(np.abs(J)) ** 2)


def test_solve_examples():
    assert lebrun_solve([1.0, 2.0], 0.0) == LebrunCoords(1.0, 2.0)
    c = lebrun_solve([2.5, 2.5], 0.8)
    assert (c.U, c.V) == pytest.approx((2.5, 2.5), abs=1e-15)
    c = lebrun_solve([1.0, 2.0], 0.25)
    assert c.U == pytest.approx(U_QUARTER, abs=1e-13)
    assert c.V == pytest.approx(V_QUARTER, abs=1e-13)


def test_solve_rejects_impossible_tolerance():
    with pytest.raises(SolveError) as info:
        lebrun_solve([1e12, 1e9], 1.0)
    assert info.value.residual is not None


def test_map_examples():
    z = np.array([1.0, 0.0])
    assert lebrun_map(z, 0.5)[0] == pytest.approx(math.exp(-0.5 * OMEGA), abs=1e-14)
    t = 0.7
    w = np.array([math.sqrt(t), math.sqrt(t) * 1j])
    assert np.allclose(lebrun_map(w, 0.4), math.sqrt(1 + 0.8 * t) * w, rtol=1e-14)


@pytest.mark.parametrize("m", [0.1, 0.5, 1.0])
def test_map_agrees_with_generic_builder(m):
    pts = np.random.default_rng(2).normal(size=(20, 2)) + 1j * np.random.default_rng(3).normal(size=(20, 2))
    special = build_special_map(lebrun_potential(m), "flat")
    for z in pts:
        assert np.max(np.abs(lebrun_map(z, m) - special(z))) <= 1e-10


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 1.0])
def test_gradient_identities(m):
    rng = np.random.default_rng(17)
    for x in rng.uniform(0, 10, size=(100, 2)):
        U, V = lebrun_solve(x, m)
        g = lebrun_grad(x, m)
        assert g[0] * g[1] == pytest.approx((1 + 2 * m * U) * (1 + 2 * m * V), rel=1e-10)
        assert lebrun_moment_sum(x, m) == pytest.approx(float(g @ x), rel=1e-10, abs=1e-10)
    t = 1.3
    assert np.allclose(lebrun_grad([t, t], m), [1 + 2 * m * t] * 2, rtol=1e-14)


@pytest.mark.parametrize("m", [0.1, 0.5, 1.0])
def test_hessian_matches_gradient_differences(m):
    rng = np.random.default_rng(23)
    for x in rng.uniform(0.1, 5, size=(20, 2)):
        H = lebrun_hessian(x, m)
        h = 1e-6
        fd = np.column_stack(
            [(lebrun_grad(x + h * e, m) - lebrun_grad(x - h * e, m)) / (2 * h) for e in np.eye(2)]
        )
        assert np.allclose(H, fd, rtol=1e-6, atol=1e-8)


def test_potential_gradient_path_consistent():
    spec = lebrun_potential(0.5)
    x = np.array([0.7, 2.1])
    h = 1e-6
    value_fd = np.array([(spec.body.value(x + h * e) - spec.body.value(x - h * e)) / (2 * h) for e in np.eye(2)])
    assert np.allclose(grad_potential(spec, x), value_fd, rtol=1e-8)


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 1.0])
def test_round_trip_thousand_points(m):
    xs = np.random.default_rng(42).uniform(0, 10, size=(1000, 2))
    worst = max(np.max(np.abs(lebrun_forward(lebrun_solve(x, m), m) - x)) for x in xs)
    assert worst <= 1e-11


def test_taylor_series_matches_values():
    from kahlermaps.series import MultiIndexOrder

    spec = lebrun_potential(0.3)
    s = spec.body.taylor(MultiIndexOrder(2, 8))
    x = np.array([0.02, 0.03])
    approx = sum(c * x[0] ** i * x[1] ** j for (i, j), c in zip(s.order.indices, s.coeffs))
    assert approx == pytest.approx(spec.body.value(x), abs=1e-14)


def test_verify_claims_zero():
    rep = verify_lebrun_claims(0.0, n_points=20)
    assert rep.passed
    for c in rep.checks:
        if "max_residual" in c:
            assert c["max_residual"] <= 1e-12, c["check"]
