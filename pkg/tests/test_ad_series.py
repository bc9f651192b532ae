import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kahlermaps import ad
from kahlermaps.ad import Dual, Jet2
from kahlermaps.errors import DomainError, NonDifferentiable
from kahlermaps.series import MultiIndexOrder, TruncatedSeries


def test_dual_chain_rule():
    x, y = Dual.variables([0.5, 2.0])
    f = ad.log(x * y) + ad.exp(x) / y + ad.sqrt(y)
    assert f.value == pytest.approx(math.log(1.0) + math.exp(0.5) / 2 + math.sqrt(2))
    assert f.tangent[0] == pytest.approx(1 / 0.5 + math.exp(0.5) / 2)
    assert f.tangent[1] == pytest.approx(1 / 2.0 - math.exp(0.5) / 4 + 0.5 / math.sqrt(2))


def test_jet_hessian_symmetric_and_exact():
    x, y = Jet2.variables([1.5, -0.5])
    f = x * x * y + ad.exp(x * y)
    e = math.exp(-0.75)
    assert f.hess[0, 1] == f.hess[1, 0]
    assert f.hess[0, 0] == pytest.approx(2 * -0.5 + 0.25 * e)
    assert f.hess[0, 1] == pytest.approx(2 * 1.5 + e + 1.5 * -0.5 * e)
    assert f.hess[1, 1] == pytest.approx(2.25 * e)


def test_domain_errors():
    (x,) = Dual.variables([-1.0])
    with pytest.raises(DomainError):
        ad.log(x)
    with pytest.raises(DomainError):
        ad.sqrt(x)
    (z,) = Dual.variables([0.0])
    with pytest.raises(NonDifferentiable):
        ad.sqrt(z)
    assert ad.sqrt(0.0) == 0.0


def test_exp_overflow_is_domain_error():
    with pytest.raises(DomainError):
        ad.exp(1e4)


def test_order_layout():
    o = MultiIndexOrder(2, 2)
    assert list(o.indices) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert list(o.degrees) == [0, 1, 1, 2, 2, 2]


def test_series_log_exp_known_expansions():
    o = MultiIndexOrder(1, 5)
    (x,) = TruncatedSeries.variables(o)
    assert np.allclose((1 - x).log().coeffs, [0, -1, -1 / 2, -1 / 3, -1 / 4, -1 / 5])
    assert np.allclose(x.exp().coeffs, [1 / math.factorial(k) for k in range(6)])
    assert np.allclose((1 + x).pow(-1).coeffs, [1, -1, 1, -1, 1, -1])


def test_series_product_truncates():
    o = MultiIndexOrder(2, 2)
    x, y = TruncatedSeries.variables(o)
    s = (1 + x + y) * (1 + x + y) * (1 + x + y)
    assert s.coefficient((1, 1)) == pytest.approx(6.0)
    assert s.coefficient((2, 0)) == pytest.approx(3.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4))
def test_series_matches_jet_derivatives(vals):
    # second-order Taylor coefficients are half the Hessian
    a, b, c, d = vals
    o = MultiIndexOrder(2, 2)

    def f(u, v):
        return ad.exp(a * u + b * v) * (1 + c * u * v + d * v * v)

    sx, sy = TruncatedSeries.variables(o)
    s = f(sx, sy)
    jx, jy = Jet2.variables([0.0, 0.0])
    j = f(jx, jy)
    assert s.coefficient((1, 0)) == pytest.approx(j.grad[0], abs=1e-12)
    assert s.coefficient((1, 1)) == pytest.approx(j.hess[0, 1], abs=1e-12)
    assert s.coefficient((0, 2)) == pytest.approx(j.hess[1, 1] / 2, abs=1e-12)
