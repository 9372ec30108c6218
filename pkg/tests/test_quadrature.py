import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as si

from splitcauchy.quadrature import (
    GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, QuadratureConfig, QuadratureError, integrate,
)


def test_rule_weights():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod rule is exact for degree 22 polynomials
    assert KRONROD_WEIGHTS @ NODES ** 22 == pytest.approx(2 / 23, rel=1e-13)


@given(st.floats(-3, 3), st.floats(0.1, 5), st.integers(0, 6))
@settings(max_examples=40)
def test_polynomials_exact(a, width, k):
    b = a + width
    val, err, n = integrate(lambda t: t ** k, a, b)
    exact = (b ** (k + 1) - a ** (k + 1)) / (k + 1)
    assert val == pytest.approx(exact, rel=1e-12, abs=1e-12)
    assert n == 15


@pytest.mark.parametrize("eps", [1e-1, 1e-3, 1e-5])
def test_lorentzian_against_scipy(eps):
    f = lambda t: eps / (t * t + eps * eps)
    bps = [0.0, -eps, eps, -10 * eps, 10 * eps]
    val, _, _ = integrate(f, -5, 7, bps, abs_tol=1e-13, rel_tol=1e-12)
    ref, _ = si.quad(f, -5, 7, points=bps, limit=500, epsabs=1e-13, epsrel=1e-10)
    assert val == pytest.approx(ref, rel=1e-10)
    exact = np.arctan(7 / eps) + np.arctan(5 / eps)
    assert val == pytest.approx(exact, rel=1e-10)


def test_complex_vector_integrand():
    def f(t):
        return np.stack([np.exp(1j * t), t * t + 0j])

    val, _, _ = integrate(f, 0.0, np.pi)
    assert val[0] == pytest.approx(2j, abs=1e-12)
    assert val[1] == pytest.approx(np.pi ** 3 / 3)


def test_reversed_limits():
    a, _, _ = integrate(np.cos, 0.0, 1.0)
    b, _, _ = integrate(np.cos, 1.0, 0.0)
    assert a == -b
    assert integrate(np.cos, 1.0, 1.0)[0] == 0.0


def test_budget_exhaustion_raises():
    with pytest.raises(QuadratureError, match="max_subdivisions"):
        integrate(lambda t: np.sin(1 / t), 1e-6, 1.0, abs_tol=1e-14, rel_tol=1e-14,
                  max_subdivisions=20)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)
