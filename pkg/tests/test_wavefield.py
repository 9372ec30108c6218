import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from splitcauchy import splitnum as sn
from splitcauchy.splitnum import SplitComplex
from splitcauchy.wavefield import (
    CharacteristicData, WindowProfile, apply_window, box_fd, bump_window, d_fd, dbar_fd,
    family, is_solution, make_solution, product, project_characteristic, windowed,
)

FAMILIES = ["gaussian", "sech", "sinbump", "linear", "quadratic", "constant"]
coord = st.floats(-3, 3, allow_nan=False)


def points(n=100, seed=0, lo=-3.0, hi=3.0):
    x, y = np.random.default_rng(seed).uniform(lo, hi, size=(2, n))
    return SplitComplex(x, y)


@pytest.mark.parametrize("name", FAMILIES)
def test_families_are_solutions(name):
    F = make_solution(family(name))
    assert is_solution(F, points())
    assert np.max(sn.modulus(box_fd(F, points(), 1e-4))) < 1e-4


def test_value_in_null_coordinates():
    F = make_solution(family("gaussian"))
    z = SplitComplex(0.3, 0.1)
    val = F(z)
    assert val.u == pytest.approx(2 * np.exp(-0.16))
    assert val.v == pytest.approx(2 / np.cosh(0.2))


def test_non_solution_detected():
    def G(z):
        return SplitComplex(z.x * z.x, 0.0 * z.y)

    assert not is_solution(G, points(10))
    # dbar(x^2) = x, d(x^2) = x
    z = SplitComplex(1.5, 0.5)
    assert dbar_fd(G, z).x == pytest.approx(1.5, rel=1e-8)
    assert d_fd(G, z).x == pytest.approx(1.5, rel=1e-8)


def test_dbar_fd_order_two_on_non_solution():
    def G(z):
        return SplitComplex(np.sin(z.x) * np.cos(2 * z.y), z.x * z.y * z.y)

    z = SplitComplex(0.4, -0.3)
    # exact dbar via closed-form partials
    dx = SplitComplex(np.cos(0.4) * np.cos(-0.6), 0.09)
    dy = SplitComplex(-2 * np.sin(0.4) * np.sin(-0.6), 2 * 0.4 * -0.3)
    exact = (dx - dy.mul_j()) / 2
    e1 = float(sn.modulus(dbar_fd(G, z, 1e-2) - exact))
    e2 = float(sn.modulus(dbar_fd(G, z, 5e-3) - exact))
    assert 3.5 <= e1 / e2 <= 4.5


@given(coord, coord, coord)
@settings(max_examples=50)
def test_projection_recovers_profiles(t, x, y):
    F = make_solution(family("sech"))
    assert project_characteristic(F, 1)(t) == pytest.approx(2 / np.cosh(t))
    assert project_characteristic(F, -1)(t) == pytest.approx(2 / np.cosh(t - 0.5))
    # e+ part depends on u only
    z = SplitComplex(x, y)
    w = SplitComplex.from_null(z.u, z.v + 1.0)
    assert F(z).u == pytest.approx(F(w).u)


def test_projection_rejects_bad_sign():
    with pytest.raises(ValueError):
        project_characteristic(make_solution(family("gaussian")), 0)


def test_product_of_solutions_is_solution():
    F = make_solution(family("gaussian"))
    G = make_solution(family("sinbump"))
    assert is_solution(product(F, G), points())


def test_window_requires_unit_at_zero():
    with pytest.raises(ValueError):
        WindowProfile(lambda t: 0.5 * np.ones_like(t), 1.0)
    w = bump_window(2.0)
    assert w(0.0) == 1.0 and w(2.0) == 0.0 and w(-3.0) == 0.0
    assert 0 < w(1.0) < 1


def test_apply_window_splits_field():
    F = make_solution(family("linear"))
    z0 = SplitComplex(0.3, 0.1)
    F1, F2 = apply_window(F, bump_window(1.0), z0)
    assert F1.bounded and F2.bounded
    total = F1(z0) + F2(z0)
    ref = F(z0)
    assert total.x == pytest.approx(ref.x) and total.y == pytest.approx(ref.y)
    assert F1(z0).v == 0.0 and F2(z0).u == 0.0
    # F1(z0) = e+ F(z0), F2(z0) = e- F(z0)
    assert F1(z0).u == pytest.approx(ref.u) and F2(z0).v == pytest.approx(ref.v)
    # outside the window support the pieces vanish
    far = SplitComplex.from_null(z0.u + 2.0, z0.v + 2.0)
    assert F1(far).u == 0.0 and F2(far).v == 0.0
    assert is_solution(windowed(F, bump_window(1.0), z0), points(50, 1, -0.5, 0.5))


def test_unbounded_families_flagged():
    assert not make_solution(family("linear")).bounded
    assert make_solution(family("gaussian")).declared_bound == 2.0


def test_family_parameters():
    c = make_solution(family("constant:3"))
    assert c(SplitComplex(5.0, 1.0)).x == pytest.approx(3.0)
    with pytest.raises(ValueError):
        family("nope")


def test_custom_characteristic_data():
    data = CharacteristicData(np.sin, np.cos, bound=1.0)
    F = make_solution(data)
    assert is_solution(F, points(20))


def test_sech_no_overflow():
    F = make_solution(family("sech"))
    with np.errstate(over="raise"):
        v = F(SplitComplex(1e3, 0.0))
    assert v.u == 0.0
