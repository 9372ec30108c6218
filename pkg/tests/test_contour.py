import cmath
import math

import numpy as np
import pytest
from scipy.special import wofz

from splitcauchy import splitnum as sn
from splitcauchy.cauchy_kernel import KernelParams
from splitcauchy.contour import (
    LimitSchedule, QuadratureConfig, build_contour, contour_integral, line_integral,
    normalize, poisson_limit_check, reconstruct, reconstruct_windowed, rectangle,
    segment_correction, signed_area, stokes_residual,
)
from splitcauchy.splitnum import SplitComplex
from splitcauchy.wavefield import bump_window, family, make_solution

TIGHT = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)


def test_contour_lies_on_hyperbolas_and_closes():
    R, S = 2.0, 50.0
    c = build_contour(R, S)
    for arc in c.branches:
        a, b = arc.bounds
        for t in np.linspace(a, b, 7):
            assert float(sn.norm(arc.point(t))) == pytest.approx(arc.level)
        assert abs(arc.level) == R
    loop = c.boundary()
    for cur, nxt in zip(loop, loop[1:] + loop[:1]):
        end = cur.point(np.array(cur.bounds[1]))
        start = nxt.point(np.array(nxt.bounds[0]))
        assert abs(end - start) < 1e-12 * S


def test_contour_validation():
    with pytest.raises(ValueError):
        build_contour(1.0, 0.5)
    with pytest.raises(ValueError):
        build_contour(-1.0, 10.0)


@pytest.mark.parametrize("R,S", [(1.0, 10.0), (2.0, 7.0), (0.5, 100.0)])
def test_signed_area_closed_form(R, S):
    c = build_contour(R, S)
    area = signed_area(c.boundary(), TIGHT)
    # positive: counterclockwise
    assert area == pytest.approx(2 * R * (1 + math.log(S * S / R)), rel=1e-11)


def test_signed_area_unit_square():
    assert signed_area(rectangle(0, 1, 0, 1)) == pytest.approx(1.0)


@pytest.mark.parametrize("name", ["gaussian", "sinbump", "quadratic"])
def test_green_on_closed_contour(name):
    F = make_solution(family(name))
    c = build_contour(1.0, 6.0)
    assert abs(line_integral(F, c.boundary(), TIGHT)) < 1e-9


def test_stokes_residual_order_two():
    def G(z):
        return SplitComplex(np.sin(z.x) * np.cos(2 * z.y), z.x * z.y * z.y)

    res = []
    for s in (0.4, 0.2, 0.1):
        cell = (0.3 - s / 2, 0.3 + s / 2, -0.2 - s / 2, -0.2 + s / 2)
        res.append(float(sn.modulus(stokes_residual(G, cell, 1e-4))) / s ** 2)
    assert 3.5 < res[0] / res[1] < 4.5 and 3.5 < res[1] / res[2] < 4.5


def test_stokes_residual_zero_for_solution():
    F = make_solution(family("gaussian"))
    assert float(sn.modulus(stokes_residual(F, (0.0, 0.5, 0.1, 0.4)))) < 1e-9


def _log_term(a, b, c, s, eps):
    # integral of dt / (t - c + i s eps) from a to b
    return cmath.log(b - c + 1j * s * eps) - cmath.log(a - c + 1j * s * eps)


def _constant_field_integral(R, S, z0, eps):
    """Closed-form integral of K_{z0,eps} * 1 dZ over the four branches."""
    u0, v0, lo = z0.u, z0.v, R / S
    plus = (_log_term(lo, S, u0, 1, eps) + _log_term(S, lo, u0, -1, eps)
            + _log_term(-lo, -S, u0, -1, eps) + _log_term(-S, -lo, u0, 1, eps))
    minus = (_log_term(S, lo, v0, 1, eps) + _log_term(-lo, -S, v0, 1, eps)
             + _log_term(-S, -lo, v0, -1, eps) + _log_term(lo, S, v0, -1, eps))
    return plus, minus


@pytest.mark.parametrize("z0", [SplitComplex(0.3, 0.1), SplitComplex(-0.2, 0.4),
                                SplitComplex(0.0, 0.0), SplitComplex(0.25, 0.25)])
def test_contour_integral_against_closed_form(z0):
    R, S, eps = 1.0, 1e4, 1e-2
    F = make_solution(family("constant"))
    val, _ = contour_integral(F, KernelParams(z0, eps), R, S, TIGHT)
    plus, minus = _constant_field_integral(R, S, z0, eps)
    assert val.plus == pytest.approx(plus, abs=1e-9)
    assert val.minus == pytest.approx(minus, abs=1e-9)
    # orientation: e+ part near -2 pi i, e- part near +2 pi i
    assert val.plus.imag < -6 and val.minus.imag > 6


def test_normalize_sign():
    out = normalize(sn.BiComplex(-2j * math.pi * 3.0, 2j * math.pi * 5.0))
    assert out.plus == pytest.approx(3.0) and out.minus == pytest.approx(5.0)


@pytest.mark.parametrize("S", [1e2, 1e3, 1e4])
def test_segment_correction_bound(S):
    R, eps = 1.0, 1e-2
    F = make_solution(family("gaussian"))
    p = KernelParams(SplitComplex(0.3, 0.1), eps)
    corr = segment_correction(F, p, R, S, TIGHT)
    bound = 16 * R * F.declared_bound / (S * eps)
    assert abs(corr.plus) <= bound and abs(corr.minus) <= bound


def test_segment_correction_decays_like_one_over_S():
    R, eps = 1.0, 1e-2
    F = make_solution(family("constant"))
    p = KernelParams(SplitComplex(0.3, 0.1), eps)
    a = abs(segment_correction(F, p, R, 1e3, TIGHT))
    b = abs(segment_correction(F, p, R, 1e4, TIGHT))
    assert math.log10(a / b) == pytest.approx(1.0, abs=0.2)


@pytest.mark.parametrize("name", ["gaussian", "sech", "constant"])
@pytest.mark.parametrize("z0", [(0.3, 0.1), (0.0, 0.0), (0.5, 0.5), (-0.4, 0.2)])
def test_reconstruct_bounded(name, z0):
    F = make_solution(family(name))
    rep = reconstruct(F, SplitComplex(*z0), 1.0)
    assert rep.abs_error < 1e-4
    assert rep.residual_imaginary_part < 1e-8
    errs = [float(sn.modulus(e.value.real - rep.reference)) for e in rep.estimates]
    assert errs == sorted(errs, reverse=True)


def test_reconstruct_rejects_bad_input():
    F = make_solution(family("gaussian"))
    with pytest.raises(ValueError):
        reconstruct(F, SplitComplex(2.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        reconstruct(make_solution(family("linear")), SplitComplex(0.1, 0.0), 1.0)


def test_reconstruct_windowed_unbounded():
    F = make_solution(family("quadratic"))
    z0 = SplitComplex(0.3, -0.2)
    rep = reconstruct_windowed(F, z0, 1.0, bump_window(1.0))
    assert rep.windowed and rep.abs_error < 1e-4


def test_reconstruct_contour_independence():
    F = make_solution(family("sech"))
    z0 = SplitComplex(0.2, 0.3)
    a = reconstruct(F, z0, 1.0).estimate
    b = reconstruct(F, z0, 2.0).estimate
    assert float(sn.modulus(a - b)) < 1e-4


def test_halving_delta_does_not_move_estimate():
    # the coupled rule S = R / (eps delta) stands in for the iterated limit
    F = make_solution(family("gaussian"))
    z0 = SplitComplex(0.3, 0.1)
    a = reconstruct(F, z0, 1.0, LimitSchedule(delta=1e-5)).estimate
    b = reconstruct(F, z0, 1.0, LimitSchedule(delta=0.5e-5)).estimate
    assert float(sn.modulus(a - b)) < 1e-4


def test_schedule_validation():
    with pytest.raises(ValueError):
        LimitSchedule((1e-2, 1e-1))
    with pytest.raises(ValueError):
        LimitSchedule((1e-2,))
    with pytest.raises(ValueError):
        LimitSchedule(delta=0.0)
    assert LimitSchedule((1e-2,), extrapolation="none").S_of_eps(1e-2, 1.0) == pytest.approx(1e7)


def test_poisson_constant_profile():
    val = poisson_limit_check(lambda t: np.ones_like(t), 0.0, 1e-4, 1e4)
    exact = 4j * math.atan(1e4 / 1e-4)
    assert val == pytest.approx(exact, rel=1e-12)
    assert abs(val - 2j * math.pi) / (2 * math.pi) < 1e-6


@pytest.mark.parametrize("t0", [0.0, 0.7, -1.3])
@pytest.mark.parametrize("eps", [1e-1, 1e-4])
def test_poisson_gaussian_against_faddeeva(t0, eps):
    val = poisson_limit_check(lambda t: np.exp(-t * t), t0, eps, 1e4)
    # Lorentzian convolved with a Gaussian is a Voigt profile: pi Re w(t0 + i eps)
    exact = 2j * math.pi * wofz(t0 + 1j * eps).real
    assert val == pytest.approx(exact, rel=1e-9)


def test_poisson_validation():
    with pytest.raises(ValueError):
        poisson_limit_check(np.cos, 0.0, 0.0, 10.0)
    with pytest.raises(ValueError):
        poisson_limit_check(np.cos, 20.0, 0.1, 10.0)
