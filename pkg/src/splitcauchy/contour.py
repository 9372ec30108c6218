"""Line integrals over hyperbola contours and the reconstruction formula.

The region U = {|N(Z)| < R} is bounded by the four hyperbola branches
uv = +R and uv = -R.  They are oriented counterclockwise as the boundary
of U, truncated at |u|, |v| <= S, and closed off near infinity by four short
segments of length 2R/S.

Because e+ dZ = e+ du and e- dZ = e- dv, the e+ coefficient of a line
integral of G dZ is the ordinary integral of G+ du and the e- coefficient
is the integral of G- dv; every integral in this module is computed that
way.  Hyperbola arcs are parametrized by t = log|u| so that the span
R/S <= |u| <= S, many decades wide, costs a fixed number of panels per
decade.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .cauchy_kernel import EPS_MAX, EPS_MIN, KernelParams, K_minus, K_plus, kernel
from .quadrature import QuadratureConfig, QuadratureError, integrate
from .splitnum import BiComplex, SplitComplex, as_bicomplex, modulus, norm
from .wavefield import WaveFunction, WindowProfile, dbar_fd

__all__ = [
    "HyperbolaArc", "Segment", "HyperbolaContour", "LimitSchedule",
    "ScheduleEstimate", "ReconstructionReport", "QuadratureConfig",
    "QuadratureError", "build_contour", "rectangle", "line_integral",
    "signed_area", "stokes_residual", "segment_correction", "reconstruct",
    "reconstruct_windowed", "poisson_limit_check", "peak_points", "normalize",
    "contour_integral",
]

TWO_PI_I = 2j * math.pi


# -- arcs -----------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolaArc:
    """Piece of uv = level traversed from u_start to u_end (same sign)."""

    level: float
    u_start: float
    u_end: float

    def __post_init__(self):
        if self.u_start == 0 or np.sign(self.u_start) != np.sign(self.u_end):
            raise ValueError("hyperbola arc must stay on one side of u = 0")

    @property
    def bounds(self) -> Tuple[float, float]:
        return math.log(abs(self.u_start)), math.log(abs(self.u_end))

    def point(self, t):
        u = math.copysign(1.0, self.u_start) * np.exp(t)
        return SplitComplex.from_null(u, self.level / u)

    def tangent(self, t, z: SplitComplex):
        # d/dt of (s e^t, level e^-t / s)
        return z.u, -z.v

    def params_at_u(self, values) -> list:
        lo, hi = sorted((abs(self.u_start), abs(self.u_end)))
        s = math.copysign(1.0, self.u_start)
        return [math.log(abs(a)) for a in values if a * s > 0 and lo < abs(a) < hi]

    def params_at_v(self, values) -> list:
        return self.params_at_u([self.level / b for b in values if b != 0])


@dataclass(frozen=True)
class Segment:
    """Straight segment from start to end, parameter t in [0, 1]."""

    start: SplitComplex
    end: SplitComplex

    @property
    def bounds(self) -> Tuple[float, float]:
        return 0.0, 1.0

    @property
    def du(self) -> float:
        return self.end.u - self.start.u

    @property
    def dv(self) -> float:
        return self.end.v - self.start.v

    def point(self, t):
        return SplitComplex.from_null(self.start.u + t * self.du, self.start.v + t * self.dv)

    def tangent(self, t, z: SplitComplex):
        return np.full_like(t, self.du), np.full_like(t, self.dv)

    def params_at_u(self, values) -> list:
        if self.du == 0:
            return []
        ts = [(a - self.start.u) / self.du for a in values]
        return [t for t in ts if 0 < t < 1]

    def params_at_v(self, values) -> list:
        if self.dv == 0:
            return []
        ts = [(b - self.start.v) / self.dv for b in values]
        return [t for t in ts if 0 < t < 1]


def rectangle(x0: float, x1: float, y0: float, y1: float) -> Tuple[Segment, ...]:
    """Counterclockwise boundary of [x0, x1] x [y0, y1]."""
    corners = [SplitComplex(x0, y0), SplitComplex(x1, y0),
               SplitComplex(x1, y1), SplitComplex(x0, y1)]
    return tuple(Segment(corners[k], corners[(k + 1) % 4]) for k in range(4))


@dataclass(frozen=True)
class HyperbolaContour:
    """Truncated boundary of U = {|N(Z)| < R}, counterclockwise."""

    R: float
    S: float
    branches: Tuple[HyperbolaArc, ...]
    orientation: str = "counterclockwise"

    def segments(self) -> Tuple[Segment, ...]:
        """Closing segments of U_S, in loop order after each branch."""
        R, S = self.R, self.S
        n = SplitComplex.from_null
        return (
            Segment(n(S, R / S), n(S, -R / S)),
            Segment(n(R / S, -S), n(-R / S, -S)),
            Segment(n(-S, -R / S), n(-S, R / S)),
            Segment(n(-R / S, S), n(R / S, S)),
        )

    def boundary(self) -> tuple:
        """Closed loop: branch, segment, branch, segment, ..."""
        return tuple(a for pair in zip(self.branches, self.segments()) for a in pair)


def build_contour(R: float, S: float) -> HyperbolaContour:
    if not R > 0:
        raise ValueError("R must be positive")
    if not S > math.sqrt(R):
        raise ValueError(f"truncation S={S!r} must exceed sqrt(R)={math.sqrt(R)!r}")
    lo = R / S
    branches = (
        HyperbolaArc(R, lo, S),      # N = +R, x > 0: upward
        HyperbolaArc(-R, S, lo),     # N = -R, y > 0: leftward
        HyperbolaArc(R, -lo, -S),    # N = +R, x < 0: downward
        HyperbolaArc(-R, -S, -lo),   # N = -R, y < 0: rightward
    )
    return HyperbolaContour(R, S, branches)


# -- line integrals --------------------------------------------------------


def _integrate_arcs(G, arcs, cfg: QuadratureConfig, peaks_u=(), peaks_v=(),
                    component: str = "both"):
    if component not in ("both", "plus", "minus"):
        raise ValueError("component must be 'both', 'plus' or 'minus'")
    plus = component in ("both", "plus")
    minus = component in ("both", "minus")
    total = np.zeros(2, dtype=complex)
    err = 0.0
    evals = 0
    for arc in arcs:
        def integrand(t, arc=arc):
            z = arc.point(t)
            val = as_bicomplex(G(z))
            du, dv = arc.tangent(t, z)
            gp = val.plus * du if plus else np.zeros_like(t, dtype=complex)
            gm = val.minus * dv if minus else np.zeros_like(t, dtype=complex)
            return np.stack([np.broadcast_to(gp, t.shape), np.broadcast_to(gm, t.shape)])

        a, b = arc.bounds
        bps = []
        if plus:
            bps += arc.params_at_u(peaks_u)
        if minus:
            bps += arc.params_at_v(peaks_v)
        value, e, n = integrate(integrand, a, b, bps, cfg.abs_tol, cfg.rel_tol,
                                cfg.max_subdivisions)
        total += value
        err += e
        evals += n
    return BiComplex(complex(total[0]), complex(total[1])), err, evals


def line_integral(G: Callable, arcs: Sequence, cfg: Optional[QuadratureConfig] = None,
                  peaks_u: Sequence[float] = (), peaks_v: Sequence[float] = (),
                  component: str = "both") -> BiComplex:
    """Integral of G(Z) dZ along ``arcs`` (a HyperbolaContour uses its branches).

    ``peaks_u`` / ``peaks_v`` are null-coordinate values where the e+ / e-
    integrand is sharply peaked; arcs are split there.
    """
    cfg = cfg or QuadratureConfig()
    if isinstance(arcs, HyperbolaContour):
        arcs = arcs.branches
    value, _, _ = _integrate_arcs(G, arcs, cfg, peaks_u, peaks_v, component)
    return value


def signed_area(arcs: Sequence, cfg: Optional[QuadratureConfig] = None) -> float:
    """(1/2) loop integral of x dy - y dx = (1/4) loop integral of v du - u dv."""
    cfg = cfg or QuadratureConfig()
    total = 0.0
    for arc in arcs:
        def integrand(t, arc=arc):
            z = arc.point(t)
            du, dv = arc.tangent(t, z)
            return 0.25 * (z.v * du - z.u * dv)

        a, b = arc.bounds
        value, _, _ = integrate(integrand, a, b, (), cfg.abs_tol, cfg.rel_tol,
                                cfg.max_subdivisions)
        total += float(value)
    return total


def stokes_residual(F: Callable, cell: Tuple[float, float, float, float],
                    h: Optional[float] = None, cfg: Optional[QuadratureConfig] = None):
    """Loop integral of F dZ around ``cell`` minus 2j * dbar F(centre) * area.

    ``cell`` is (x0, x1, y0, y1).  For smooth F the result is
    O(area * (h^2 + diam^2)).
    """
    x0, x1, y0, y1 = cell
    if not (x1 > x0 and y1 > y0):
        raise ValueError("cell must have positive side lengths")
    cfg = cfg or QuadratureConfig(abs_tol=1e-14, rel_tol=1e-13)
    loop = line_integral(F, rectangle(x0, x1, y0, y1), cfg)
    centre = SplitComplex((x0 + x1) / 2, (y0 + y1) / 2)
    area = (x1 - x0) * (y1 - y0)
    dbar = dbar_fd(F, centre, h)
    diff = loop - as_bicomplex(dbar.mul_j() * (2 * area))
    return diff.real if isinstance(dbar, SplitComplex) else diff


# -- kernels times fields --------------------------------------------------


def peak_points(centre: float, eps: float, extent: float) -> list:
    """centre, and centre +/- eps * 10**k out to ``extent``."""
    pts = [centre]
    k_max = max(0, math.ceil(math.log10(max(extent / eps, 1.0))))
    for k in range(k_max + 1):
        d = eps * 10.0 ** k
        pts += [centre - d, centre + d]
    return pts


def _breakpoints(p: KernelParams, extent: float, cfg: QuadratureConfig):
    if cfg.peak_refinement:
        pu = peak_points(p.z0.u, p.eps, extent)
        pv = peak_points(p.z0.v, p.eps, extent)
    else:
        pu, pv = [p.z0.u], [p.z0.v]
    if p.window is not None:
        r = p.window.support_radius
        pu += [p.z0.u - r, p.z0.u + r]
        pv += [p.z0.v - r, p.z0.v + r]
    return pu, pv


def _field_value(F, z):
    if isinstance(F, WaveFunction):
        return F.bicomplex(z)
    return as_bicomplex(F(z))


def _windowed_part(k: BiComplex, z: SplitComplex, p: KernelParams) -> BiComplex:
    if p.window is None:
        return k
    return BiComplex(k.plus * p.window(z.u - p.z0.u), k.minus * p.window(z.v - p.z0.v))


def segment_correction(F: Callable, p: KernelParams, R: float, S: float,
                       cfg: Optional[QuadratureConfig] = None) -> BiComplex:
    """Integral of K_{Z0,eps} F dZ over the four closing segments of U_S.

    On |v| = S only du is nonzero, on |u| = S only dv, so each kernel part
    is evaluated only where its sign factor is defined.
    """
    cfg = cfg or QuadratureConfig()
    contour = build_contour(R, S)
    segs = contour.segments()
    pu, pv = _breakpoints(p, S, cfg)

    def g_plus(z):
        return _windowed_part(K_plus(z, p), z, p) * _field_value(F, z)

    def g_minus(z):
        return _windowed_part(K_minus(z, p), z, p) * _field_value(F, z)

    along_u = [s for s in segs if s.du != 0]
    along_v = [s for s in segs if s.dv != 0]
    plus, _, _ = _integrate_arcs(g_plus, along_u, cfg, pu, (), "plus")
    minus, _, _ = _integrate_arcs(g_minus, along_v, cfg, (), pv, "minus")
    return plus + minus


# -- reconstruction --------------------------------------------------------


@dataclass(frozen=True)
class LimitSchedule:
    """Decreasing eps values, truncation rule S(eps), and extrapolation.

    The default rule S = R / (eps * delta) keeps the closing-segment error
    of order delta at every eps.
    """

    epsilons: Tuple[float, ...] = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)
    delta: float = 1e-5
    extrapolation: str = "linear"
    truncation: Optional[Callable[[float, float], float]] = None

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        if not eps:
            raise ValueError("schedule needs at least one eps")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilons must be strictly decreasing")
        if not all(EPS_MIN <= e <= EPS_MAX for e in eps):
            raise ValueError(f"epsilons must lie in [{EPS_MIN:g}, {EPS_MAX:g}]")
        if self.extrapolation not in ("none", "linear"):
            raise ValueError("extrapolation must be 'none' or 'linear'")
        if self.extrapolation == "linear" and len(eps) < 2:
            raise ValueError("linear extrapolation needs two or more eps values")
        if not self.delta > 0:
            raise ValueError("delta must be positive")

    def S_of_eps(self, eps: float, R: float) -> float:
        if self.truncation is not None:
            return self.truncation(eps, R)
        return R / (eps * self.delta)


@dataclass(frozen=True)
class ScheduleEstimate:
    """Result at one (eps, S).

    ``integral`` is the truncated contour integral of K_{Z0,eps} F dZ as
    computed; ``value = -j * integral / (2 pi i)`` is the estimate of F(Z0).
    """

    eps: float
    S: float
    integral: BiComplex
    value: BiComplex
    evals: int
    wall_time: float


def normalize(integral: BiComplex) -> BiComplex:
    """Map a counterclockwise contour integral to the F(Z0) estimate.

    Around the counterclockwise boundary the e+ part of the integral tends
    to -2 pi i e+ F(Z0) and the e- part to +2 pi i e- F(Z0), i.e. the whole
    integral to -2 pi i j F(Z0).  Multiplying by -j / (2 pi i) undoes both.
    """
    scaled = integral / TWO_PI_I
    return BiComplex(-scaled.plus, scaled.minus)


@dataclass(frozen=True)
class ReconstructionReport:
    z0: SplitComplex
    R: float
    estimates: Tuple[ScheduleEstimate, ...]
    extrapolated: BiComplex
    estimate: SplitComplex
    reference: SplitComplex
    abs_error: float
    residual_imaginary_part: float
    windowed: bool = False

    @property
    def evals(self) -> int:
        return sum(e.evals for e in self.estimates)


def _extrapolate(estimates, how: str) -> BiComplex:
    last = estimates[-1]
    if how == "none":
        return last.value
    prev = estimates[-2]
    e1, e2 = prev.eps, last.eps
    return (prev.value * (-e2) + last.value * e1) / (e1 - e2)


def contour_integral(F: Callable, p: KernelParams, R: float, S: float,
                     cfg: Optional[QuadratureConfig] = None):
    """Integral of K_{Z0,eps} F dZ over the truncated hyperbolas.

    Returns ``(value, n_evaluations)``; :func:`normalize` turns it into an
    estimate of F(Z0).
    """
    cfg = cfg or QuadratureConfig()
    contour = build_contour(R, S)
    pu, pv = _breakpoints(p, S, cfg)

    def G(z):
        return kernel(z, p) * _field_value(F, z)

    value, _, evals = _integrate_arcs(G, contour.branches, cfg, pu, pv)
    return value, evals


def _reconstruct(F, z0, R, window, sched, cfg) -> ReconstructionReport:
    sched = sched or LimitSchedule()
    cfg = cfg or QuadratureConfig()
    if not R > 0:
        raise ValueError("R must be positive")
    if not abs(float(norm(z0))) < R:
        raise ValueError(f"Z0 = {z0!r} lies outside U: |N(Z0)| = {abs(float(norm(z0)))!r} >= R = {R!r}")
    rows = []
    for eps in sched.epsilons:
        S = sched.S_of_eps(eps, R)
        p = KernelParams(z0, eps, window)
        start = time.perf_counter()
        value, evals = contour_integral(F, p, R, S, cfg)
        rows.append(ScheduleEstimate(eps, S, value, normalize(value), evals,
                                     time.perf_counter() - start))
    limit = _extrapolate(rows, sched.extrapolation)
    reference = F(z0)
    estimate = limit.real
    return ReconstructionReport(
        z0=z0, R=R, estimates=tuple(rows), extrapolated=limit, estimate=estimate,
        reference=reference,
        abs_error=float(modulus(estimate - reference)),
        residual_imaginary_part=float(modulus(limit.imag)),
        windowed=window is not None,
    )


def reconstruct(F: Callable, z0: SplitComplex, R: float = 1.0,
                sched: Optional[LimitSchedule] = None,
                cfg: Optional[QuadratureConfig] = None) -> ReconstructionReport:
    """Recover F(z0) from its values on |N(Z)| = R.

    F must be bounded; a WaveFunction without a declared bound is rejected
    (use :func:`reconstruct_windowed`).
    """
    if isinstance(F, WaveFunction) and not F.bounded:
        raise ValueError("reconstruct needs bounded F; use reconstruct_windowed")
    return _reconstruct(F, z0, R, None, sched, cfg)


def reconstruct_windowed(F: Callable, z0: SplitComplex, R: float, window: WindowProfile,
                         sched: Optional[LimitSchedule] = None,
                         cfg: Optional[QuadratureConfig] = None) -> ReconstructionReport:
    """As :func:`reconstruct` with the kernel cut off by ``window``; F may be unbounded."""
    if abs(window.value_at_zero - 1.0) > 1e-12:
        raise ValueError("window must satisfy phi(0) = 1")
    return _reconstruct(F, z0, R, window, sched, cfg)


def poisson_limit_check(profile: Callable, t0: float, eps: float, T: float,
                        cfg: Optional[QuadratureConfig] = None) -> complex:
    """Integral over [-T, T] of 2 i eps / ((t - t0)^2 + eps^2) * profile(t).

    Tends to 2 pi i profile(t0) as eps -> 0 and T -> infinity.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if not T > abs(t0):
        raise ValueError("T must exceed |t0|")
    cfg = cfg or QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)

    def integrand(t):
        return 2j * eps / ((t - t0) ** 2 + eps ** 2) * np.asarray(profile(t), dtype=float)

    bps = peak_points(t0, eps, 2 * T)
    value, _, _ = integrate(integrand, -T, T, bps, cfg.abs_tol, cfg.rel_tol,
                            cfg.max_subdivisions)
    return complex(value)
