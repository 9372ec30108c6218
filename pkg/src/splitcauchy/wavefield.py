"""Solutions of the split-complex Cauchy-Riemann equation dbar F = 0.

Every smooth solution has the form

    F(x, y) = (f(x+y) + j f(x+y)) + (g(x-y) - j g(x-y))
            = 2 f(u) e+ + 2 g(v) e-,

so a solution is carried around as its pair of characteristic profiles
(f, g).  Fields elsewhere in the package are plain callables mapping a
SplitComplex (scalar or array components) to a SplitComplex or BiComplex;
the finite-difference operators here accept any such callable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .splitnum import BiComplex, SplitComplex, as_split, modulus

Profile = Callable[[np.ndarray], np.ndarray]
Field = Callable[[SplitComplex], object]

DEFAULT_FD_STEP = 1e-5
SOLUTION_TOL = 1e-6


def _apply(fn: Profile, t):
    """Evaluate a profile, broadcasting constants and scalar-only callables."""
    try:
        out = fn(t)
    except TypeError:
        out = np.vectorize(fn, otypes=[float])(t)
    out = np.asarray(out, dtype=float)
    if np.ndim(t) == 0:
        return float(out)
    return np.broadcast_to(out, np.shape(t))


def _zero(t):
    return np.zeros_like(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class CharacteristicData:
    """Left/right-moving profiles f(u) and g(v).

    ``bound`` is a declared sup-norm bound M for |f| and |g|; leaving it
    ``None`` means the data are unbounded (or the bound is unknown).
    """

    f: Profile
    g: Profile
    bound: Optional[float] = None

    @property
    def bounded(self) -> bool:
        return self.bound is not None


@dataclass(frozen=True)
class WindowProfile:
    """Compactly supported cutoff with phi(0) = 1."""

    phi: Profile
    support_radius: float

    def __post_init__(self):
        if not self.support_radius > 0:
            raise ValueError("support_radius must be positive")
        at_zero = float(_apply(self.phi, 0.0))
        if abs(at_zero - 1.0) > 1e-12:
            raise ValueError(f"window must satisfy phi(0) = 1, got phi(0) = {at_zero!r}")

    @property
    def value_at_zero(self) -> float:
        return float(_apply(self.phi, 0.0))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.where(np.abs(t) < self.support_radius, _apply(self.phi, t), 0.0)
        return float(out) if out.ndim == 0 else out


def bump_window(radius: float = 1.0) -> WindowProfile:
    """exp(1 - 1/(1 - (t/r)^2)) on |t| < r, zero outside."""

    def phi(t):
        s = np.asarray(t, dtype=float) / radius
        inside = np.abs(s) < 1.0
        denom = np.where(inside, 1.0 - s * s, 1.0)
        return np.where(inside, np.exp(1.0 - 1.0 / denom), 0.0)

    return WindowProfile(phi, radius)


@dataclass(frozen=True)
class Window:
    profile: WindowProfile
    center: SplitComplex


@dataclass(frozen=True)
class WaveFunction:
    """Callable solution F built from characteristic data.

    With a window attached, the e+ part is multiplied by phi(u - u0) and the
    e- part by phi(v - v0), both centred at ``window.center``.
    """

    data: CharacteristicData
    window: Optional[Window] = None
    declared_bound: Optional[float] = None

    @property
    def bounded(self) -> bool:
        return self.declared_bound is not None

    def idempotent(self, z: SplitComplex) -> Tuple[np.ndarray, np.ndarray]:
        """Real coefficients (F+, F-) of F(z) on e+ and e-."""
        fp = 2.0 * _apply(self.data.f, z.u)
        fm = 2.0 * _apply(self.data.g, z.v)
        if self.window is not None:
            c = self.window.center
            fp = fp * self.window.profile(z.u - c.u)
            fm = fm * self.window.profile(z.v - c.v)
        return fp, fm

    def __call__(self, z: SplitComplex) -> SplitComplex:
        fp, fm = self.idempotent(z)
        return SplitComplex.from_null(fp, fm)

    def bicomplex(self, z: SplitComplex) -> BiComplex:
        fp, fm = self.idempotent(z)
        return BiComplex(fp + 0j, fm + 0j)


def make_solution(data: CharacteristicData) -> WaveFunction:
    bound = None if data.bound is None else 2.0 * data.bound
    return WaveFunction(data, declared_bound=bound)


def evaluate(F: WaveFunction, z: SplitComplex) -> SplitComplex:
    return F(z)


# -- finite differences ----------------------------------------------------


def default_step(z: SplitComplex) -> float:
    return DEFAULT_FD_STEP * max(1.0, float(np.max(modulus(z))))


def _partials(F: Field, z: SplitComplex, h: float):
    hx = SplitComplex(h, 0.0)
    hy = SplitComplex(0.0, h)
    dx = (F(z + hx) - F(z - hx)) / (2 * h)
    dy = (F(z + hy) - F(z - hy)) / (2 * h)
    return dx, dy


def dbar_fd(F: Field, z: SplitComplex, h: Optional[float] = None):
    """Central-difference estimate of (1/2)(d/dx - j d/dy) F at z."""
    if h is None:
        h = default_step(z)
    if not h > 0:
        raise ValueError("step h must be positive")
    dx, dy = _partials(F, z, h)
    return (dx - dy.mul_j()) / 2


def d_fd(F: Field, z: SplitComplex, h: Optional[float] = None):
    """Central-difference estimate of (1/2)(d/dx + j d/dy) F at z."""
    if h is None:
        h = default_step(z)
    if not h > 0:
        raise ValueError("step h must be positive")
    dx, dy = _partials(F, z, h)
    return (dx + dy.mul_j()) / 2


def box_fd(F: Field, z: SplitComplex, h: Optional[float] = None):
    """Three-point estimate of the wave operator F_xx - F_yy at z."""
    if h is None:
        h = default_step(z)
    if not h > 0:
        raise ValueError("step h must be positive")
    hx = SplitComplex(h, 0.0)
    hy = SplitComplex(0.0, h)
    centre = F(z)
    fxx = F(z + hx) - centre - centre + F(z - hx)
    fyy = F(z + hy) - centre - centre + F(z - hy)
    return (fxx - fyy) / (h * h)


def residual_magnitude(value) -> np.ndarray:
    """Euclidean size of a SplitComplex or BiComplex value (elementwise)."""
    if isinstance(value, BiComplex):
        return abs(value)
    return modulus(value)


def is_solution(F: Field, points: SplitComplex, h: Optional[float] = None,
                tol: float = SOLUTION_TOL) -> bool:
    return bool(np.all(residual_magnitude(dbar_fd(F, points, h)) <= tol))


# -- structure of solutions ------------------------------------------------


def project_characteristic(F: Field, sign: int) -> Callable:
    """Single-variable profile of the e+ (sign=+1) or e- (sign=-1) part.

    Returns t -> F+(u=t, v=0) or t -> F-(u=0, v=t).  For a solution the e+
    coefficient depends on u alone, so the value does not depend on where
    along the line u = t it is sampled.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")

    def profile(t):
        t = np.asarray(t, dtype=float)
        zero = np.zeros_like(t)
        if sign == 1:
            return as_split(F(SplitComplex.from_null(t, zero))).u
        return as_split(F(SplitComplex.from_null(zero, t))).v

    return profile


def product(F: Field, G: Field) -> Field:
    """Pointwise product; a product of solutions is again a solution."""

    def field(z):
        return F(z) * G(z)

    return field


def apply_window(F: WaveFunction, window: WindowProfile,
                 z0: SplitComplex) -> Tuple[WaveFunction, WaveFunction]:
    """Split F into bounded solutions F1 = e+ phi(u-u0) F and F2 = e- phi(v-v0) F.

    F1 + F2 agrees with F at z0.  Bounds are estimated by sampling the
    profiles over the window support.
    """
    if abs(window.value_at_zero - 1.0) > 1e-12:
        raise ValueError("window must satisfy phi(0) = 1")
    if F.window is not None:
        raise ValueError("F is already windowed")
    r = window.support_radius
    centre = Window(window, z0)
    f1 = CharacteristicData(F.data.f, _zero)
    f2 = CharacteristicData(_zero, F.data.g)
    tu = np.linspace(z0.u - r, z0.u + r, 2001)
    tv = np.linspace(z0.v - r, z0.v + r, 2001)
    m1 = 2.0 * float(np.max(np.abs(_apply(F.data.f, tu) * window(tu - z0.u))))
    m2 = 2.0 * float(np.max(np.abs(_apply(F.data.g, tv) * window(tv - z0.v))))
    return (WaveFunction(f1, centre, declared_bound=m1),
            WaveFunction(f2, centre, declared_bound=m2))


def windowed(F: WaveFunction, window: WindowProfile, z0: SplitComplex) -> WaveFunction:
    """F1 + F2 from :func:`apply_window` as a single field."""
    if abs(window.value_at_zero - 1.0) > 1e-12:
        raise ValueError("window must satisfy phi(0) = 1")
    return WaveFunction(F.data, Window(window, z0))


# -- built-in characteristic data -------------------------------------------


def _sech(t):
    # 2 e^-|t| / (1 + e^-2|t|) does not overflow for large |t|
    a = np.exp(-np.abs(t))
    return 2.0 * a / (1.0 + a * a)


def _gaussian(scale=1.0):
    return CharacteristicData(lambda t: np.exp(-(t / scale) ** 2),
                              lambda t: _sech(t / scale), bound=1.0)


def _sech_family(scale=1.0):
    return CharacteristicData(lambda t: _sech(t / scale),
                              lambda t: _sech((t - 0.5) / scale), bound=1.0)


def _sinbump(radius=3.0):
    bump = bump_window(radius)
    return CharacteristicData(lambda t: np.sin(t) * bump(t),
                              lambda t: np.sin(2 * t) * bump(t), bound=1.0)


def _constant(value=1.0):
    half = value / 2.0
    return CharacteristicData(lambda t: np.full_like(np.asarray(t, dtype=float), half),
                              lambda t: np.full_like(np.asarray(t, dtype=float), half),
                              bound=abs(half))


def _linear(scale=1.0):
    return CharacteristicData(lambda t: scale * np.asarray(t, dtype=float),
                              lambda t: scale * np.asarray(t, dtype=float))


def _quadratic(scale=1.0):
    return CharacteristicData(lambda t: scale * np.asarray(t, dtype=float) ** 2,
                              lambda t: -scale * np.asarray(t, dtype=float) ** 2)


FAMILIES = {
    "gaussian": _gaussian,     # f = exp(-t^2), g = sech(t)
    "sech": _sech_family,      # f = sech(t), g = sech(t - 1/2)
    "sinbump": _sinbump,       # sin(t) and sin(2t) under a bump of radius 3
    "constant": _constant,     # F == value
    "linear": _linear,         # f = g = t, F = 2x + 2jy (unbounded)
    "quadratic": _quadratic,   # f = t^2, g = -t^2 (unbounded)
}


def family(label: str) -> CharacteristicData:
    """Look up ``name`` or ``name:param`` in :data:`FAMILIES`."""
    name, _, param = label.partition(":")
    try:
        factory = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return factory(float(param)) if param else factory()
