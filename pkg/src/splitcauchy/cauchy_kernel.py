"""The split-complex Cauchy kernel K(Z) = 1/Z and its regularizations.

In null coordinates K(Z) = e+/u + e-/v, singular on the whole light cone
uv = 0 rather than at a point.  The regularized kernels push each
denominator off the real axis by i*eps with a sign taken from the *other*
null coordinate, which is what makes them values in R^{1,1} (x) C:

    K_eps(Z)        = e+ / (u + i eps sign v)   + e- / (v + i eps sign u)
    K_{Z0,eps}(Z)   = e+ / (u-u0 + i eps sign v) + e- / (v-v0 + i eps sign u)
    K_{Z0,phi,eps}  = same, with the e+/e- parts multiplied by phi(u-u0),
                      phi(v-v0)

The sign is undefined where u = 0 or v = 0; these functions raise there
instead of picking a convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .splitnum import BiComplex, SplitComplex, inverse, NonInvertibleError
from .wavefield import WindowProfile

EPS_MIN = 1e-8
EPS_MAX = 1.0


class LightConeError(ValueError):
    """A regularized kernel was evaluated where sign(u) or sign(v) vanishes."""


@dataclass(frozen=True)
class KernelParams:
    z0: SplitComplex = field(default_factory=lambda: SplitComplex(0.0, 0.0))
    eps: float = 1e-3
    window: Optional[WindowProfile] = None

    def __post_init__(self):
        if not EPS_MIN <= self.eps <= EPS_MAX:
            raise ValueError(f"eps must lie in [{EPS_MIN:g}, {EPS_MAX:g}], got {self.eps!r}")
        if self.window is not None and abs(self.window.value_at_zero - 1.0) > 1e-12:
            raise ValueError("window must satisfy phi(0) = 1")


def K(z: SplitComplex) -> SplitComplex:
    """Unregularized kernel 1/Z."""
    try:
        return inverse(z)
    except NonInvertibleError as exc:
        raise LightConeError(f"K is singular on the light cone: {z!r}") from exc


def _signs(z: SplitComplex):
    su = np.sign(z.u)
    sv = np.sign(z.v)
    if np.any(su == 0) or np.any(sv == 0):
        raise LightConeError("regularized kernel undefined where u = 0 or v = 0")
    return su, sv


def K_eps(z: SplitComplex, eps: float) -> BiComplex:
    if not eps > 0:
        raise ValueError("eps must be positive")
    su, sv = _signs(z)
    return BiComplex(1.0 / (z.u + 1j * eps * sv), 1.0 / (z.v + 1j * eps * su))


def K_plus(z: SplitComplex, p: KernelParams) -> BiComplex:
    """e+ part of K_{Z0,eps}: 1/((u - u0) + i eps sign v) on e+."""
    sv = np.sign(z.v)
    if np.any(sv == 0):
        raise LightConeError("K_plus undefined where v = 0")
    plus = 1.0 / ((z.u - p.z0.u) + 1j * p.eps * sv)
    return BiComplex(plus, np.zeros_like(plus))


def K_minus(z: SplitComplex, p: KernelParams) -> BiComplex:
    """e- part of K_{Z0,eps}: 1/((v - v0) + i eps sign u) on e-."""
    su = np.sign(z.u)
    if np.any(su == 0):
        raise LightConeError("K_minus undefined where u = 0")
    minus = 1.0 / ((z.v - p.z0.v) + 1j * p.eps * su)
    return BiComplex(np.zeros_like(minus), minus)


def K_shifted(z: SplitComplex, p: KernelParams) -> BiComplex:
    su, sv = _signs(z)
    return BiComplex(1.0 / ((z.u - p.z0.u) + 1j * p.eps * sv),
                     1.0 / ((z.v - p.z0.v) + 1j * p.eps * su))


def K_windowed(z: SplitComplex, p: KernelParams) -> BiComplex:
    if p.window is None:
        raise ValueError("K_windowed needs KernelParams.window")
    k = K_shifted(z, p)
    return BiComplex(k.plus * p.window(z.u - p.z0.u),
                     k.minus * p.window(z.v - p.z0.v))


def kernel(z: SplitComplex, p: KernelParams) -> BiComplex:
    """K_windowed when p carries a window, else K_shifted."""
    return K_shifted(z, p) if p.window is None else K_windowed(z, p)
