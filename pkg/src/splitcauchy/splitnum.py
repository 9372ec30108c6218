"""Split-complex (hyperbolic) numbers and the complexified algebra.

A split-complex number ``Z = x + jy`` with ``j**2 = 1`` is kept in two
bases at once: the standard ``{1, j}`` coordinates ``(x, y)`` and the null
coordinates ``u = x + y``, ``v = x - y``.  Multiplication is diagonal in the
null coordinates (they are the coefficients of the idempotents
``e+ = (1 + j)/2`` and ``e- = (1 - j)/2``), so carrying them alongside
``(x, y)`` keeps the norm ``N(Z) = u v`` and the inverse ``(1/u, 1/v)``
accurate to a few ulp even next to the light cone, where ``x**2 - y**2``
cancels catastrophically.

Components may be Python floats or numpy arrays; arrays broadcast like
ordinary numpy arithmetic, which the quadrature code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

Real = Union[float, np.ndarray]

# |N(Z)| below this (times max(1, |Z|^2)) is treated as zero.
INVERTIBILITY_RTOL = 1e-14


class NonInvertibleError(ZeroDivisionError):
    """Raised when inverting an element on the light cone N(Z) = 0."""


@dataclass(frozen=True, eq=False)
class NullCoords:
    """Characteristic coordinates u = x + y, v = x - y."""

    u: Real
    v: Real


@dataclass(frozen=True, eq=False)
class SplitComplex:
    """Element ``x + jy`` of the split-complex plane."""

    x: Real
    y: Real
    _u: Real = field(init=False, repr=False)
    _v: Real = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_u", self.x + self.y)
        object.__setattr__(self, "_v", self.x - self.y)

    @classmethod
    def _make(cls, x, y, u, v) -> "SplitComplex":
        # both representations supplied, each rounded in its own basis
        obj = object.__new__(cls)
        object.__setattr__(obj, "x", x)
        object.__setattr__(obj, "y", y)
        object.__setattr__(obj, "_u", u)
        object.__setattr__(obj, "_v", v)
        return obj

    @classmethod
    def from_null(cls, u: Real, v: Real) -> "SplitComplex":
        return cls._make((u + v) / 2, (u - v) / 2, u, v)

    @property
    def u(self) -> Real:
        return self._u

    @property
    def v(self) -> Real:
        return self._v

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = as_split(other)
        if other is NotImplemented:
            return NotImplemented
        return SplitComplex._make(self.x + other.x, self.y + other.y,
                                  self._u + other._u, self._v + other._v)

    __radd__ = __add__

    def __neg__(self):
        return SplitComplex._make(-self.x, -self.y, -self._u, -self._v)

    def __sub__(self, other):
        other = as_split(other)
        if other is NotImplemented:
            return NotImplemented
        return SplitComplex._make(self.x - other.x, self.y - other.y,
                                  self._u - other._u, self._v - other._v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BiComplex):
            return NotImplemented
        other = as_split(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other) or isinstance(other, np.ndarray):
            return SplitComplex._make(self.x / other, self.y / other,
                                      self._u / other, self._v / other)
        return mul(self, inverse(as_split(other)))

    def __rtruediv__(self, other):
        return mul(as_split(other), inverse(self))

    def __abs__(self):
        return modulus(self)

    def __iter__(self):
        # lets ``x, y = Z`` unpack
        yield self.x
        yield self.y

    def conj(self) -> "SplitComplex":
        return conj(self)

    def norm(self) -> Real:
        return norm(self)

    def mul_j(self) -> "SplitComplex":
        """Left multiplication by j: swaps x and y, negates v."""
        return SplitComplex._make(self.y, self.x, self._u, -self._v)


ONE = SplitComplex(1.0, 0.0)
J = SplitComplex(0.0, 1.0)


def as_split(value) -> SplitComplex:
    """Coerce a real scalar/array to ``value + 0j``; pass SplitComplex through."""
    if isinstance(value, SplitComplex):
        return value
    if isinstance(value, (int, float, np.floating, np.integer, np.ndarray)):
        zero = np.zeros_like(value, dtype=float) if isinstance(value, np.ndarray) else 0.0
        return SplitComplex._make(value, zero, value, value)
    return NotImplemented


def mul(a: SplitComplex, b: SplitComplex) -> SplitComplex:
    """(a.x b.x + a.y b.y) + j (a.x b.y + a.y b.x).

    Evaluated componentwise in null coordinates (uu', vv'), which avoids the
    cancellation the Cartesian formula suffers near the light cone.
    """
    u = a._u * b._u
    v = a._v * b._v
    return SplitComplex._make((u + v) / 2, (u - v) / 2, u, v)


def conj(z: SplitComplex) -> SplitComplex:
    """Z+ = x - jy; in null coordinates this swaps u and v."""
    return SplitComplex._make(z.x, -z.y, z._v, z._u)


def norm(z: SplitComplex) -> Real:
    """Quadratic form N(Z) = x^2 - y^2, computed as u*v."""
    return z._u * z._v


def modulus(z: SplitComplex) -> Real:
    """Euclidean length sqrt(x^2 + y^2)."""
    return np.hypot(z.x, z.y)


def is_invertible(z: SplitComplex) -> Union[bool, np.ndarray]:
    scale = np.maximum(1.0, z.x * z.x + z.y * z.y)
    return np.abs(norm(z)) >= INVERTIBILITY_RTOL * scale


def inverse(z: SplitComplex) -> SplitComplex:
    """Z^-1 = Z+ / N(Z).

    Raises NonInvertibleError if any element lies (numerically) on the
    light cone.
    """
    if not np.all(is_invertible(z)):
        raise NonInvertibleError(f"{z!r} lies on the light cone N(Z) = 0")
    n = norm(z)
    return SplitComplex._make(z.x / n, -z.y / n, 1.0 / z._u, 1.0 / z._v)


def to_null(z: SplitComplex) -> NullCoords:
    return NullCoords(z._u, z._v)


def from_null(c: NullCoords) -> SplitComplex:
    return SplitComplex.from_null(c.u, c.v)


# -- R^{1,1} (x) C in the idempotent basis ---------------------------------


@dataclass(frozen=True, eq=False)
class BiComplex:
    """Element ``plus * e+ + minus * e-`` with complex coefficients.

    ``e+ = (1 + j)/2`` and ``e- = (1 - j)/2``.  Products are componentwise.
    """

    plus: Union[complex, np.ndarray]
    minus: Union[complex, np.ndarray]

    def __add__(self, other):
        other = as_bicomplex(other)
        return BiComplex(self.plus + other.plus, self.minus + other.minus)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_bicomplex(other)
        return BiComplex(self.plus - other.plus, self.minus - other.minus)

    def __rsub__(self, other):
        return as_bicomplex(other) - self

    def __neg__(self):
        return BiComplex(-self.plus, -self.minus)

    def __mul__(self, other):
        if isinstance(other, (BiComplex, SplitComplex)):
            return bicomplex_mul(self, as_bicomplex(other))
        # complex or real scalar
        return BiComplex(self.plus * other, self.minus * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return BiComplex(self.plus / scalar, self.minus / scalar)

    def __abs__(self):
        return np.sqrt((np.abs(self.plus) ** 2 + np.abs(self.minus) ** 2) / 2)

    def mul_j(self) -> "BiComplex":
        return BiComplex(self.plus, -self.minus)

    @property
    def real(self) -> SplitComplex:
        """Real part as a split-complex number."""
        return SplitComplex.from_null(np.real(self.plus), np.real(self.minus))

    @property
    def imag(self) -> SplitComplex:
        """Coefficient of i as a split-complex number."""
        return SplitComplex.from_null(np.imag(self.plus), np.imag(self.minus))

    def to_standard(self):
        """Coefficients (a, b) with value a + j b, a and b complex."""
        return (self.plus + self.minus) / 2, (self.plus - self.minus) / 2

    @classmethod
    def from_standard(cls, a, b) -> "BiComplex":
        return cls(a + b, a - b)


E_PLUS = BiComplex(1.0 + 0j, 0j)
E_MINUS = BiComplex(0j, 1.0 + 0j)


def bicomplex_mul(a: BiComplex, b: BiComplex) -> BiComplex:
    return BiComplex(a.plus * b.plus, a.minus * b.minus)


def bicomplex_embed(z: SplitComplex) -> BiComplex:
    """Real split-complex Z as (x + y, x - y) in the idempotent basis."""
    return BiComplex(z._u + 0j, z._v + 0j)


def as_bicomplex(value) -> BiComplex:
    if isinstance(value, BiComplex):
        return value
    if isinstance(value, SplitComplex):
        return bicomplex_embed(value)
    # scalar c -> c * 1 = c e+ + c e-
    return BiComplex(value + 0j, value + 0j)
