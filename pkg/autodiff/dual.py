# autodiff/dual.py
"""
Forward-mode number types.

`Dual` carries a value and a derivative that is either a float (one
directional seed) or a numpy vector (d seeds at once, e.g. a full Jacobian).
`HyperDual` carries two first-order parts and their cross term, which gives
exact second directional derivatives.

Both types interoperate with numpy object arrays: `float_matrix @ dual_vector`
and `dual_vector * float` go through numpy's object loops, which call back into
the operators below. Binary operators return NotImplemented for ndarrays so
numpy broadcasts instead of nesting an array inside a number.
"""
from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

_CONST = (int, float, np.integer, np.floating)


def _is_const(o) -> bool:
    return isinstance(o, _CONST) and not isinstance(o, bool)


# ---------- Dual ----------
class Dual:
    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0.0):
        self.value = float(value)
        self.deriv = deriv

    def __repr__(self) -> str:
        return f"Dual({self.value!r}, {self.deriv!r})"

    def _chain(self, f: float, df: float) -> "Dual":
        return Dual(f, df * self.deriv)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value + other.value, self.deriv + other.deriv)
        if _is_const(other):
            return Dual(self.value + other, self.deriv)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.value - other.value, self.deriv - other.deriv)
        if _is_const(other):
            return Dual(self.value - other, self.deriv)
        return NotImplemented

    def __rsub__(self, other):
        if _is_const(other):
            return Dual(other - self.value, -self.deriv)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(
                self.value * other.value,
                self.value * other.deriv + self.deriv * other.value,
            )
        if _is_const(other):
            return Dual(self.value * other, self.deriv * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = 1.0 / other.value
            return Dual(
                self.value * inv,
                (self.deriv * other.value - self.value * other.deriv) * inv * inv,
            )
        if _is_const(other):
            return Dual(self.value / other, self.deriv / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_const(other):
            inv = 1.0 / self.value
            return Dual(other * inv, -other * self.deriv * inv * inv)
        return NotImplemented

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __pos__(self):
        return self

    def __pow__(self, p):
        if not _is_const(p):
            return NotImplemented
        if p == 0:
            return Dual(1.0, 0.0 * self.deriv)
        return self._chain(self.value**p, p * self.value ** (p - 1))

    def __abs__(self):
        return self if self.value >= 0.0 else -self

    # comparisons act on the value only
    def __lt__(self, other):
        return self.value < primal(other)

    def __le__(self, other):
        return self.value <= primal(other)

    def __gt__(self, other):
        return self.value > primal(other)

    def __ge__(self, other):
        return self.value >= primal(other)

    # transcendentals
    def sqrt(self):
        r = math.sqrt(self.value)
        return self._chain(r, 0.5 / r)

    def sin(self):
        return self._chain(math.sin(self.value), math.cos(self.value))

    def cos(self):
        return self._chain(math.cos(self.value), -math.sin(self.value))

    def atan(self):
        return self._chain(math.atan(self.value), 1.0 / (1.0 + self.value * self.value))


# ---------- HyperDual ----------
class HyperDual:
    __slots__ = ("value", "d1", "d2", "d12")

    def __init__(self, value, d1=0.0, d2=0.0, d12=0.0):
        self.value = float(value)
        self.d1 = float(d1)
        self.d2 = float(d2)
        self.d12 = float(d12)

    def __repr__(self) -> str:
        return f"HyperDual({self.value!r}, {self.d1!r}, {self.d2!r}, {self.d12!r})"

    def _chain(self, f: float, df: float, d2f: float) -> "HyperDual":
        return HyperDual(
            f,
            df * self.d1,
            df * self.d2,
            df * self.d12 + d2f * self.d1 * self.d2,
        )

    def __add__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(
                self.value + other.value,
                self.d1 + other.d1,
                self.d2 + other.d2,
                self.d12 + other.d12,
            )
        if _is_const(other):
            return HyperDual(self.value + other, self.d1, self.d2, self.d12)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return HyperDual(-self.value, -self.d1, -self.d2, -self.d12)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, HyperDual) or _is_const(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if _is_const(other):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(
                self.value * other.value,
                self.value * other.d1 + self.d1 * other.value,
                self.value * other.d2 + self.d2 * other.value,
                self.value * other.d12
                + self.d1 * other.d2
                + self.d2 * other.d1
                + self.d12 * other.value,
            )
        if _is_const(other):
            return HyperDual(
                self.value * other, self.d1 * other, self.d2 * other, self.d12 * other
            )
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "HyperDual":
        inv = 1.0 / self.value
        return self._chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, HyperDual):
            return self * other.reciprocal()
        if _is_const(other):
            return HyperDual(
                self.value / other, self.d1 / other, self.d2 / other, self.d12 / other
            )
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_const(other):
            return self.reciprocal() * other
        return NotImplemented

    def __pow__(self, p):
        if not _is_const(p):
            return NotImplemented
        if p == 0:
            return HyperDual(1.0)
        v = self.value
        return self._chain(v**p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2) if p != 1 else 0.0)

    def __abs__(self):
        return self if self.value >= 0.0 else -self

    def __lt__(self, other):
        return self.value < primal(other)

    def __le__(self, other):
        return self.value <= primal(other)

    def __gt__(self, other):
        return self.value > primal(other)

    def __ge__(self, other):
        return self.value >= primal(other)

    def sqrt(self):
        r = math.sqrt(self.value)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.value))

    def sin(self):
        s, c = math.sin(self.value), math.cos(self.value)
        return self._chain(s, c, -s)

    def cos(self):
        s, c = math.sin(self.value), math.cos(self.value)
        return self._chain(c, -s, -c)

    def atan(self):
        v = self.value
        q = 1.0 / (1.0 + v * v)
        return self._chain(math.atan(v), q, -2.0 * v * q * q)


Number = Union[float, Dual, HyperDual]
_AD = (Dual, HyperDual)


# ---------- primitives that dispatch on the number type ----------
def primal(x) -> float:
    if isinstance(x, _AD):
        return x.value
    return float(x)


def sqrt(x):
    return x.sqrt() if isinstance(x, _AD) else math.sqrt(x)


def sin(x):
    return x.sin() if isinstance(x, _AD) else math.sin(x)


def cos(x):
    return x.cos() if isinstance(x, _AD) else math.cos(x)


def _with_value(x, value: float):
    if isinstance(x, Dual):
        return Dual(value, x.deriv)
    return HyperDual(value, x.d1, x.d2, x.d12)


def atan2(y, x):
    """atan2 with the quadrant from the values and the derivative from a
    locally valid atan of the smaller ratio."""
    if not isinstance(y, _AD) and not isinstance(x, _AD):
        return math.atan2(y, x)
    yv, xv = primal(y), primal(x)
    if abs(xv) >= abs(yv):
        t = (y / x).atan()
    else:
        t = (-(x / y)).atan()
    return _with_value(t, math.atan2(yv, xv))


def polyval(coeffs: Sequence[float], x):
    """Horner evaluation, coefficients in ascending order."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


# ---------- seeding / extraction ----------
def seed_jacobian(x: np.ndarray) -> np.ndarray:
    """One Dual per entry, seeded with the unit vectors of R^n."""
    x = np.asarray(x, dtype=float)
    eye = np.eye(x.size)
    return np.array([Dual(x[i], eye[i]) for i in range(x.size)], dtype=object)


def seed_direction(x: np.ndarray, direction: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    d = np.asarray(direction, dtype=float)
    return np.array([Dual(x[i], float(d[i])) for i in range(x.size)], dtype=object)


def seed_hyper(x: np.ndarray, d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    d1 = np.asarray(d1, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    return np.array(
        [HyperDual(x[i], d1[i], d2[i], 0.0) for i in range(x.size)], dtype=object
    )


def values(v) -> np.ndarray:
    return np.array([primal(e) for e in np.atleast_1d(v)], dtype=float)


def _part(e, name: str, width: int):
    if isinstance(e, _AD):
        return getattr(e, name)
    return np.zeros(width) if width else 0.0


def jacobian_of(v, n: int) -> np.ndarray:
    """Rows of Dual derivatives; constant entries contribute zero rows."""
    return np.array([_part(e, "deriv", n) for e in np.atleast_1d(v)], dtype=float)


def directional_of(v) -> np.ndarray:
    return np.array([float(_part(e, "deriv", 0)) for e in np.atleast_1d(v)])


def hyper_parts(v):
    """(values, d1, d2, d12) of a HyperDual vector."""
    arr = np.atleast_1d(v)
    return (
        values(arr),
        np.array([float(_part(e, "d1", 0)) for e in arr]),
        np.array([float(_part(e, "d2", 0)) for e in arr]),
        np.array([float(_part(e, "d12", 0)) for e in arr]),
    )
