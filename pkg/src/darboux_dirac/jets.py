"""Truncated derivative jets and lazily composed scalar fields.

A :class:`Jet` carries ``f(x), f'(x), ..., f^(K)(x)`` at one point or at an
array of points (the trailing axes of ``coeffs`` broadcast against ``x``).
Arithmetic is done on normalized Taylor coefficients ``f^(k)/k!`` where the
Leibniz and Faa di Bruno rules reduce to Cauchy products and the classic
power-series recurrences.
"""
from __future__ import annotations

from math import factorial
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = ["Jet", "ScalarField", "as_field"]


def _fact(order: int, ndim: int) -> np.ndarray:
    f = np.array([float(factorial(k)) for k in range(order + 1)])
    return f.reshape((order + 1,) + (1,) * ndim)


def _cauchy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for k in range(out.shape[0]):
        for j in range(k + 1):
            out[k] = out[k] + a[j] * b[k - j]
    return out


class Jet:
    """Value and derivatives of a scalar function up to a fixed order."""

    __slots__ = ("x", "coeffs")

    def __init__(self, x, coeffs):
        self.x = np.asarray(x, dtype=float)
        self.coeffs = np.asarray(coeffs, dtype=float)
        if self.coeffs.ndim == 0:
            raise ValueError("coeffs must have a leading derivative axis")

    # construction --------------------------------------------------------

    @classmethod
    def constant(cls, x, c: float, order: int) -> "Jet":
        x = np.asarray(x, dtype=float)
        coeffs = np.zeros((order + 1,) + x.shape)
        coeffs[0] = c
        return cls(x, coeffs)

    @classmethod
    def variable(cls, x, order: int) -> "Jet":
        """The identity function ``t -> t`` expanded at ``x``."""
        x = np.asarray(x, dtype=float)
        coeffs = np.zeros((order + 1,) + x.shape)
        coeffs[0] = x
        if order >= 1:
            coeffs[1] = 1.0
        return cls(x, coeffs)

    @classmethod
    def _from_taylor(cls, x, taylor: np.ndarray) -> "Jet":
        order = taylor.shape[0] - 1
        return cls(x, taylor * _fact(order, taylor.ndim - 1))

    def _taylor(self) -> np.ndarray:
        return self.coeffs / _fact(self.order, self.coeffs.ndim - 1)

    # basic accessors -----------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> np.ndarray:
        return self.coeffs[0]

    def __getitem__(self, k: int) -> np.ndarray:
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __repr__(self) -> str:
        return f"Jet(x={self.x!r}, coeffs={self.coeffs!r})"

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.x, self.coeffs[: order + 1])

    def shift(self, k: int = 1) -> "Jet":
        """Jet of the k-th derivative; the order drops by k."""
        if k > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative {k}")
        return Jet(self.x, self.coeffs[k:])

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(self.x, other, self.order)

    def _pair(self, other):
        other = self._coerce(other)
        k = min(self.order, other.order)
        return self.coeffs[: k + 1], other.coeffs[: k + 1]

    def __add__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(self.x, a + b)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(self.x, a - b)

    def __rsub__(self, other) -> "Jet":
        a, b = self._pair(other)
        return Jet(self.x, b - a)

    def __neg__(self) -> "Jet":
        return Jet(self.x, -self.coeffs)

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(self.x, self.coeffs * np.asarray(other, dtype=float))
        a, b = self._pair(other)
        k = a.shape[0] - 1
        fa = _fact(k, a.ndim - 1)
        fb = _fact(k, b.ndim - 1)
        return Jet._from_taylor(self.x, _cauchy(a / fa, b / fb))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(self.x, self.coeffs / np.asarray(other, dtype=float))
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, p) -> "Jet":
        if isinstance(p, Jet):
            return (self.log() * p).exp()
        p = float(p)
        if p == int(p) and 0 <= p <= 4:
            out = Jet.constant(self.x, 1.0, self.order)
            for _ in range(int(p)):
                out = out * self
            return out
        f = self._taylor()
        g = np.zeros_like(f)
        g[0] = f[0] ** p
        for k in range(1, f.shape[0]):
            acc = 0.0
            for j in range(1, k + 1):
                acc = acc + ((p + 1.0) * j - k) * f[j] * g[k - j]
            g[k] = acc / (k * f[0])
        return Jet._from_taylor(self.x, g)

    def reciprocal(self) -> "Jet":
        f = self._taylor()
        g = np.zeros_like(f)
        g[0] = 1.0 / f[0]
        for k in range(1, f.shape[0]):
            acc = 0.0
            for j in range(1, k + 1):
                acc = acc + f[j] * g[k - j]
            g[k] = -acc * g[0]
        return Jet._from_taylor(self.x, g)

    def exp(self) -> "Jet":
        f = self._taylor()
        g = np.zeros_like(f)
        g[0] = np.exp(f[0])
        for k in range(1, f.shape[0]):
            acc = 0.0
            for j in range(1, k + 1):
                acc = acc + j * f[j] * g[k - j]
            g[k] = acc / k
        return Jet._from_taylor(self.x, g)

    def log(self) -> "Jet":
        """Natural log of a positive jet."""
        f = self._taylor()
        if np.any(f[0] <= 0):
            raise DomainError("log of a nonpositive jet value")
        g = np.zeros_like(f)
        g[0] = np.log(f[0])
        for k in range(1, f.shape[0]):
            acc = 0.0
            for j in range(1, k):
                acc = acc + j * g[j] * f[k - j]
            g[k] = (f[k] - acc / k) / f[0]
        return Jet._from_taylor(self.x, g)

    def compose(self, inner: "Jet") -> "Jet":
        """Chain rule: ``self`` is a jet of f at ``inner.value``; returns f∘inner."""
        k = min(self.order, inner.order)
        f = self.truncate(k)._taylor()
        d = inner.truncate(k)._taylor().copy()
        d[0] = 0.0
        out = np.zeros(np.broadcast_shapes(f.shape, d.shape))
        out[0] = f[k]
        for j in range(k - 1, -1, -1):
            out = _cauchy(out, d)
            out[0] = out[0] + f[j]
        return Jet._from_taylor(inner.x, out)


def _jet_sin(x, order):
    x = np.asarray(x, dtype=float)
    coeffs = np.array([np.sin(x + k * np.pi / 2) for k in range(order + 1)])
    return Jet(x, coeffs)


class ScalarField:
    """A real function of x that produces jets on demand.

    ``fn(x, order)`` must accept an ndarray ``x`` and return a :class:`Jet`
    of at least the requested order. Arithmetic between fields is lazy and
    builds a new field.
    """

    def __init__(self, fn: Callable[[np.ndarray, int], Jet], name: str = "field"):
        self._fn = fn
        self.name = name

    def jet(self, x, order: int = 0) -> Jet:
        x = np.asarray(x, dtype=float)
        j = self._fn(x, order)
        return j if j.order == order else j.truncate(order)

    def __call__(self, x) -> np.ndarray:
        return self.jet(x, 0).value

    def __repr__(self) -> str:
        return f"ScalarField({self.name})"

    # constructors --------------------------------------------------------

    @classmethod
    def constant(cls, c: float) -> "ScalarField":
        return cls(lambda x, k: Jet.constant(x, c, k), name=repr(c))

    @classmethod
    def identity(cls) -> "ScalarField":
        return cls(Jet.variable, name="x")

    @classmethod
    def sine(cls) -> "ScalarField":
        return cls(_jet_sin, name="sin")

    # combinators ---------------------------------------------------------

    def _binary(self, other, op, sym: str, swap: bool = False) -> "ScalarField":
        other = as_field(other)
        a, b = (other, self) if swap else (self, other)

        def fn(x, k):
            return op(a.jet(x, k), b.jet(x, k))

        return ScalarField(fn, name=f"({a.name}{sym}{b.name})")

    def __add__(self, other):
        return self._binary(other, lambda p, q: p + q, "+")

    def __radd__(self, other):
        return self._binary(other, lambda p, q: p + q, "+", swap=True)

    def __sub__(self, other):
        return self._binary(other, lambda p, q: p - q, "-")

    def __rsub__(self, other):
        return self._binary(other, lambda p, q: p - q, "-", swap=True)

    def __mul__(self, other):
        return self._binary(other, lambda p, q: p * q, "*")

    def __rmul__(self, other):
        return self._binary(other, lambda p, q: p * q, "*", swap=True)

    def __truediv__(self, other):
        return self._binary(other, lambda p, q: p / q, "/")

    def __rtruediv__(self, other):
        return self._binary(other, lambda p, q: p / q, "/", swap=True)

    def __neg__(self):
        return ScalarField(lambda x, k: -self.jet(x, k), name=f"-{self.name}")

    def __pow__(self, p: float):
        return ScalarField(lambda x, k: self.jet(x, k) ** p, name=f"{self.name}**{p}")

    def apply(self, fn: Callable[[Jet], Jet], name: str = "g") -> "ScalarField":
        """Pointwise jet map, e.g. ``field.apply(Jet.exp)``."""
        return ScalarField(lambda x, k: fn(self.jet(x, k)), name=f"{name}({self.name})")

    def derivative(self, times: int = 1) -> "ScalarField":
        return ScalarField(
            lambda x, k: self.jet(x, k + times).shift(times),
            name=f"D{times}({self.name})",
        )

    def log_derivative(self) -> "ScalarField":
        """f'/f as a jet quotient; no logarithm is taken so sign is irrelevant."""

        def fn(x, k):
            j = self.jet(x, k + 1)
            return j.shift(1) / j.truncate(k)

        return ScalarField(fn, name=f"dlog({self.name})")

    def scaled(self, c: float) -> "ScalarField":
        return ScalarField(lambda x, k: self.jet(x, k) * c, name=f"{c:g}*{self.name}")


def as_field(obj) -> ScalarField:
    if isinstance(obj, ScalarField):
        return obj
    if np.ndim(obj) == 0:
        return ScalarField.constant(float(obj))
    raise TypeError(f"cannot interpret {type(obj).__name__} as a ScalarField")
