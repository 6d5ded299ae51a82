"""The rationally extended radial oscillator: potential, spectrum, bound states."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import DomainError
from .jets import Jet, ScalarField
from .specfun import LaguerreIndex, x1_laguerre

__all__ = [
    "ModelParams",
    "Grid",
    "potential_v0",
    "potential_field",
    "energy",
    "eigenfunction",
    "schrodinger_residual",
]


@dataclass(frozen=True)
class ModelParams:
    """Oscillator frequency, angular momentum, Dirac mass and state index.

    ``n`` may be any real number; non-integer values give the auxiliary
    (non-normalizable) solutions used as Darboux seeds.
    """

    omega: float = 1.0
    l: int = 1
    m: float = 0.0
    n: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if self.l < 0 or int(self.l) != self.l:
            raise DomainError(f"l must be a nonnegative integer, got {self.l}")
        if self.m < 0:
            raise DomainError(f"mass must be nonnegative, got {self.m}")

    def with_n(self, n: float) -> "ModelParams":
        return replace(self, n=float(n))


@dataclass(frozen=True)
class Grid:
    xmin: float
    xmax: float
    count: int

    def __post_init__(self):
        if not 0 < self.xmin < self.xmax:
            raise DomainError(f"grid needs 0 < xmin < xmax, got {self.xmin}, {self.xmax}")
        if self.count < 2:
            raise DomainError(f"grid needs at least 2 points, got {self.count}")

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.count)

    @classmethod
    def parse(cls, spec: str) -> "Grid":
        """Parse ``"a:b:count"``."""
        parts = spec.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid must look like a:b:count, got {spec!r}")
        try:
            a, b = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError as exc:
            raise DomainError(f"bad grid {spec!r}: {exc}") from None
        return cls(a, b, count)


def potential_v0(p: ModelParams, x) -> np.ndarray:
    """Rationally extended radial oscillator potential."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("potential_v0 is defined for x > 0 only")
    w, l = p.omega, p.l
    d = w * x * x + 2 * l + 1
    return 0.25 * w * w * x * x + l * (l + 1) / (x * x) + 4 * w / d - 8 * w * (2 * l + 1) / d**2


def potential_field(p: ModelParams) -> ScalarField:
    """The same potential as a jet-producing field."""
    w, l = p.omega, p.l

    def fn(x, k):
        if np.any(x <= 0):
            raise DomainError("potential_v0 is defined for x > 0 only")
        X = Jet.variable(x, k)
        d = w * X * X + (2 * l + 1)
        inv = d.reciprocal()
        return 0.25 * w * w * X * X + l * (l + 1) * (X * X).reciprocal() + 4 * w * inv \
            - 8 * w * (2 * l + 1) * inv * inv

    return ScalarField(fn, name="V0")


def energy(p: ModelParams) -> float:
    return p.omega * (2 * p.n + p.l + 1.5)


def eigenfunction(p: ModelParams) -> ScalarField:
    """Unnormalized solution at energy ``energy(p)``.

    ``x^(l+1) / (w x^2 + 2l + 1) * exp(-w x^2 / 4) * X1L_{n+1}^{l+1/2}(w x^2 / 2)``
    """
    w, l = p.omega, p.l
    idx = LaguerreIndex(p.n + 1, l + 0.5)

    def fn(x, k):
        X = Jet.variable(x, k)
        x2 = X * X
        u = 0.5 * w * x2
        pref = X ** (l + 1) / (w * x2 + (2 * l + 1)) * (-0.5 * u).exp()
        return pref * x1_laguerre(idx, u.value, k).compose(u)

    return ScalarField(fn, name=f"psi[n={p.n:g}]")


def schrodinger_residual(
    f: ScalarField,
    epsilon: float,
    V: Callable[[np.ndarray], np.ndarray],
    g: Grid,
) -> float:
    """max|f'' + (eps - V) f| over the grid, relative to max(|f''|, |eps f|)."""
    x = g.points
    j = f.jet(x, 2)
    res = j[2] + (epsilon - V(x)) * j[0]
    scale = max(np.max(np.abs(j[2])), np.max(np.abs(epsilon * j[0])), 1e-300)
    return float(np.max(np.abs(res)) / scale)
