"""Parametrizing functions q solving V = q^2 + q' from a zero-energy seed."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .jets import Jet, ScalarField
from .numerics import integrate_segments
from .oscillator import Grid, ModelParams, eigenfunction

__all__ = [
    "RiccatiFamily",
    "q_particular",
    "q_general",
    "riccati_residual",
    "singularity_scan",
    "n_for_zero_energy",
    "zero_energy_seed",
]

POLE_RTOL = 1e-14
QUAD_TOL = 1e-12


def n_for_zero_energy(l: int) -> float:
    """State index at which the oscillator energy vanishes."""
    return -l / 2 - 0.75


def zero_energy_seed(p: ModelParams) -> ScalarField:
    return eigenfunction(p.with_n(n_for_zero_energy(p.l)))


def _check_nonzero(j: Jet, what: str) -> None:
    v = j[0]
    scale = np.abs(v) + (np.abs(j[1]) if j.order >= 1 else 0.0)
    bad = np.abs(v) < POLE_RTOL * scale
    bad |= ~np.isfinite(v)
    if np.any(bad):
        where = np.atleast_1d(j.x)[np.atleast_1d(bad)][0] if np.ndim(j.x) else float(j.x)
        raise PoleError(f"{what} vanishes at x={float(where):.17g}", where=float(where))


def q_particular(qhat: ScalarField) -> ScalarField:
    """Logarithmic derivative qhat'/qhat."""

    def fn(x, k):
        j = qhat.jet(x, k + 1)
        _check_nonzero(j, f"seed {qhat.name}")
        return j.shift(1) / j.truncate(k)

    return ScalarField(fn, name=f"q[{qhat.name}]")


@dataclass
class RiccatiFamily:
    """One-parameter family ``q = qhat'/qhat + 1/(qhat^2 (c + I))``.

    ``I(x)`` is the integral of ``qhat^-2`` from ``xref`` to ``x``; moving
    ``xref`` only reparametrizes ``c``.
    """

    qhat: ScalarField
    c: float = 0.0
    xref: float = 1.0
    mode: str = "general"

    def __post_init__(self):
        if self.mode not in ("particular", "general"):
            raise DomainError(f"unknown Riccati mode {self.mode!r}")
        if not self.xref > 0:
            raise DomainError("xref must be positive")


class _AccumulatedIntegral:
    """Memoized ``x -> integral of qhat^-2 from xref``; lock-guarded."""

    def __init__(self, qhat: ScalarField, xref: float):
        self._qhat = qhat
        self._xref = xref
        self._cache: dict[float, float] = {xref: 0.0}
        self._lock = threading.Lock()

    def _integrand(self, t):
        return 1.0 / self._qhat(t) ** 2

    def _fill(self, pts: np.ndarray) -> dict[float, float]:
        out: dict[float, float] = {}
        right = pts[pts > self._xref]
        left = pts[pts < self._xref]
        try:
            if right.size:
                edges = np.concatenate([[self._xref], right])
                vals, _, _ = integrate_segments(self._integrand, edges, QUAD_TOL)
                out.update(zip(right.tolist(), np.cumsum(vals).tolist()))
            if left.size:
                edges = np.concatenate([left, [self._xref]])
                vals, _, _ = integrate_segments(self._integrand, edges, QUAD_TOL)
                out.update(zip(left.tolist(), (-np.cumsum(vals[::-1])[::-1]).tolist()))
        except ConvergenceError as exc:
            raise ConvergenceError(f"accumulated integral diverged: {exc}") from None
        return out

    def __call__(self, x: np.ndarray) -> np.ndarray:
        flat = np.atleast_1d(x).ravel()
        with self._lock:
            missing = np.unique([v for v in flat.tolist() if v not in self._cache])
        if missing.size:
            new = self._fill(missing)
            with self._lock:
                self._cache.update(new)
        with self._lock:
            vals = np.array([self._cache[v] for v in flat.tolist()])
        return vals.reshape(np.shape(x))


def q_general(fam: RiccatiFamily) -> ScalarField:
    if fam.mode == "particular":
        return q_particular(fam.qhat)
    qhat, c = fam.qhat, fam.c
    accumulated = _AccumulatedIntegral(qhat, fam.xref)

    def fn(x, k):
        j = qhat.jet(x, k + 1)
        _check_nonzero(j, f"seed {qhat.name}")
        base = j.truncate(k)
        # G = c + I with G' = qhat^-2 known in closed form
        ginv = (base * base).reciprocal()
        gcoeffs = np.concatenate([(c + accumulated(x))[None], ginv.coeffs[:k]], axis=0)
        G = Jet(x, gcoeffs)
        xs = np.atleast_1d(x).ravel()
        gs = np.atleast_1d(G[0]).ravel()
        order = np.argsort(xs)
        sign = np.sign(gs[order])
        flips = np.nonzero(sign[:-1] * sign[1:] <= 0)[0]
        if flips.size:
            i = flips[0]
            bracket = (float(xs[order][i]), float(xs[order][i + 1]))
            raise PoleError(f"family denominator changes sign in {bracket}", where=bracket)
        return j.shift(1) / base + (base * base * G).reciprocal()

    return ScalarField(fn, name=f"q[{qhat.name}; c={c:g}]")


def riccati_residual(q: ScalarField, V: Callable[[np.ndarray], np.ndarray], g: Grid) -> float:
    """max over the grid of |q^2 + q' - V| / max(|V|, 1)."""
    x = g.points
    j = q.jet(x, 1)
    v = V(x)
    return float(np.max(np.abs(j[0] ** 2 + j[1] - v) / np.maximum(np.abs(v), 1.0)))


def singularity_scan(f: ScalarField, g: Grid) -> list[tuple[float, float]]:
    """Grid brackets where ``f`` changes sign or nearly vanishes.

    Runs of consecutive flagged pairs (a zero sitting on a grid point flags
    both of its neighbours) are merged into one bracket.
    """
    x = g.points
    v = f(x)
    small = (np.abs(v) < 1e-12) | ~np.isfinite(v)
    hits = (np.sign(v[:-1]) * np.sign(v[1:]) < 0) | small[:-1] | small[1:]
    out: list[tuple[float, float]] = []
    prev = -2
    for i in np.nonzero(hits)[0]:
        if i == prev + 1:
            out[-1] = (out[-1][0], float(x[i + 1]))
        else:
            out.append((float(x[i]), float(x[i + 1])))
        prev = i
    return out
