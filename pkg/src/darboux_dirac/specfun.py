"""Kummer M, real-index Laguerre functions and X1 exceptional Laguerre functions.

Everything returns a :class:`~darboux_dirac.jets.Jet` so that derivatives
come from the contiguous relation ``M'(a, b, x) = (a/b) M(a+1, b+1, x)``
instead of numerical differentiation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ConvergenceError, DomainError
from .jets import Jet

__all__ = [
    "LaguerreIndex",
    "kummer_m",
    "kummer_series",
    "laguerre",
    "x1_laguerre",
    "MAX_ORDER",
    "SERIES_RTOL",
    "SERIES_MAX_TERMS",
]

MAX_ORDER = 8
SERIES_RTOL = 1e-15
SERIES_MAX_TERMS = 1000
_CHUNK = 48


@dataclass(frozen=True)
class LaguerreIndex:
    """Lower index ``nu`` (any real) and upper index ``alpha`` (> -1)."""

    nu: float
    alpha: float

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError(f"upper Laguerre index must exceed -1, got {self.alpha}")

    def shifted(self, dnu: float) -> "LaguerreIndex":
        return LaguerreIndex(self.nu + dnu, self.alpha)


def _is_nonpositive_int(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def kummer_series(a: float, b: float, x) -> np.ndarray:
    """Sum of the 1F1 series, vectorized over ``x``.

    Each element stops at the first term whose magnitude is at most
    ``SERIES_RTOL * |partial sum|``. Terms are generated in chunks with a
    cumulative product so the loop runs over chunks, not terms.
    """
    if _is_nonpositive_int(b):
        raise DomainError(f"Kummer M undefined for b={b}")
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.empty(flat.shape)
    pending = np.arange(flat.size)
    term = np.ones(flat.size)
    total = np.ones(flat.size)
    start = 0
    while pending.size:
        if start >= SERIES_MAX_TERMS:
            raise ConvergenceError(
                f"Kummer series M({a}, {b}, x) did not converge in {SERIES_MAX_TERMS} "
                f"terms (x max {np.max(flat[pending]):g})"
            )
        k = np.arange(start, min(start + _CHUNK, SERIES_MAX_TERMS), dtype=float)
        ratio = ((a + k) / ((b + k) * (k + 1)))[:, None] * flat[pending][None, :]
        with np.errstate(over="ignore", invalid="ignore"):
            terms = term[None, :] * np.cumprod(ratio, axis=0)
            partial = total[None, :] + np.cumsum(terms, axis=0)
        if not np.all(np.isfinite(partial)):
            raise ConvergenceError(f"Kummer series M({a}, {b}, x) overflowed")
        conv = np.abs(terms) <= SERIES_RTOL * np.abs(partial)
        hit = conv.any(axis=0)
        first = conv.argmax(axis=0)
        cols = np.nonzero(hit)[0]
        out[pending[cols]] = partial[first[cols], cols]
        term, total, pending = terms[-1, ~hit], partial[-1, ~hit], pending[~hit]
        start += k.size
    return out.reshape(x.shape)


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_ORDER:
        raise DomainError(f"derivative order must lie in [0, {MAX_ORDER}], got {order}")


def kummer_m(a: float, b: float, x, order: int = 0) -> Jet:
    """Jet of M(a, b, x) in x up to ``order``."""
    _check_order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("kummer_m requires x >= 0")
    coeffs = np.zeros((order + 1,) + x.shape)
    ratio = 1.0
    for k in range(order + 1):
        if k:
            ratio *= (a + k - 1) / (b + k - 1)
        if ratio != 0.0:
            coeffs[k] = ratio * kummer_series(a + k, b + k, x)
    return Jet(x, coeffs)


def _laguerre_prefactor(idx: LaguerreIndex) -> float:
    top = idx.nu + idx.alpha + 1
    if _is_nonpositive_int(top):
        raise DomainError(f"Laguerre function pole: nu + alpha + 1 = {top}")
    return float(special.gamma(top) * special.rgamma(idx.nu + 1) / special.gamma(idx.alpha + 1))


def _laguerre_poly(n: int, alpha: float, x: np.ndarray) -> np.ndarray:
    # forward three-term recurrence; stable, unlike summing the monomials
    if n < 0:
        return np.zeros_like(x)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre(idx: LaguerreIndex, x, order: int = 0) -> Jet:
    """Associated Laguerre function ``L_nu^alpha(x)``.

    Continued to real ``nu`` through Kummer's function with the normalization
    ``Gamma(nu+alpha+1) / (Gamma(nu+1) Gamma(alpha+1))``; the reciprocal gamma
    vanishes for negative integer ``nu``, so those functions are identically 0.
    Integer ``nu >= 0`` uses the polynomial recurrence and
    ``d/dx L_n^a = -L_{n-1}^{a+1}``.
    """
    _check_order(order)
    x = np.asarray(x, dtype=float)
    pref = _laguerre_prefactor(idx)
    if pref == 0.0:
        return Jet.constant(x, 0.0, order)
    if float(idx.nu).is_integer():
        n = int(idx.nu)
        coeffs = [(-1) ** k * _laguerre_poly(n - k, idx.alpha + k, x) for k in range(order + 1)]
        return Jet(x, np.stack(coeffs))
    m = kummer_m(-idx.nu, idx.alpha + 1, x, order)
    return m * pref


def x1_laguerre(idx: LaguerreIndex, x, order: int = 0) -> Jet:
    """X1 exceptional Laguerre function ``-(x+k+1) L_{nu-1}^k(x) + L_{nu-2}^k(x)``."""
    x = np.asarray(x, dtype=float)
    k = idx.alpha
    lin = -(Jet.variable(x, order) + (k + 1))
    return lin * laguerre(idx.shifted(-1), x, order) + laguerre(idx.shifted(-2), x, order)
