"""Adaptive Simpson quadrature, finite-difference oracles and normalization."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import simpson

from .errors import ConvergenceError, DomainError
from .jets import ScalarField

__all__ = [
    "QuadratureResult",
    "integrate",
    "integrate_segments",
    "fd_derivative",
    "normalize",
    "norm_squared",
    "half_line_cutoff",
    "NORM_XMIN",
]

MAX_DEPTH = 40
MAX_PANELS = 200_000
# panels are never asked to beat the rounding noise of their own Simpson sum
ROUNDOFF_RTOL = 1e-14
# Normalization integrals start just off the origin: transformed fields are
# 0/0 at x = 0 and lose all digits to cancellation below ~1e-3; the
# neglected mass is O(x^(2l+3)).
NORM_XMIN = 1e-3
NORM_POINTS = 4001


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    panels: int


def half_line_cutoff(omega: float) -> float:
    """Upper limit for half-line integrals; Gaussian tail below 1e-12 of the total."""
    return 12.0 / np.sqrt(omega)


def integrate_segments(
    f: Callable[[np.ndarray], np.ndarray],
    edges: Sequence[float],
    abs_tol: float = 1e-12,
    max_depth: int = MAX_DEPTH,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Adaptive Simpson over consecutive segments ``edges[i]..edges[i+1]``.

    All panels of all segments are refined breadth-first so ``f`` is called on
    whole batches of abscissae. A panel is accepted when its Richardson error
    estimate drops below ``abs_tol * width / span`` or below the roundoff
    floor ``ROUNDOFF_RTOL * |panel integral|``, whichever is larger. Returns the per-segment
    integrals, per-segment error estimates and the number of accepted panels.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise DomainError("need at least two edges")
    if np.any(np.diff(edges) <= 0):
        raise DomainError("integration limits must be strictly increasing")
    span = edges[-1] - edges[0]
    nseg = edges.size - 1

    a = edges[:-1].copy()
    b = edges[1:].copy()
    owner = np.arange(nseg)
    mid = 0.5 * (a + b)
    fv = np.asarray(f(np.concatenate([a, mid, b])), dtype=float)
    fa, fm, fb = fv[:nseg], fv[nseg:2 * nseg], fv[2 * nseg:]
    whole = (b - a) / 6.0 * (fa + 4 * fm + fb)

    values = np.zeros(nseg)
    errors = np.zeros(nseg)
    accepted = 0
    depth = 0
    while a.size:
        if depth > max_depth or a.size > MAX_PANELS:
            raise ConvergenceError(
                f"adaptive Simpson exceeded {max_depth} bisections or {MAX_PANELS} live panels near x={a[0]:g}"
            )
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        n = a.size
        fv = np.asarray(f(np.concatenate([lm, rm])), dtype=float)
        flm, frm = fv[:n], fv[n:]
        if not np.all(np.isfinite(flm)) or not np.all(np.isfinite(frm)):
            raise ConvergenceError("integrand is not finite on the interval")
        left = (m - a) / 6.0 * (fa + 4 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4 * frm + fb)
        halves = left + right
        err = np.abs(halves - whole) / 15.0
        # always split at least twice so a lucky first estimate is not trusted
        tol = np.maximum(abs_tol * (b - a) / span, ROUNDOFF_RTOL * np.abs(halves))
        done = (err < tol) & (depth >= 2)
        if done.any():
            np.add.at(values, owner[done], halves[done] + (halves[done] - whole[done]) / 15.0)
            np.add.at(errors, owner[done], err[done])
            accepted += int(done.sum())
        keep = ~done
        a, m, b = a[keep], m[keep], b[keep]
        fa, fm, fb = fa[keep], fm[keep], fb[keep]
        flm, frm = flm[keep], frm[keep]
        left, right = left[keep], right[keep]
        owner = owner[keep]
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
        fa, fm, fb = np.concatenate([fa, fm]), np.concatenate([flm, frm]), np.concatenate([fm, fb])
        whole = np.concatenate([left, right])
        owner = np.concatenate([owner, owner])
        depth += 1
    return values, errors, accepted


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    abs_tol: float = 1e-12,
) -> QuadratureResult:
    """Adaptive Simpson integral of a vectorized ``f`` over ``[a, b]``."""
    if not a < b:
        raise DomainError(f"integrate requires a < b, got a={a}, b={b}")
    values, errors, panels = integrate_segments(f, [a, b], abs_tol)
    return QuadratureResult(float(values[0]), float(errors[0]), panels)


def fd_derivative(f: Callable, x: float, order: int = 1) -> float:
    """Fourth-order central finite difference of ``f`` at ``x``.

    First derivatives use ``h = max(1e-5, 1e-5|x|)``. Second derivatives use a
    wider ``h = max(2e-3, 2e-3|x|)``; with the 1e-5 step the roundoff alone is
    ~1e-6 relative.
    """
    if order == 1:
        h = max(1e-5, 1e-5 * abs(x))
        fp = [float(f(x + s * h)) for s in (-2, -1, 1, 2)]
        return (fp[0] - 8 * fp[1] + 8 * fp[2] - fp[3]) / (12 * h)
    if order == 2:
        h = max(2e-3, 2e-3 * abs(x))
        fp = [float(f(x + s * h)) for s in (-2, -1, 0, 1, 2)]
        return (-fp[0] + 16 * fp[1] - 30 * fp[2] + 16 * fp[3] - fp[4]) / (12 * h * h)
    raise DomainError(f"fd_derivative supports order 1 or 2, got {order}")


def norm_squared(fields, a: float, b: float, points: int = NORM_POINTS) -> float:
    """Composite Simpson integral of the summed squares on a uniform grid."""
    if isinstance(fields, ScalarField):
        fields = (fields,)
    if points % 2 == 0:
        points += 1
    x = np.linspace(a, b, points)
    dens = sum(fl(x) ** 2 for fl in fields)
    return float(simpson(dens, x=x))


def normalize(fields, a: float, b: float, points: int = NORM_POINTS):
    """Rescale a field, or a tuple of fields sharing one norm, to unit L2 norm."""
    single = isinstance(fields, ScalarField)
    group = (fields,) if single else tuple(fields)
    total = norm_squared(group, a, b, points)
    if not total > 0:
        raise DomainError("cannot normalize a field with zero norm")
    scale = 1.0 / np.sqrt(total)
    out = tuple(fl.scaled(scale) for fl in group)
    return out[0] if single else out
