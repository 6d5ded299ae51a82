"""Pseudoscalar and scalar Dirac potentials and the Schrödinger-to-spinor map.

Convention: ``i sigma_2 = [[0, 1], [-1, 0]]``, so the Dirac equation
``i sigma_2 Psi' + (U - E) Psi = 0`` with ``U = m sigma_3 + q sigma_1`` reads

    row 1:  Psi2' + (m - E) Psi1 + q Psi2 = 0
    row 2: -Psi1' + q Psi1 - (m + E) Psi2 = 0

and row 2 is exactly the definition of ``Psi2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .jets import ScalarField
from .numerics import normalize
from .oscillator import Grid, ModelParams, energy

__all__ = [
    "PSEUDOSCALAR",
    "SCALAR",
    "DiracPotential",
    "Spinor",
    "dirac_energy",
    "spinor_from_schrodinger",
    "dirac_residual",
    "dirac_residual_rows",
    "scalar_coefficient",
    "scalar_potential",
    "normalized_spinor",
    "density",
]

PSEUDOSCALAR = "pseudoscalar"
SCALAR = "scalar"
KINDS = (PSEUDOSCALAR, SCALAR)


def _check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise DomainError(f"potential kind must be one of {KINDS}, got {kind!r}")
    return kind


@dataclass(frozen=True)
class DiracPotential:
    """``m sigma_3 + q sigma_1`` (pseudoscalar) or ``q sigma_1`` (scalar).

    For the scalar kind ``q`` is the full sigma_1 coefficient ``m + S`` and the
    mass does not appear separately.
    """

    kind: str
    mass: float
    q: ScalarField

    def __post_init__(self):
        _check_kind(self.kind)
        if self.mass < 0:
            raise DomainError("mass must be nonnegative")

    @property
    def sigma3_coefficient(self) -> float:
        return self.mass if self.kind == PSEUDOSCALAR else 0.0

    def matrix(self, x) -> np.ndarray:
        """Potential matrices with shape ``x.shape + (2, 2)``."""
        qv = self.q(x)
        mv = self.sigma3_coefficient
        out = np.zeros(np.shape(qv) + (2, 2))
        out[..., 0, 0] = mv
        out[..., 1, 1] = -mv
        out[..., 0, 1] = qv
        out[..., 1, 0] = qv
        return out


@dataclass(frozen=True)
class Spinor:
    psi1: ScalarField
    psi2: ScalarField
    energy: float


def dirac_energy(p: ModelParams, sign: int = 1) -> float:
    """``sign * sqrt(m^2 + eps_n)``."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    rad = p.m**2 + energy(p)
    if rad < 0:
        raise DomainError(f"negative radicand m^2 + eps = {rad}")
    return sign * float(np.sqrt(rad))


def spinor_from_schrodinger(
    psi: ScalarField,
    q: ScalarField,
    p: ModelParams,
    E: float,
    kind: str = PSEUDOSCALAR,
) -> Spinor:
    """Lift a Schrödinger solution to a Dirac spinor.

    ``q`` is the parametrizing function (pseudoscalar) or the full sigma_1
    coefficient (scalar).
    """
    _check_kind(kind)
    denom = E + p.m if kind == PSEUDOSCALAR else E
    if denom == 0:
        raise DomainError(f"spinor map undefined: denominator E{'+m' if kind == PSEUDOSCALAR else ''} = 0")
    psi2 = (q * psi - psi.derivative()) / denom
    return Spinor(psi, psi2, float(E))


def dirac_residual_rows(S: Spinor, U: DiracPotential, g: Grid) -> tuple[float, float]:
    """Max residual of each row, relative to the largest term over the grid."""
    x = g.points
    a = S.psi1.jet(x, 1)
    b = S.psi2.jet(x, 1)
    qv = U.q(x)
    mv = U.sigma3_coefficient
    E = S.energy
    row1 = b[1] + (mv - E) * a[0] + qv * b[0]
    row2 = -a[1] + qv * a[0] - (mv + E) * b[0]
    terms = [a[1], b[1], (abs(mv) + abs(E)) * a[0], (abs(mv) + abs(E)) * b[0], qv * a[0], qv * b[0]]
    scale = max(max(float(np.max(np.abs(t))) for t in terms), 1e-300)
    return float(np.max(np.abs(row1)) / scale), float(np.max(np.abs(row2)) / scale)


def dirac_residual(S: Spinor, U: DiracPotential, g: Grid) -> float:
    return max(dirac_residual_rows(S, U, g))


def scalar_coefficient(q: ScalarField, m: float) -> ScalarField:
    """sigma_1 coefficient ``m + S`` of the scalar potential; equals ``q``.

    Decoupling the scalar system needs ``(m+S)^2 + (m+S)' = V`` with
    ``eps = E^2``, so the coefficient is the Riccati solution itself and the
    scalar part is ``S = q - m`` (see :func:`scalar_potential`).
    """
    return q


def scalar_potential(q: ScalarField, m: float) -> ScalarField:
    """The scalar function ``S = q - m``."""
    return q - m


def normalized_spinor(S: Spinor, a: float, b: float) -> Spinor:
    psi1, psi2 = normalize((S.psi1, S.psi2), a, b)
    return Spinor(psi1, psi2, S.energy)


def density(S: Spinor) -> ScalarField:
    """``|Psi1|^2 + |Psi2|^2``."""
    return S.psi1 * S.psi1 + S.psi2 * S.psi2
