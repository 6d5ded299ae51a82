"""Wronskian (Crum) Darboux transformations of arbitrary order N <= 3."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dirac import PSEUDOSCALAR, SCALAR, DiracPotential, Spinor, _check_kind
from .errors import DomainError, PoleError
from .jets import Jet, ScalarField
from .oscillator import ModelParams, eigenfunction, energy, potential_v0
from .riccati import RiccatiFamily, n_for_zero_energy, q_general, q_particular

__all__ = [
    "DarbouxConfig",
    "wronskian",
    "wronskian_field",
    "darboux_transform",
    "crum_shift",
    "transformed_potential",
    "transformed_seed",
    "transformed_q1",
    "transformed_spinor",
    "MAX_ORDER",
]

MAX_ORDER = 3


@dataclass(frozen=True)
class DarbouxConfig:
    """Auxiliary seeds given by real state indices of the oscillator."""

    params: ModelParams
    aux_indices: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "aux_indices", tuple(float(n) for n in self.aux_indices))
        if not 1 <= len(self.aux_indices) <= MAX_ORDER:
            raise DomainError(f"transformation order must lie in [1, {MAX_ORDER}]")
        lam = self.aux_energies
        if len(set(lam)) != len(lam):
            raise DomainError(f"auxiliary energies must be pairwise distinct, got {lam}")

    @property
    def order(self) -> int:
        return len(self.aux_indices)

    @property
    def aux_energies(self) -> tuple[float, ...]:
        return tuple(energy(self.params.with_n(n)) for n in self.aux_indices)

    def aux_fields(self) -> list[ScalarField]:
        return [eigenfunction(self.params.with_n(n)) for n in self.aux_indices]


Aux = Union[DarbouxConfig, Sequence[ScalarField]]


def _fields(aux: Aux) -> list[ScalarField]:
    if isinstance(aux, DarbouxConfig):
        return aux.aux_fields()
    fields = list(aux)
    if not 1 <= len(fields) <= MAX_ORDER:
        raise DomainError(f"transformation order must lie in [1, {MAX_ORDER}]")
    return fields


def _det(rows: list[list[Jet]]) -> Jet:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    out = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def wronskian(fields: Sequence[ScalarField], x, order: int = 2) -> Jet:
    """Jet of ``det[f_i^(j)]`` by cofactor expansion of jet entries (len <= 4)."""
    fields = list(fields)
    n = len(fields)
    if not 1 <= n <= MAX_ORDER + 1:
        raise DomainError(f"wronskian supports 1..{MAX_ORDER + 1} functions")
    jets = [f.jet(x, order + n - 1) for f in fields]
    # row j holds the j-th derivatives of every function
    rows = [[Jet(jt.x, jt.coeffs[j:j + order + 1]) for jt in jets] for j in range(n)]
    return _det(rows)


def wronskian_field(fields: Sequence[ScalarField]) -> ScalarField:
    fields = list(fields)
    return ScalarField(
        lambda x, k: wronskian(fields, x, k),
        name="W(" + ",".join(f.name for f in fields) + ")",
    )


def _nonvanishing(j: Jet, what: str) -> Jet:
    v = np.atleast_1d(j[0])
    bad = (v == 0) | ~np.isfinite(v)
    if bad.any():
        where = float(np.atleast_1d(j.x)[bad][0]) if np.ndim(j.x) else float(j.x)
        raise PoleError(f"{what} vanishes at x={where:.17g}", where=where)
    return j


def darboux_transform(psi: ScalarField, aux: Aux) -> ScalarField:
    """``W(u_1..u_N, psi) / W(u_1..u_N)``."""
    us = _fields(aux)
    num = us + [psi]

    def fn(x, k):
        den = _nonvanishing(wronskian(us, x, k), "auxiliary Wronskian")
        return wronskian(num, x, k) / den

    return ScalarField(fn, name=f"D[{psi.name}]")


def crum_shift(aux: Aux, literal: bool = False) -> ScalarField:
    """``2 (log W)''``; the transformed potential is ``V0 - shift``.

    ``literal=True`` gives ``2 (log W)'`` instead, kept only as a negative
    control: it does not produce a partner potential.
    """
    W = wronskian_field(_fields(aux))

    def fn(x, k):
        extra = 1 if literal else 2
        j = _nonvanishing(W.jet(x, k + extra), "auxiliary Wronskian")
        dlog = j.shift(1) / j.truncate(k + extra - 1)
        return 2.0 * (dlog if literal else dlog.shift(1))

    return ScalarField(fn, name="crum" + ("-literal" if literal else ""))


def transformed_potential(cfg: DarbouxConfig, literal: bool = False):
    """Vectorized callable ``x -> V0(x) - shift(x)``."""
    shift = crum_shift(cfg, literal)

    def V1(x):
        return potential_v0(cfg.params, x) - shift(x)

    return V1


def transformed_seed(cfg: DarbouxConfig) -> ScalarField:
    """The transformed zero-energy solution ``phi|eps=0``."""
    p0 = cfg.params.with_n(n_for_zero_energy(cfg.params.l))
    return darboux_transform(eigenfunction(p0), cfg)


def transformed_q1(
    cfg: DarbouxConfig,
    mode: str = "particular",
    c: float = 0.0,
    xref: float = 1.0,
) -> ScalarField:
    seed = transformed_seed(cfg)
    if mode == "particular":
        return q_particular(seed)
    return q_general(RiccatiFamily(seed, c=c, xref=xref, mode=mode))


def transformed_spinor(
    cfg: DarbouxConfig,
    p: ModelParams,
    E: float,
    kind: str = PSEUDOSCALAR,
    q1: ScalarField | None = None,
) -> tuple[Spinor, DiracPotential]:
    """Transformed spinor for state ``p.n`` and its partner potential.

    For the scalar kind ``q1`` is used directly as the sigma_1 coefficient.
    """
    _check_kind(kind)
    if q1 is None:
        q1 = transformed_q1(cfg)
    phi1 = darboux_transform(eigenfunction(p), cfg)
    denom = E + p.m if kind == PSEUDOSCALAR else E
    if denom == 0:
        raise DomainError("spinor map undefined for this energy")
    phi2 = (q1 * phi1 - phi1.derivative()) / denom
    U1 = DiracPotential(kind, p.m, q1)
    return Spinor(phi1, phi2, float(E)), U1
