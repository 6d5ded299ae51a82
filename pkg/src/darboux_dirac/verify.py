"""Residual, orthogonality and spectral checks run by ``darboux-dirac verify``."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .darboux import (
    DarbouxConfig,
    crum_shift,
    darboux_transform,
    transformed_potential,
    transformed_q1,
    transformed_seed,
    transformed_spinor,
    wronskian_field,
)
from .dirac import (
    PSEUDOSCALAR,
    DiracPotential,
    density,
    dirac_energy,
    dirac_residual_rows,
    normalized_spinor,
    scalar_coefficient,
    spinor_from_schrodinger,
)
from .jets import ScalarField
from .numerics import NORM_XMIN, fd_derivative, half_line_cutoff, integrate
from .oscillator import Grid, ModelParams, eigenfunction, energy, potential_v0, schrodinger_residual
from .riccati import q_particular, riccati_residual, singularity_scan, zero_energy_seed

__all__ = ["Check", "VerifyConfig", "run_checks", "default_tolerance", "jet_fd_audit", "format_report"]

DEFAULT_TOL = 1e-7
TOL_ENV = "DARBOUX_DIRAC_TOL"
CONTROL_FLOOR = 1e-2


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    return float(raw) if raw else DEFAULT_TOL


@dataclass
class Check:
    """One verification line. ``above=True`` marks a negative control that
    passes when ``value`` exceeds ``tol``."""

    name: str
    value: float
    tol: float
    above: bool = False

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value > self.tol if self.above else self.value < self.tol

    def line(self) -> str:
        rel = ">" if self.above else "<"
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name:<44s} {self.value:.3e}  (need {rel} {self.tol:.1e})"


@dataclass
class VerifyConfig:
    params: ModelParams = field(default_factory=lambda: ModelParams(1.0, 1, 1.0, 0.0))
    states: Sequence[int] = (0, 1, 2)
    aux: Sequence[float] = (-0.5,)
    grid: Grid = field(default_factory=lambda: Grid(0.2, 8.0, 400))
    transformed_grid: Grid = field(default_factory=lambda: Grid(0.1, 8.0, 1000))
    tol: float = DEFAULT_TOL
    crum_literal: bool = False
    audit_samples: int = 50
    seed: int = 20240917


def jet_fd_audit(
    fields: Sequence[ScalarField],
    xs: Sequence[float],
    samples: int = 50,
    seed: int = 0,
) -> float:
    """Worst relative gap between jet derivatives and finite differences.

    The gap is measured against the local jet magnitude
    ``max(|f|, |f'|, |f''|)`` so isolated zeros of one derivative do not blow
    up the ratio.
    """
    rng = np.random.default_rng(seed)
    lo, hi = min(xs), max(xs)
    worst = 0.0
    for _ in range(samples):
        f = fields[rng.integers(len(fields))]
        x = float(rng.uniform(lo, hi))
        k = int(rng.integers(1, 3))
        j = f.jet(np.array(x), 2)
        scale = max(abs(float(j[0])), abs(float(j[1])), abs(float(j[2])), 1e-300)
        fd = fd_derivative(lambda t: float(f(np.array(t))), x, k)
        worst = max(worst, abs(float(j[k]) - fd) / scale)
    return worst


def _normalization_gap(S, a: float, b: float) -> float:
    Sn = normalized_spinor(S, a, b)
    dens = density(Sn)
    return abs(integrate(dens, a, b, 1e-10).value - 1.0)


def run_checks(cfg: VerifyConfig) -> list[Check]:
    p0 = cfg.params
    g = cfg.grid
    tol = cfg.tol
    tol0 = tol / 10
    a, b = NORM_XMIN, half_line_cutoff(p0.omega)
    V0 = lambda x: potential_v0(p0, x)  # noqa: E731
    checks: list[Check] = []
    add = checks.append

    # spectrum
    gap = 0.0
    for n in cfg.states:
        p = p0.with_n(n)
        gap = max(gap, abs(dirac_energy(p) ** 2 - p.m**2 - energy(p)))
        gap = max(gap, abs(energy(p) - p.omega * (2 * n + p.l + 1.5)))
    add(Check("spectrum: E^2 - m^2 = eps_n", gap, 1e-12))

    # initial model
    seed = zero_energy_seed(p0)
    add(Check("zero-energy seed sign changes", float(len(singularity_scan(seed, Grid(0.05, 10.0, 2000)))), 0.5))
    q0 = q_particular(seed)
    add(Check("riccati residual q0", riccati_residual(q0, V0, g), tol0))
    fields_for_audit: list[ScalarField] = [seed, q0]
    for n in cfg.states:
        p = p0.with_n(n)
        psi = eigenfunction(p)
        fields_for_audit.append(psi)
        add(Check(f"schrodinger residual psi[n={n}]", schrodinger_residual(psi, energy(p), V0, g), tol0))
        for sgn in (1, -1):
            E = dirac_energy(p, sgn)
            S = spinor_from_schrodinger(psi, q0, p, E)
            U = DiracPotential(PSEUDOSCALAR, p.m, q0)
            r1, r2 = dirac_residual_rows(S, U, g)
            add(Check(f"dirac residual n={n} E{'+' if sgn > 0 else '-'} (row 1)", r1, tol0))
            add(Check(f"dirac residual n={n} E{'+' if sgn > 0 else '-'} (row 2)", r2, tol0))
        f = scalar_coefficient(q0, p.m)
        Es = float(np.sqrt(energy(p)))
        Ss = spinor_from_schrodinger(psi, f, p, Es, "scalar")
        add(Check(f"scalar dirac residual n={n}", max(dirac_residual_rows(Ss, DiracPotential("scalar", p.m, f), g)), tol0))
        S = spinor_from_schrodinger(psi, q0, p, dirac_energy(p))
        add(Check(f"spinor normalization n={n}", _normalization_gap(S, a, b), 1e-8))
    m_ctrl = p0.m if p0.m > 0 else 1.0
    add(Check("control: literal S0 = q0 + m (must fail)", riccati_residual(q0 + 2 * m_ctrl, V0, g), CONTROL_FLOOR, above=True))

    # Darboux partner
    aux = tuple(cfg.aux) or (-0.5,)
    dcfg = DarbouxConfig(p0, aux)
    tg = cfg.transformed_grid
    add(Check("aux Wronskian sign changes", float(len(singularity_scan(wronskian_field(dcfg.aux_fields()), tg))), 0.5))
    add(Check("transformed seed sign changes", float(len(singularity_scan(transformed_seed(dcfg), tg))), 0.5))
    q1 = transformed_q1(dcfg)
    V1 = transformed_potential(dcfg, literal=cfg.crum_literal)
    tag = "literal first-derivative" if cfg.crum_literal else "second-derivative"
    add(Check(f"crum shift reading ({tag}): q1 riccati", riccati_residual(q1, V1, tg), tol))
    fields_for_audit += [q1, transformed_seed(dcfg)]
    for n in cfg.states:
        p = p0.with_n(n)
        psi = eigenfunction(p)
        phi = darboux_transform(psi, dcfg)
        add(Check(f"crum shift reading ({tag}): phi[n={n}]", schrodinger_residual(phi, energy(p), V1, tg), tol))
        if dcfg.order == 1:
            u = dcfg.aux_fields()[0]
            closed = psi.derivative() - u.log_derivative() * psi
            x = g.points
            va, vb = phi(x), closed(x)
            rel = np.max(np.abs(va - vb) / np.maximum(np.maximum(np.abs(va), np.abs(vb)), 1e-300))
            add(Check(f"first-order closed form n={n}", float(rel), 1e-10))
        if dcfg.order == 2:
            us = dcfg.aux_fields()
            u2t = darboux_transform(us[1], [us[0]])
            it = darboux_transform(darboux_transform(psi, [us[0]]), [u2t])
            x = g.points
            va, vb = phi(x), it(x)
            rel = np.max(np.abs(va - vb) / np.maximum(np.maximum(np.abs(va), np.abs(vb)), 1e-300))
            add(Check(f"iterated vs direct N=2 n={n}", float(rel), 1e-8))
        E = dirac_energy(p)
        S, U1 = transformed_spinor(dcfg, p, E, q1=q1)
        add(Check(f"transformed dirac residual n={n}", max(dirac_residual_rows(S, U1, tg)), tol))
        add(Check(f"transformed normalization n={n}", _normalization_gap(S, a, b), 1e-8))
        fields_for_audit.append(S.psi2)
    n0 = cfg.states[0] if cfg.states else 0
    psi0 = eigenfunction(p0.with_n(n0))
    killed = darboux_transform(psi0, [psi0])
    x = g.points
    scale = float(np.max(np.abs(psi0.jet(x, 1).coeffs)))
    add(Check(f"annihilation D[psi{n0}; psi{n0}]", float(np.max(np.abs(killed(x)))) / scale, 1e-12))

    # typo controls
    shift_lit = crum_shift(dcfg, literal=True)
    phi0 = darboux_transform(eigenfunction(p0.with_n(n0)), dcfg)
    lit = schrodinger_residual(phi0, energy(p0.with_n(n0)), lambda x: V0(x) - shift_lit(x), tg)
    add(Check("control: literal first-derivative Crum shift (must fail)", lit, CONTROL_FLOOR, above=True))

    audit = jet_fd_audit(fields_for_audit, (0.5, min(7.0, g.xmax)), cfg.audit_samples, cfg.seed)
    add(Check(f"jet vs finite differences ({cfg.audit_samples} samples)", audit, 1e-6))
    return checks


def format_report(checks: Sequence[Check]) -> str:
    lines = [c.line() for c in checks]
    failed = [c.name for c in checks if not c.passed]
    lines.append("")
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        lines.append("failed: " + "; ".join(failed))
    return "\n".join(lines)
