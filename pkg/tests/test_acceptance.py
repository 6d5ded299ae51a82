"""One test per acceptance criterion; each records a PASS/FAIL line."""
import io
import math
import time
from contextlib import redirect_stdout

import numpy as np
import pytest
from scipy import integrate as sint
from scipy import special

from darboux_dirac import (
    DarbouxConfig,
    DiracPotential,
    Grid,
    ModelParams,
    ScalarField,
    crum_shift,
    darboux_transform,
    dirac_energy,
    dirac_residual,
    dirac_residual_rows,
    eigenfunction,
    energy,
    potential_v0,
    q_particular,
    riccati_residual,
    schrodinger_residual,
    singularity_scan,
    transformed_potential,
    transformed_q1,
    transformed_spinor,
    wronskian,
    zero_energy_seed,
)
from darboux_dirac import cli
from darboux_dirac.dirac import density, normalized_spinor, spinor_from_schrodinger
from darboux_dirac.numerics import NORM_XMIN, fd_derivative, half_line_cutoff
from darboux_dirac.verify import jet_fd_audit

from conftest import ACCEPTANCE_LINES, GRID, TGRID

P = ModelParams(1.0, 1, 1.0)


def record(k, title, ok, detail):
    ACCEPTANCE_LINES[k] = f"{'PASS' if ok else 'FAIL'}  criterion {k}: {title} ({detail})"
    print(ACCEPTANCE_LINES[k])
    assert ok, ACCEPTANCE_LINES[k]


def _run_cli(args):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(args)
    return code, buf.getvalue()


def _quad_norm(dens, b):
    f = lambda t: float(dens(np.array(t)))  # noqa: E731
    return sint.quad(f, NORM_XMIN, b, limit=400, epsabs=1e-13, epsrel=1e-13)[0]


def test_criterion_1_spectrum():
    t0 = time.perf_counter()
    code, out = _run_cli(["spectrum", "--omega", "1", "--l", "1", "--m", "1", "--n", "0,1,2", "--aux", "-0.5"])
    rows = [r.split(",") for r in out.strip().splitlines()[1:]]
    states = [(float(r[2]), float(r[3])) for r in rows if r[0] == "state"]
    lam = [float(r[2]) for r in rows if r[0] == "aux"][0]
    eps_ok = max(abs(e - ref) for (e, _), ref in zip(states, (2.5, 4.5, 6.5))) < 1e-12
    e_ok = max(abs(E - math.sqrt(ref)) for (_, E), ref in zip(states, (3.5, 5.5, 7.5))) < 1e-12
    dt = time.perf_counter() - t0
    ok = code == 0 and eps_ok and e_ok and abs(lam - 1.5) < 1e-12 and lam < states[0][0] and dt < 1.0
    record(1, "spectrum reproduction", ok, f"lambda={lam}, {dt:.3f}s")


def test_criterion_2_initial_residuals():
    t0 = time.perf_counter()
    worst = 0.0
    for omega in (1.0, 2.0):
        for l in (0, 1, 2):
            p = ModelParams(omega, l)
            V = lambda x, p=p: potential_v0(p, x)  # noqa: E731
            for n in (0, 1, 2):
                pn = p.with_n(n)
                worst = max(worst, schrodinger_residual(eigenfunction(pn), energy(pn), V, GRID))
    V0 = lambda x: potential_v0(P, x)  # noqa: E731
    q0 = q_particular(zero_energy_seed(P))
    ric = riccati_residual(q0, V0, GRID)
    rows = 0.0
    for n in (0, 1, 2):
        pn = P.with_n(n)
        S = spinor_from_schrodinger(eigenfunction(pn), q0, pn, dirac_energy(pn))
        rows = max(rows, *dirac_residual_rows(S, DiracPotential("pseudoscalar", 1.0, q0), GRID))
    dt = time.perf_counter() - t0
    ok = worst < 1e-8 and ric < 1e-8 and rows < 1e-8 and dt < 10
    record(2, "initial-model residuals", ok, f"schrodinger {worst:.1e}, riccati {ric:.1e}, dirac {rows:.1e}, {dt:.2f}s")


def test_criterion_3_first_order_oracle():
    cfg = DarbouxConfig(P, (-0.5,))
    u = eigenfunction(P.with_n(-0.5))
    x = GRID.points
    worst = 0.0
    for n in (0, 1, 2):
        psi = eigenfunction(P.with_n(n))
        va = darboux_transform(psi, cfg)(x)
        vb = (-(u.derivative() / u) * psi + psi.derivative())(x)
        worst = max(worst, float(np.max(np.abs(va - vb) / np.maximum(np.abs(va), np.abs(vb)))))
    record(3, "first-order Darboux oracle", worst < 1e-10, f"max pointwise rel {worst:.1e}")


def test_criterion_4_isospectral_partner():
    cfg = DarbouxConfig(P, (-0.5,))
    q1 = transformed_q1(cfg)
    worst = 0.0
    for n in (0, 1, 2):
        pn = P.with_n(n)
        E = math.sqrt(1.0 + energy(pn))
        S, U1 = transformed_spinor(cfg, pn, E, q1=q1)
        worst = max(worst, dirac_residual(S, U1, TGRID))
    ric = riccati_residual(q1, transformed_potential(cfg), TGRID)
    ok = worst < 1e-7 and ric < 1e-7
    record(4, "isospectral partner", ok, f"dirac {worst:.1e}, q1 riccati {ric:.1e}")


def test_criterion_5_negative_controls():
    cfg = DarbouxConfig(P, (-0.5,))
    phi = darboux_transform(eigenfunction(P), cfg)
    lit = schrodinger_residual(phi, energy(P), transformed_potential(cfg, literal=True), TGRID)
    q0 = q_particular(zero_energy_seed(P))
    # literal S0 = q0 + m makes the sigma_1 coefficient q0 + 2m
    scal = riccati_residual(q0 + 2 * P.m, lambda x: potential_v0(P, x), GRID)
    code, out = _run_cli(["verify"])
    in_report = "control: literal first-derivative Crum shift" in out and "control: literal S0 = q0 + m" in out
    ok = lit > 1e-2 and scal > 1e-2 and in_report and code == 0
    record(5, "typo negative controls", ok, f"literal Crum {lit:.2f}, literal S0 {scal:.2f}")


def test_criterion_6_second_order():
    cfg = DarbouxConfig(ModelParams(1.0, 1, 1.0), (1.5, 1.25))
    us = cfg.aux_fields()
    u2t = darboux_transform(us[1], [us[0]])
    worst = 0.0
    for n in (0, 1, 2):
        psi = eigenfunction(cfg.params.with_n(n))
        direct = darboux_transform(psi, cfg)(GRID.points)
        it = darboux_transform(darboux_transform(psi, [us[0]]), [u2t])(GRID.points)
        worst = max(worst, float(np.max(np.abs(direct - it) / np.maximum(np.abs(direct), np.abs(it)))))
    q1 = transformed_q1(cfg)(TGRID.points)
    finite = bool(np.all(np.isfinite(q1)))
    record(6, "second-order transform", worst < 1e-8 and finite, f"iterated vs direct {worst:.1e}, q1 finite={finite}")


def test_criterion_7_figures():
    slow, bad = [], []
    for k in range(1, 8):
        t0 = time.perf_counter()
        code, out = _run_cli(["figure", str(k)])
        if time.perf_counter() - t0 > 10:
            slow.append(k)
        data = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)
        if code != 0 or data.shape[0] != 400 or not np.all(np.isfinite(data)):
            bad.append(k)
    b = half_line_cutoff(1.0)
    worst = 0.0
    q0 = q_particular(zero_energy_seed(P))
    for n in (0, 1, 2):
        pn = P.with_n(n)
        E = dirac_energy(pn)
        S0 = spinor_from_schrodinger(eigenfunction(pn), q0, pn, E)
        S1, _ = transformed_spinor(DarbouxConfig(P, (-0.5,)), pn, E)
        for S in (S0, S1):
            worst = max(worst, abs(_quad_norm(density(normalized_spinor(S, NORM_XMIN, b)), b) - 1))
    for a in (-0.02, -1e-4):
        S, _ = transformed_spinor(DarbouxConfig(P, (a,)), P.with_n(1), dirac_energy(P.with_n(1)))
        worst = max(worst, abs(_quad_norm(density(normalized_spinor(S, NORM_XMIN, b)), b) - 1))
    x = np.linspace(0.5, 6.0, 300)
    q0v = q0(x)
    dist = [float(np.max(np.abs(transformed_q1(DarbouxConfig(P, (a,)))(x) - q0v))) for a in (-0.5, -0.02, -1e-4)]
    mono = dist[0] < dist[1] < dist[2]
    ok = not slow and not bad and worst < 1e-8 and mono
    record(7, "figure regeneration (shape level)", ok, f"norm gap {worst:.1e}, deformation {['%.4f' % d for d in dist]}")


def test_criterion_8_annihilation():
    x = GRID.points
    worst = 0.0
    for n in (0, 1, 2):
        psi = eigenfunction(P.with_n(n))
        scale = float(np.max(np.abs(psi.jet(x, 1).coeffs)))
        worst = max(worst, float(np.max(np.abs(darboux_transform(psi, [psi])(x)))) / scale)
    rep = wronskian([eigenfunction(P), eigenfunction(P)], x, 2)
    zero = bool(np.all(rep.coeffs == 0))
    record(8, "annihilation and degeneracy", worst < 1e-12 and zero, f"annihilated {worst:.1e}, repeated W == 0: {zero}")


def test_criterion_9_derivative_audit():
    cfg = DarbouxConfig(P, (-0.5,))
    q0 = q_particular(zero_energy_seed(P))
    fields = [eigenfunction(P.with_n(n)) for n in range(3)] + [q0, transformed_q1(cfg), darboux_transform(eigenfunction(P), cfg)]
    audit = jet_fd_audit(fields, (0.5, 7.0), samples=50, seed=7)
    record(9, "jet vs finite-difference audit", audit < 1e-6, f"50 samples, worst {audit:.1e}")
