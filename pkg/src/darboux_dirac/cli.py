"""Command-line interface: curve tables as CSV and the verification report.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 pole or divergence.
"""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, field

import numpy as np

from .darboux import (
    DarbouxConfig,
    crum_shift,
    darboux_transform,
    transformed_seed,
    transformed_spinor,
    wronskian_field,
)
from .dirac import PSEUDOSCALAR, SCALAR, density, dirac_energy, normalized_spinor, spinor_from_schrodinger
from .errors import ConvergenceError, DomainError, PoleError
from .numerics import NORM_XMIN, half_line_cutoff, normalize
from .oscillator import Grid, ModelParams, eigenfunction, energy, potential_v0
from .riccati import RiccatiFamily, q_general, q_particular, singularity_scan, zero_energy_seed
from .verify import VerifyConfig, default_tolerance, format_report, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_POLE = 0, 1, 2, 3
DEFAULT_GRID = "0.1:8:400"
CAPTION_AUX = (-0.5, -1 / 50, -1e-4)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    omega: float = 1.0
    l: int = 1
    m: float = 1.0
    n: list[float] = field(default_factory=lambda: [0.0, 1.0, 2.0])
    order: int = 0
    aux: list[float] = field(default_factory=list)
    c_const: float | None = None
    grid: Grid = field(default_factory=lambda: Grid.parse(DEFAULT_GRID))
    grid_given: bool = False
    kind: str = PSEUDOSCALAR
    esign: int = 1
    out: str | None = None
    crum_literal: bool = False

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.omega, self.l, self.m, 0.0)

    def darboux(self) -> DarbouxConfig | None:
        if self.order == 0:
            return None
        return DarbouxConfig(self.params, tuple(self.aux))


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of numbers, got {text!r}") from None


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    try:
        grid = Grid.parse(ns.grid) if ns.grid else Grid.parse(DEFAULT_GRID)
        cfg = RunConfig(
            omega=ns.omega,
            l=ns.l,
            m=ns.m,
            n=_floats(ns.n),
            aux=_floats(ns.aux) if ns.aux else [],
            c_const=ns.c_const,
            grid=grid,
            grid_given=ns.grid is not None,
            kind=ns.kind,
            esign=1 if ns.esign == "+" else -1,
            out=ns.out,
            crum_literal=ns.crum_literal,
        )
        cfg.params  # validates omega, l, m
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if ns.order is None:
        cfg.order = len(cfg.aux)
    else:
        cfg.order = ns.order
        if cfg.order != len(cfg.aux):
            raise UsageError(f"--order {cfg.order} needs exactly {cfg.order} --aux values, got {len(cfg.aux)}")
    if cfg.order > 3:
        raise UsageError("transformation order is capped at 3")
    return cfg


# table helpers -------------------------------------------------------------

def write_csv(header: list[str], columns: list[np.ndarray], stream) -> None:
    stream.write(",".join(header) + "\n")
    for row in zip(*columns):
        stream.write(",".join(f"{float(v):.17g}" for v in row) + "\n")


def _emit(cfg: RunConfig, header, columns) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            write_csv(header, columns, fh)
    else:
        buf = io.StringIO()
        write_csv(header, columns, buf)
        sys.stdout.write(buf.getvalue())


def _require_regular(f, g: Grid, what: str) -> None:
    hits = singularity_scan(f, g)
    if hits:
        raise PoleError(f"{what} has a zero in {hits[0]}", where=hits[0])


def _q_field(seed, cfg: RunConfig):
    if cfg.c_const is None:
        return q_particular(seed)
    return q_general(RiccatiFamily(seed, c=cfg.c_const))


def _state_indices(cfg: RunConfig) -> list[int]:
    out = []
    for n in cfg.n:
        if n < 0 or not float(n).is_integer():
            raise UsageError(f"bound-state index must be a nonnegative integer, got {n:g}")
        out.append(int(n))
    return out


def _energy_of(p: ModelParams, cfg: RunConfig) -> float:
    if cfg.kind == SCALAR:
        return cfg.esign * float(np.sqrt(energy(p)))
    return dirac_energy(p, cfg.esign)


# commands ------------------------------------------------------------------

def potential_table(cfg: RunConfig, aux_sets=None):
    """Columns x, q0 and one q1 per auxiliary set (default: the configured one)."""
    x = cfg.grid.points
    seed = zero_energy_seed(cfg.params)
    _require_regular(seed, cfg.grid, "zero-energy seed")
    header, cols = ["x", "q0"], [x, _q_field(seed, cfg)(x)]
    if aux_sets is None:
        aux_sets = [tuple(cfg.aux)] if cfg.order else []
    for aux in aux_sets:
        dcfg = DarbouxConfig(cfg.params, aux)
        _require_regular(wronskian_field(dcfg.aux_fields()), cfg.grid, "auxiliary Wronskian")
        s1 = transformed_seed(dcfg)
        _require_regular(s1, cfg.grid, "transformed zero-energy seed")
        header.append("q1" if len(aux_sets) == 1 else "q1_aux" + "_".join(f"{a:g}" for a in aux))
        cols.append(_q_field(s1, cfg)(x))
    return header, cols


def density_table(cfg: RunConfig, aux_sets=None):
    x = cfg.grid.points
    p0 = cfg.params
    a, b = NORM_XMIN, half_line_cutoff(p0.omega)
    states = _state_indices(cfg)
    seed = zero_energy_seed(p0)
    q0 = _q_field(seed, cfg)
    if aux_sets is None:
        aux_sets = [tuple(cfg.aux)] if cfg.order else [None]
    header, cols = ["x"], [x]
    for aux in aux_sets:
        for n in states:
            p = p0.with_n(n)
            E = _energy_of(p, cfg)
            if aux is None:
                S = spinor_from_schrodinger(eigenfunction(p), q0, p, E, cfg.kind)
            else:
                dcfg = DarbouxConfig(p0, aux)
                q1 = _q_field(transformed_seed(dcfg), cfg)
                S, _ = transformed_spinor(dcfg, p, E, cfg.kind, q1=q1)
            col = f"density_n{n}"
            if len(aux_sets) > 1:
                col += "_aux" + "_".join(f"{v:g}" for v in aux)
            header.append(col)
            cols.append(density(normalized_spinor(S, a, b))(x))
    return header, cols


def darboux_table(cfg: RunConfig):
    dcfg = cfg.darboux()
    if dcfg is None:
        raise UsageError("darboux needs --order >= 1 and matching --aux values")
    x = cfg.grid.points
    _require_regular(wronskian_field(dcfg.aux_fields()), cfg.grid, "auxiliary Wronskian")
    shift = crum_shift(dcfg, literal=cfg.crum_literal)(x)
    v0 = potential_v0(cfg.params, x)
    header = ["x", "V0", "crum_shift", "V1"]
    cols = [x, v0, shift, v0 - shift]
    a, b = NORM_XMIN, half_line_cutoff(cfg.omega)
    for n in _state_indices(cfg):
        phi = normalize(darboux_transform(eigenfunction(cfg.params.with_n(n)), dcfg), a, b)
        header.append(f"phi_n{n}")
        cols.append(phi(x))
    return header, cols


def spectrum_table(cfg: RunConfig):
    rows = []
    for n in cfg.n:
        p = cfg.params.with_n(n)
        rows.append(("state", n, energy(p)))
    for n in cfg.aux:
        rows.append(("aux", n, energy(cfg.params.with_n(n))))
    header = ["role", "n", "epsilon", "abs_E"]
    out = []
    for role, n, eps in rows:
        rad = cfg.m**2 + eps
        out.append((role, n, eps, float(np.sqrt(rad)) if rad >= 0 else float("nan")))
    return header, out


def _write_spectrum(cfg: RunConfig, header, rows) -> None:
    lines = [",".join(header)]
    for role, n, eps, e in rows:
        lines.append(f"{role},{n:.17g},{eps:.17g},{e:.17g}")
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


FIGURES = {
    1: "q0 for omega=l=1",
    2: "Dirac densities, m=omega=l=1, n=0,1,2",
    3: "q0 and first-order q1 with n1=-1/2",
    4: "transformed densities, m=omega=l=1, n1=-1/2, n=0,1,2",
    5: "q1 for n1=-1/2, -1/50, -1e-4",
    6: "q0 and second-order q1 with (n1, n2)=(3/2, 5/4)",
    7: "transformed n=1 density for n1=-1/2, -1/50, -1e-4",
}


def figure_table(number: int, cfg: RunConfig):
    """Caption settings for each figure; only the grid is taken from ``cfg``."""
    base = RunConfig(omega=1.0, l=1, m=1.0, grid=cfg.grid, out=cfg.out)
    if number == 1:
        return potential_table(base)
    if number == 2:
        return density_table(base)
    if number == 3:
        base.order, base.aux = 1, [-0.5]
        return potential_table(base)
    if number == 4:
        base.order, base.aux = 1, [-0.5]
        return density_table(base)
    if number == 5:
        return potential_table(base, aux_sets=[(a,) for a in CAPTION_AUX])
    if number == 6:
        base.order, base.aux = 2, [1.5, 1.25]
        return potential_table(base)
    if number == 7:
        base.n = [1.0]
        return density_table(base, aux_sets=[(a,) for a in CAPTION_AUX])
    raise UsageError(f"figure must be one of 1..7, got {number}")


def cmd_verify(cfg: RunConfig) -> int:
    tol = default_tolerance()
    vcfg = VerifyConfig(
        params=cfg.params,
        states=_state_indices(cfg),
        aux=tuple(cfg.aux) if cfg.aux else (-0.5,),
        tol=tol,
        crum_literal=cfg.crum_literal,
    )
    if cfg.grid_given:
        vcfg.grid = cfg.grid
        vcfg.transformed_grid = cfg.grid
    checks = run_checks(vcfg)
    report = format_report(checks)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report + "\n")
    print(report)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


# argument parsing -----------------------------------------------------------

_VALUE_FLAGS = {"--omega", "--l", "--m", "--n", "--order", "--aux", "--c-const", "--grid", "--kind", "--esign", "--out"}


def _glue_values(argv: list[str]) -> list[str]:
    """Turn ``--aux -1e-4`` into ``--aux=-1e-4`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in _VALUE_FLAGS:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--omega", type=float, default=1.0, help="oscillator frequency (default 1)")
    common.add_argument("--l", type=int, default=1, help="angular momentum (default 1)")
    common.add_argument("--m", type=float, default=1.0, help="Dirac mass (default 1)")
    common.add_argument("--n", default="0,1,2", help="comma list of state indices (default 0,1,2)")
    common.add_argument("--order", type=int, default=None, help="Darboux order N (default: number of --aux values)")
    common.add_argument("--aux", default=None, help="comma list of auxiliary indices n_1..n_N")
    common.add_argument("--c-const", type=float, default=None, help="Riccati family constant; omit for the particular solution")
    common.add_argument("--grid", default=None, help=f"xmin:xmax:count (default {DEFAULT_GRID})")
    common.add_argument("--kind", choices=(PSEUDOSCALAR, SCALAR), default=PSEUDOSCALAR)
    common.add_argument("--esign", choices=("+", "-"), default="+")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--crum-literal", action="store_true", help=argparse.SUPPRESS)

    parser = _Parser(prog="darboux-dirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("potential", parents=[common], help="x, q0 and (with --order) q1")
    sub.add_parser("density", parents=[common], help="normalized |Psi1|^2 + |Psi2|^2 per state")
    sub.add_parser("darboux", parents=[common], help="Crum shift, partner potential and transformed states")
    sub.add_parser("spectrum", parents=[common], help="n, eps_n, |E_n| table")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    fig = sub.add_parser("figure", parents=[common], help="curves at figure caption settings")
    fig.add_argument("number", type=int, choices=range(1, 8), metavar="{1..7}")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_glue_values(argv))
        cfg = config_from_args(ns)
        if ns.command == "verify":
            return cmd_verify(cfg)
        if ns.command == "spectrum":
            _write_spectrum(cfg, *spectrum_table(cfg))
            return EXIT_OK
        if ns.command == "potential":
            header, cols = potential_table(cfg)
        elif ns.command == "density":
            header, cols = density_table(cfg)
        elif ns.command == "darboux":
            header, cols = darboux_table(cfg)
        else:
            header, cols = figure_table(ns.number, cfg)
        _emit(cfg, header, cols)
        return EXIT_OK
    except UsageError as exc:
        print(f"darboux-dirac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PoleError, ConvergenceError) as exc:
        print(f"darboux-dirac: numerical failure: {exc}", file=sys.stderr)
        return EXIT_POLE
    except DomainError as exc:
        print(f"darboux-dirac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
