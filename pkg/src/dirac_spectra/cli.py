"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 no discrete
spectrum.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from .channels import Channel, SymmetryMode
from .comparison import CorpusCase, builtin_corpus, default_solver, run_corpus
from .envelope import log_envelope_bound
from .errors import (
    DegenerateEnergy,
    DiracSpectraError,
    DomainError,
    NoBoundState,
    NoDiscreteSpectrum,
    NotApplicable,
    NumericalFailure,
)
from .exact_spectra import log_energy, log_spectral_region, log_u1
from .potentials import Coulomb, Kratzer, Linear, Log, Oscillator, PotentialModel, ShiftedCoulomb
from .radial_solver import DEFAULT_R_MIN, RadialGrid, log_e1
from .spectrum import energy, has_closed_form

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_NO_SPECTRUM = 0, 1, 2, 3

PAPER_E1 = 1.6411353
PAPER_P_LINEAR = 3.3612545

POTENTIALS = ("oscillator", "linear", "coulomb", "shifted-coulomb", "kratzer", "log")
CSV_HEADER = ("v", "E_exact", "E_oracle", "E_envelope", "region_lo", "region_hi", "status")
OUTPUTS = ("exact", "oracle", "envelope")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.9g}"


@dataclass
class CsvRow:
    v: float
    E_exact: Optional[float] = None
    E_oracle: Optional[float] = None
    E_envelope: Optional[float] = None
    region_lo: Optional[float] = None
    region_hi: Optional[float] = None
    status: str = "ok"

    def line(self) -> str:
        vals = [_fmt(self.v), _fmt(self.E_exact), _fmt(self.E_oracle), _fmt(self.E_envelope),
                _fmt(self.region_lo), _fmt(self.region_hi), self.status]
        return ",".join(vals)


@dataclass
class SweepSpec:
    potential: str
    channel: Channel
    v_min: float
    v_max: float
    n_points: int
    spacing: str = "linear"
    outputs: Sequence[str] = ("exact",)

    def __post_init__(self):
        if not self.v_min < self.v_max:
            raise UsageError("v-min must be below v-max")
        if self.n_points < 2:
            raise UsageError("n-points must be at least 2")
        if self.spacing not in ("linear", "log"):
            raise UsageError("spacing must be linear or log")
        if self.spacing == "log" and self.v_min * self.v_max <= 0:
            raise UsageError("log spacing needs v-min and v-max of one sign")
        bad = set(self.outputs) - set(OUTPUTS)
        if bad:
            raise UsageError(f"unknown outputs {sorted(bad)}")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            sign = 1.0 if self.v_min > 0 else -1.0
            lo, hi = sorted((abs(self.v_min), abs(self.v_max)))
            return np.sort(sign * np.geomspace(lo, hi, self.n_points))
        return np.linspace(self.v_min, self.v_max, self.n_points)


# argument handling


def _common(p: argparse.ArgumentParser, potential: bool = True):
    if potential:
        p.add_argument("--potential", choices=POTENTIALS, default="coulomb")
        p.add_argument("--v", type=float, default=1.0, help="coupling strength")
        p.add_argument("--c", type=float, default=0.0, help="constant shift")
        p.add_argument("--a", type=float, default=0.0, help="inverse-square coefficient (kratzer)")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--j2", type=int, default=1, help="twice the total angular momentum")
    p.add_argument("--tau", type=int, default=1)
    p.add_argument("--mode", choices=("spin", "pseudo"), default="spin")
    p.add_argument("--nu", type=int, default=0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--rmax", type=float, default=None, help="fixed outer radius (default adaptive)")
    p.add_argument("--npoints", type=int, default=None, help="grid points when --rmax is set")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--csv", metavar="PATH", default=None)
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--config", metavar="PATH", default=None, help="key=value file; flags override it")
    p.add_argument("--use-paper-constants", action="store_true",
                   help=f"use e(1)={PAPER_E1} and P={PAPER_P_LINEAR} for L=1, nu=0")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dirac-spectra", description="Dirac spectra with spin and pseudo-spin symmetry")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("spectrum", help="single energy")
    _common(p)
    p.add_argument("--method", choices=("auto", "exact", "oracle"), default="auto")

    p = sub.add_parser("sweep", help="energies over a coupling range")
    _common(p)
    p.add_argument("--v-min", type=float, required=False, default=0.1)
    p.add_argument("--v-max", type=float, required=False, default=2.0)
    p.add_argument("--n-points", type=int, default=11)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.add_argument("--outputs", default="exact", help="comma list from exact,oracle,envelope")
    p.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script next to --csv")

    p = sub.add_parser("envelope", help="envelope bound for the log potential")
    _common(p)

    p = sub.add_parser("regions", help="spectral regions for the log potential")
    _common(p, potential=False)

    p = sub.add_parser("figure1", help="exact and envelope energies for v ln r")
    _common(p, potential=False)
    p.add_argument("--n-points", type=int, default=50)
    p.add_argument("--v-min", type=float, default=0.05)
    p.add_argument("--v-max", type=float, default=14.0)
    p.add_argument("--oracle", action="store_true", help="add shooting-oracle energies")
    p.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script next to --csv")
    p.set_defaults(j2=1, tau=1)

    p = sub.add_parser("verify", help="comparison-theorem suite")
    p.add_argument("--corpus", metavar="PATH", default=None, help="JSON corpus file")
    p.add_argument("--builtin", default="all", help="built-in selection: all or a name substring")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--config", metavar="PATH", default=None)
    return parser


def read_config(path: str) -> Dict[str, str]:
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {n}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.config:
        return args
    cfg = read_config(args.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    subparser = sub.choices[args.command]
    known = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, raw in cfg.items():
        if key not in known or key in ("help", "config"):
            raise UsageError(f"unknown config key {key!r}")
        act = known[key]
        if isinstance(act, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
            continue
        value = act.type(raw) if act.type else raw
        if act.choices and value not in act.choices:
            raise UsageError(f"config {key}: {raw!r} not in {list(act.choices)}")
        defaults[key] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def channel_from(args) -> Channel:
    try:
        return Channel(d=args.d, j2=args.j2, tau=args.tau, mode=SymmetryMode.parse(args.mode),
                       nu=args.nu, m=args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def potential_from(name: str, v: float, c: float = 0.0, a: float = 0.0) -> PotentialModel:
    if name == "oscillator":
        return Oscillator(v)
    if name == "linear":
        return Linear(v)
    if name == "coulomb":
        return Coulomb(v)
    if name == "shifted-coulomb":
        return ShiftedCoulomb(v, c)
    if name == "kratzer":
        return Kratzer(a, v, c)
    if name == "log":
        return Log(v)
    raise UsageError(f"unknown potential {name!r}")


def grid_from(args) -> Optional[RadialGrid]:
    if args.rmax is None:
        if args.npoints is not None:
            raise UsageError("--npoints needs --rmax")
        return None
    try:
        if args.npoints is None:
            return RadialGrid.with_spacing(args.rmax)
        return RadialGrid(DEFAULT_R_MIN, args.rmax, args.npoints)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def constants_for(args, ch: Channel):
    """(e1, P_linear) for the channel, recomputed unless paper values are requested."""
    paper = getattr(args, "use_paper_constants", False) and ch.L == 1 and ch.nu == 0
    if paper:
        return PAPER_E1, PAPER_P_LINEAR
    return None, None


def _e1(args, ch: Channel) -> float:
    e1, _ = constants_for(args, ch)
    return e1 if e1 is not None else log_e1(ch.L, ch.nu)


class _Out:
    """Text goes to stdout; CSV goes to --csv or stdout."""

    def __init__(self, args):
        self.path = getattr(args, "csv", None)

    def write_csv(self, rows: List[CsvRow]):
        text = ",".join(CSV_HEADER) + "\n" + "".join(r.line() + "\n" for r in rows)
        if self.path:
            with open(self.path, "w", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _gnuplot(csv_path: Optional[str], title: str, columns: Dict[str, int]):
    if not csv_path:
        raise UsageError("--gnuplot needs --csv")
    script = io.StringIO()
    script.write("set datafile separator ','\nset key autotitle columnhead\n")
    script.write(f"set title '{title}'\nset xlabel 'v'\nset ylabel 'E'\n")
    plots = [f"'{csv_path}' using 1:{col} with lines title '{name}'" for name, col in columns.items()]
    script.write("plot " + ", \\\n     ".join(plots) + "\n")
    with open(csv_path + ".gp", "w", newline="\n") as fh:
        fh.write(script.getvalue())


# commands


def cmd_spectrum(args) -> int:
    ch = channel_from(args)
    V = potential_from(args.potential, args.v, args.c, args.a)
    e1, P_lin = constants_for(args, ch)
    sol = energy(V, ch, method=args.method, grid=grid_from(args), tol=args.tol, e1=e1, P_linear=P_lin)
    print(f"E={sol.E:.6f}")
    if args.verbose:
        print(f"bracket=[{sol.bracket[0]:.12g}, {sol.bracket[1]:.12g}]")
        print(f"residual={sol.residual:.3e}")
        print(f"nodes={sol.nodes}")
        print(f"route={sol.branch_note}")
    if args.csv:
        _Out(args).write_csv([CsvRow(args.v, E_exact=sol.E if has_closed_form(V) and args.method != "oracle"
                                     else None,
                                     E_oracle=sol.E if args.method == "oracle" else None)])
    return EXIT_OK


def _region(name: str, v: float, ch: Channel, e1: Optional[float]):
    if name == "log":
        reg = log_spectral_region(v, ch, log_u1(ch, e1))
        return reg.E_lo, reg.E_hi
    return None, None


def _sweep_row(args, ch, v, outputs, grid, e1, P_lin) -> CsvRow:
    V = potential_from(args.potential, v, args.c, args.a)
    row = CsvRow(float(v))
    status = []
    try:
        row.region_lo, row.region_hi = _region(args.potential, v, ch, e1 if e1 is not None else _e1(args, ch))
    except (ValueError, DiracSpectraError):
        pass
    for out in outputs:
        try:
            if out == "exact":
                row.E_exact = energy(V, ch, method="exact", e1=e1, P_linear=P_lin).E
            elif out == "oracle":
                row.E_oracle = energy(V, ch, method="oracle", grid=grid, tol=args.tol, e1=e1).E
            elif out == "envelope":
                if args.potential != "log":
                    raise NotApplicable("envelope only for log")
                row.E_envelope = log_envelope_bound(v, ch).value
        except (NoDiscreteSpectrum, NoBoundState, DomainError):
            status.append(f"{out}:no-spectrum")
        except NotApplicable:
            status.append(f"{out}:n/a")
        except (NumericalFailure, DegenerateEnergy):
            status.append(f"{out}:failed")
    row.status = ";".join(status) if status else "ok"
    return row


def cmd_sweep(args) -> int:
    ch = channel_from(args)
    outputs = [o.strip() for o in args.outputs.split(",") if o.strip()]
    spec = SweepSpec(args.potential, ch, args.v_min, args.v_max, args.n_points, args.spacing, outputs)
    e1, P_lin = constants_for(args, ch)
    grid = grid_from(args)
    rows = [_sweep_row(args, ch, v, spec.outputs, grid, e1, P_lin) for v in spec.values()]
    _Out(args).write_csv(rows)
    if getattr(args, "gnuplot", False):
        cols = {name: 2 + OUTPUTS.index(name) for name in spec.outputs}
        _gnuplot(args.csv, f"{args.potential} sweep", cols)
    return EXIT_OK


def cmd_envelope(args) -> int:
    if args.potential != "log":
        raise UsageError("envelope is implemented for --potential log")
    ch = channel_from(args)
    bound = log_envelope_bound(args.v, ch)
    print(f"E_L={bound.value:.9g} ({bound.direction} bound)")
    if args.verbose:
        print(f"t_opt={bound.t_opt:.9g} q_opt={bound.q_opt:.9g}")
        print(f"convexity={bound.convexity_certificate.verdict}")
    return EXIT_OK


def cmd_regions(args) -> int:
    ch = channel_from(args)
    e1 = _e1(args, ch)
    u1 = log_u1(ch, e1)
    print(f"m={ch.m:g} L={ch.L:g} nu={ch.nu} e={e1:.9g}")
    print(f"u1={u1:.9g}")
    for sv in (1, -1):
        for sm in (1, -1):
            mu = sm * ch.m
            reg = log_spectral_region(sv, ch if sm == ch.s else ch.flipped(), u1)
            end = -mu + 0.0
            inner = f"u1/v{end:+g}" if end else "u1/v"
            cell = f"({end:g}, {inner})" if sv > 0 else f"({inner}, {end:g})"
            print(f"v{'>' if sv > 0 else '<'}0 mu={mu + 0.0:+g}: {cell}  at v={sv:+d}: ({reg.E_lo + 0.0:.9g}, {reg.E_hi + 0.0:.9g})")
    return EXIT_OK


def figure1_rows(e1: float, ch: Channel, n_points: int = 50, v_min: float = 0.05, v_max: float = 14.0,
                 oracle: bool = False) -> List[CsvRow]:
    """Exact and envelope energies for v ln r on a log grid, with a closing row at v = u1."""
    u1 = log_u1(ch, e1)
    vs = list(np.geomspace(v_min, v_max, n_points))
    if u1 > v_max:
        vs.append(u1)
    rows = []
    for v in vs:
        reg = log_spectral_region(v, ch, u1)
        E = log_energy(v, ch, e1, u1).E
        EL = log_envelope_bound(v, ch).value
        Eo = energy(Log(v), ch, method="oracle", e1=e1).E if oracle else None
        rows.append(CsvRow(float(v), E, Eo, EL, reg.E_lo, reg.E_hi, "ok" if EL <= E else "unordered"))
    return rows


def cmd_figure1(args) -> int:
    ch = channel_from(args)
    if ch.L != 1 or ch.nu != 0 or ch.s != 1:
        print("note: figure uses the channel given; the published curve is spin, L=1, nu=0", file=sys.stderr)
    rows = figure1_rows(_e1(args, ch), ch, args.n_points, args.v_min, args.v_max, args.oracle)
    _Out(args).write_csv(rows)
    if args.gnuplot:
        cols = {"E": 2, "E_L": 4}
        if args.oracle:
            cols["E_oracle"] = 3
        _gnuplot(args.csv, "log potential: exact and envelope", cols)
    return EXIT_OK if all(r.status == "ok" for r in rows) else EXIT_NUMERICAL


def load_corpus(path: str) -> List[CorpusCase]:
    """JSON list of {"name", "V1", "V2", "channels"}; potentials as {"potential", "v", "c", "a"}."""
    try:
        with open(path) as fh:
            data = json.load(fh)
        cases = []
        for item in data:
            pots = []
            for key in ("V1", "V2"):
                p = dict(item[key])
                pots.append(potential_from(p.pop("potential"), float(p.get("v", 1.0)),
                                           float(p.get("c", 0.0)), float(p.get("a", 0.0))))
            chans = tuple(Channel(d=c.get("d", 3), j2=c.get("j2", 1), tau=c.get("tau", 1),
                                  mode=SymmetryMode.parse(c.get("mode", "spin")), nu=c.get("nu", 0),
                                  m=c.get("m", 1.0)) for c in item["channels"])
            cases.append(CorpusCase(str(item.get("name", f"case{len(cases)}")), pots[0], pots[1], chans))
        return cases
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad corpus: {exc}") from exc


def _faulty_solver():
    """Test mode: a solver that misreports energies so the harness must flag it."""
    good = default_solver()

    def solve(V, ch):
        E = good(V, ch)
        return E + 1.0 if getattr(V, "v", 1.0) >= 2.0 or getattr(V, "c", 0.0) < 0 else E

    return solve


def cmd_verify(args) -> int:
    if args.corpus:
        cases = load_corpus(args.corpus)
    else:
        cases = builtin_corpus()
        if args.builtin != "all":
            cases = [c for c in cases if args.builtin in c.name]
            if not cases:
                raise UsageError(f"no built-in case matches {args.builtin!r}")
    solver = _faulty_solver() if args.inject_fault else None
    outcomes = run_corpus(cases, solver=solver, tol=args.tol)
    for o in outcomes:
        print(o.summary())
        if args.verbose and o.report is not None:
            for ch, E1, E2, margin in o.report.violations:
                print(f"  violation {ch} E1={E1:.9g} E2={E2:.9g} margin={margin:.3e}")
            for ch, why in o.report.skipped:
                print(f"  skipped {ch}: {why}")
    failed = sum(o.status == "FAIL" for o in outcomes)
    print(f"SUMMARY cases={len(outcomes)} pass={sum(o.status == 'PASS' for o in outcomes)} "
          f"fail={failed} not_comparable={sum(o.status == 'NOT-COMPARABLE' for o in outcomes)}")
    return EXIT_NUMERICAL if failed else EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "envelope": cmd_envelope,
    "regions": cmd_regions,
    "figure1": cmd_figure1,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoDiscreteSpectrum, NoBoundState) as exc:
        print(f"no discrete spectrum: {exc}", file=sys.stderr)
        return EXIT_NO_SPECTRUM
    except (DomainError, NotApplicable) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, DegenerateEnergy, DiracSpectraError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
