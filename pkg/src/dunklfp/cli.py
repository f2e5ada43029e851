"""Command-line interface: tables, figure data, verification, evolution.

Exit codes: 0 success, 1 verification failure, 2 usage/config/IO error.
All outputs are CSV with deterministic formatting (12 significant digits,
exact p/q rationals where the quantities are rational), so repeated runs
are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .analytic import (describe, eval_descriptor, figure_descriptors,
                       format_number, generate_table1, generate_table2,
                       centrifugal_solution, oscillator_solution)
from .core import (DunklFPError, HalfLineGrid, Kind, Parity, ParityFunction,
                   Superpotential, make_params)
from .numeric import Scheme, build_sector_operator, decay_rate, evolve
from .numeric import lowest_eigenpairs
from .verification import run_suite

_PARITIES = {"even": Parity.EVEN, "odd": Parity.ODD}
_SCHEMES = {"backward_euler": Scheme.BACKWARD_EULER,
            "crank_nicolson": Scheme.CRANK_NICOLSON}


class ConfigError(DunklFPError, ValueError):
    pass


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        fh = open(path, "w", newline="\n")
        try:
            yield fh
        finally:
            fh.close()


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    with _output(args.out) as fh:
        if args.which == 1:
            fh.write("mu,sigma,even,odd\n")
            for row in generate_table1():
                fh.write(f"{format_number(row.mu)},{format_number(row.sigma)},"
                         f"{describe(row.even)},{describe(row.odd)}\n")
        else:
            parity = _PARITIES[args.parity]
            m = args.m if args.m is not None else (3 if parity is Parity.EVEN else 2)
            rows = generate_table2(m, parity)
            fh.write("n,power,c[0],c[1],c[2],c[3]\n")
            for row in rows:
                cells = [str(c) for c in row.coefficients]
                cells += [""] * (4 - len(cells))
                fh.write(f"{row.n},{row.power},{','.join(cells)}\n")
    return 0


# ---------------------------------------------------------------------------
# figure
# ---------------------------------------------------------------------------

def _figure_meta(which: str, meta: dict) -> str:
    pairs = ", ".join(f"{k}={format_number(v)}" for k, v in meta.items())
    extra = ""
    for key in ("alpha_e", "alpha_o"):
        if key in meta:
            extra = f" ({key} ~ {float(meta[key]):.6g})"
    return f"# figure {which}: {pairs}{extra}"


def cmd_figure(args) -> int:
    descriptors, meta = figure_descriptors(args.which)
    if args.full_line:
        half = np.linspace(args.xmax / args.points, args.xmax, args.points)
        xs = np.concatenate([-half[::-1], half])
    else:
        xs = np.linspace(args.xmax / args.points, args.xmax, args.points)
    curves = [eval_descriptor(d, xs) for d in descriptors]
    with _output(args.out) as fh:
        fh.write(_figure_meta(args.which, meta) + "\n")
        fh.write("# curves: " + " | ".join(describe(d) for d in descriptors) + "\n")
        fh.write("x," + ",".join(f"curve{i+1}" for i in range(len(curves))) + "\n")
        for i, x in enumerate(xs):
            vals = ",".join(f"{c[i]:.12g}" for c in curves)
            fh.write(f"{x:.12g},{vals}\n")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    ok = run_suite(args.suite, grid_n=args.grid, xmax=args.xmax,
                   inject_defect=args.inject_defect)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# evolve / spectrum configs
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {"problem", "parity", "a", "sigma", "mu", "gamma", "lambda",
                "n", "grid", "xmax", "dt", "steps", "scheme", "out", "k"}


@dataclass
class RunConfig:
    problem: str
    parity: Parity
    a: float
    mu: float
    grid: int
    xmax: float
    sigma: Optional[float] = None
    gamma: Optional[float] = None
    lam: Optional[float] = None
    n: Optional[int] = None
    dt: Optional[float] = None
    steps: Optional[int] = None
    scheme: Optional[Scheme] = None
    out: Optional[str] = None
    k: int = 4


def parse_run_config(path: str) -> RunConfig:
    raw = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
            if key in raw:
                raise ConfigError(f"{path}:{lineno}: duplicate key '{key}'")
            raw[key] = value

    def need(key):
        if key not in raw:
            raise ConfigError(f"{path}: missing required key '{key}'")
        return raw[key]

    def number(key, value):
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{path}: key '{key}' is not a number: '{value}'")

    problem = need("problem").lower()
    if problem not in ("centrifugal", "oscillator"):
        raise ConfigError(f"{path}: problem must be centrifugal or oscillator")
    parity_name = need("parity").lower()
    if parity_name not in _PARITIES:
        raise ConfigError(f"{path}: parity must be even or odd")
    cfg = RunConfig(problem=problem, parity=_PARITIES[parity_name],
                    a=number("a", need("a")), mu=number("mu", need("mu")),
                    grid=int(number("grid", need("grid"))),
                    xmax=number("xmax", need("xmax")))
    if cfg.grid <= 0 or cfg.xmax <= 0:
        raise ConfigError(f"{path}: grid and xmax must be positive")
    if problem == "centrifugal":
        cfg.sigma = number("sigma", need("sigma"))
        cfg.lam = number("lambda", need("lambda"))
        if "gamma" in raw:
            raise ConfigError(f"{path}: centrifugal runs take no gamma (CH derivative)")
    else:
        cfg.gamma = number("gamma", need("gamma"))
        cfg.n = int(number("n", need("n")))
        if "sigma" in raw:
            raise ConfigError(f"{path}: oscillator runs take no sigma (TP derivative)")
    if "dt" in raw:
        cfg.dt = number("dt", raw["dt"])
        if cfg.dt <= 0:
            raise ConfigError(f"{path}: dt must be positive")
    if "steps" in raw:
        cfg.steps = int(number("steps", raw["steps"]))
        if cfg.steps <= 0:
            raise ConfigError(f"{path}: steps must be positive")
    if "scheme" in raw:
        name = raw["scheme"].lower()
        if name not in _SCHEMES:
            raise ConfigError(f"{path}: scheme must be one of {sorted(_SCHEMES)}")
        cfg.scheme = _SCHEMES[name]
    cfg.out = raw.get("out")
    if "k" in raw:
        cfg.k = int(number("k", raw["k"]))
    return cfg


def _config_problem(cfg: RunConfig):
    """Operator and analytic (descriptor, lambda) for a parsed config."""
    import warnings
    from .core import SigmaBoundWarning
    grid = HalfLineGrid(cfg.grid, cfg.xmax)
    if cfg.problem == "centrifugal":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SigmaBoundWarning)
            params = make_params(Kind.CH, cfg.sigma, cfg.mu)
        s = Superpotential.centrifugal(cfg.a)
        d = centrifugal_solution(cfg.parity, cfg.a, cfg.sigma, cfg.mu, cfg.lam)
        lam = cfg.lam
    else:
        params = make_params(Kind.TP, None, cfg.mu, cfg.gamma)
        s = Superpotential.oscillator_centrifugal(cfg.a)
        d = oscillator_solution(cfg.parity, cfg.a, params, cfg.n)
        lam = float(d.lam)
    op = build_sector_operator(params, s, cfg.parity, grid)
    return grid, op, d, lam


def cmd_evolve(args) -> int:
    cfg = parse_run_config(args.config)
    for key in ("dt", "steps", "scheme"):
        if getattr(cfg, key) is None:
            raise ConfigError(f"{args.config}: missing required key '{key}'")
    grid, op, d, lam = _config_problem(cfg)
    psi = eval_descriptor(d, grid.nodes)
    peak = float(np.max(np.abs(psi)))
    if peak == 0.0:
        raise ConfigError(f"{args.config}: initial state vanishes on this grid")
    p0 = ParityFunction(grid, cfg.parity, psi / peak)
    store_every = max(1, cfg.steps // 100)
    if cfg.steps % store_every:
        store_every = 1
    traj = evolve(op, p0, cfg.dt, cfg.steps, cfg.scheme, store_every=store_every)
    out = args.out or cfg.out or "trajectory.csv"
    traj.write_csv(out)
    measured = decay_rate(traj, p0, weight_exponent=op.weight_exponent)
    rel = abs(measured - lam) / lam if lam else float("nan")
    print(f"initial state: {describe(d)}")
    print(f"lambda_measured={measured:.6g} lambda_analytic={lam:.6g} "
          f"rel_err={rel:.3g} trajectory={out}")
    return 0


def cmd_spectrum(args) -> int:
    cfg = parse_run_config(args.config)
    if cfg.problem != "oscillator":
        raise ConfigError(f"{args.config}: spectrum requires problem = oscillator")
    if args.grid:
        cfg.grid = args.grid
    if args.xmax:
        cfg.xmax = args.xmax
    k = args.k or cfg.k
    grid = HalfLineGrid(cfg.grid, cfg.xmax)
    params = make_params(Kind.TP, None, cfg.mu, cfg.gamma)
    s = Superpotential.oscillator_centrifugal(cfg.a)
    op = build_sector_operator(params, s, cfg.parity, grid)
    spacing = 4.0 * (1.0 - cfg.gamma) if cfg.parity is Parity.EVEN \
        else 4.0 * (1.0 + cfg.gamma)
    pairs = lowest_eigenpairs(op, k)
    print("n,lambda_numeric,lambda_analytic,rel_err")
    for j, (lam, _) in enumerate(pairs):
        analytic = j * spacing
        rel = abs(lam - analytic) / analytic if analytic else abs(lam)
        print(f"{j},{lam:.12g},{analytic:.12g},{rel:.3g}")
    return 0


# ---------------------------------------------------------------------------
# parser / entry points
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl-fp",
        description="Generalized Fokker-Planck equations with Dunkl-type "
                    "derivatives: tables, figure data, verification, evolution.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="write eigenfunction table 1 or 2 as CSV")
    p_table.add_argument("which", type=int, choices=(1, 2))
    p_table.add_argument("--m", type=int, default=None,
                         help="prefactor quantum number (table 2; default 3 even, 2 odd)")
    p_table.add_argument("--parity", choices=sorted(_PARITIES), default="even")
    p_table.add_argument("--out", default=None)
    p_table.set_defaults(func=cmd_table)

    p_fig = sub.add_parser("figure", help="sample figure curves as CSV")
    p_fig.add_argument("which", choices=("1a", "1b", "2a", "2b"))
    p_fig.add_argument("--points", type=int, default=1000)
    p_fig.add_argument("--xmax", type=float, default=10.0)
    p_fig.add_argument("--full-line", action="store_true",
                       help="extend to negative x via parity")
    p_fig.add_argument("--out", default=None)
    p_fig.set_defaults(func=cmd_figure)

    p_ver = sub.add_parser("verify", help="run property suites; exit 1 on failure")
    p_ver.add_argument("suite", choices=("algebra", "analytic", "numeric", "all"))
    p_ver.add_argument("--grid", type=int, default=4000)
    p_ver.add_argument("--xmax", type=float, default=12.0)
    p_ver.add_argument("--inject-defect", default=None, help=argparse.SUPPRESS)
    p_ver.set_defaults(func=cmd_verify)

    p_ev = sub.add_parser("evolve", help="evolve an analytic mode per config file")
    p_ev.add_argument("config")
    p_ev.add_argument("--out", default=None)
    p_ev.set_defaults(func=cmd_evolve)

    p_sp = sub.add_parser("spectrum", help="lowest eigenvalues vs 4n(1-/+gamma)")
    p_sp.add_argument("config")
    p_sp.add_argument("--k", type=int, default=None)
    p_sp.add_argument("--grid", type=int, default=None)
    p_sp.add_argument("--xmax", type=float, default=None)
    p_sp.set_defaults(func=cmd_spectrum)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DunklFPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
