"""Command-line front end. Every subcommand writes CSV to --out or stdout.

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import dispersion, inverse, lattice, shooting, stokes
from .errors import InvalidParameter, NumericalFailure
from .model import by_name

log = logging.getLogger("travelling_kinks")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


# --- CSV ---------------------------------------------------------------------

def format_value(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        return f"{x:.11e}"
    return str(x)


def write_csv(rows, schema, sink) -> None:
    """Header line, then one comma-separated line per row, '\\n' terminated.

    Floats use 12 significant digits in scientific notation; missing
    values are written as ``nan``.
    """
    lines = [",".join(schema)]
    for row in rows:
        if isinstance(row, dict):
            row = [row[c] for c in schema]
        row = list(row)
        if len(row) != len(schema):
            raise ValueError(f"row has {len(row)} fields, schema has {len(schema)}")
        lines.append(",".join(format_value(v) for v in row))
    sink.write("\n".join(lines) + "\n")


# --- argument parsing --------------------------------------------------------

class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    # show the default of every flag, including those without help text
    def _get_help_string(self, action):
        text = action.help or ""
        if action.default is not argparse.SUPPRESS and action.option_strings and "%(default)" not in text:
            text += " (default: %(default)s)"
        return text


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive(name):
    def conv(text):
        x = float(text)
        if not x > 0.0:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return x
    return conv


def _level(text):
    try:
        return shooting.resolve_level(text)
    except InvalidParameter as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_model(p):
    p.add_argument("--model", default="phi4", choices=["phi4", "sine-gordon", "inverse"],
                   help="nonlinearity")
    p.add_argument("--alpha", type=float, default=None, help="inverse model alpha (or give --s/--mu)")
    p.add_argument("--beta", type=float, default=None, help="inverse model beta (or give --s/--mu)")
    p.add_argument("--s", type=float, default=None, help="inverse-method speed; derives alpha, beta")
    p.add_argument("--mu", type=float, default=None, help="inverse-method width; derives alpha, beta")


def _add_shooting(p, level_default="zero"):
    _add_model(p)
    p.add_argument("--sigma-min", type=float, default=2.5, help="first sigma of the grid")
    p.add_argument("--sigma-max", type=float, default=8.0, help="last sigma of the grid")
    p.add_argument("--sigma-step", type=_positive("--sigma-step"), default=0.1, help="grid spacing")
    p.add_argument("--c0", type=_positive("--c0"), default=shooting.DEFAULT_C0,
                   help="offset from u- along the unstable direction")
    p.add_argument("--dt", type=_positive("--dt"), default=shooting.DEFAULT_DT, help="RK4 step")
    p.add_argument("--level", type=_level, default=level_default, help="number, or zero | pi | 2pi")
    p.add_argument("--t-max", type=_positive("--t-max"), default=shooting.DEFAULT_T_MAX,
                   help="integration horizon")
    p.add_argument("--threads", type=int, default=1, help="worker threads for the sigma scan")


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = _Parser(prog="travelling-kinks", description=__doc__, formatter_class=fmt)
    parser.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scan-k", help="split function K over a sigma grid", formatter_class=fmt)
    _add_shooting(p)

    p = sub.add_parser("find-kinks", help="bisected zeros of K(sigma)", formatter_class=fmt)
    _add_shooting(p, level_default="pi")
    p.add_argument("--ktol", type=_positive("--ktol"), default=1e-10, help="required |K| at an accepted zero")

    p = sub.add_parser("bifurcation", help="1:1 resonance curve h*(c)", formatter_class=fmt)
    p.add_argument("--n", type=int, default=100, help="number of interior samples of P in (0, pi/2)")

    p = sub.add_parser("quartic", help="classify the normal-form eigenvalues", formatter_class=fmt)
    p.add_argument("--gamma", type=float, required=True, help="gamma coefficient")
    p.add_argument("--tau", type=float, required=True, help="tau coefficient")

    p = sub.add_parser("dispersion-roots", help="imaginary-axis eigenvalues Lambda = 2iK", formatter_class=fmt)
    p.add_argument("--c", type=float, required=True, help="wave speed")
    p.add_argument("--h", type=float, required=True, help="lattice spacing")
    p.add_argument("--k-max", type=_positive("--k-max"), default=10.0, help="upper end of the K window")

    p = sub.add_parser("stokes", help="diagonal Stokes sequence b_n", formatter_class=fmt)
    p.add_argument("--n", type=int, default=100, help="highest index n")

    p = sub.add_parser("inverse-verify", help="exact-kink identities of the inverse method", formatter_class=fmt)
    p.add_argument("--s", type=_positive("--s"), default=0.8, help="kink speed")
    p.add_argument("--mu", type=_positive("--mu"), default=0.5, help="kink width parameter")
    p.add_argument("--gamma-s", type=float, default=-2.0, help="scaled gamma of the normal form")
    p.add_argument("--tau", type=float, default=1.0, help="tau of the normal form")
    p.add_argument("--z-max", type=_positive("--z-max"), default=10.0, help="half width of the z grid")
    p.add_argument("--points", type=int, default=401, help="grid points")

    p = sub.add_parser("lattice-sim", help="propagate the exact kink on the lattice", formatter_class=fmt)
    p.add_argument("--s", type=_positive("--s"), default=0.8, help="kink speed")
    p.add_argument("--mu", type=_positive("--mu"), default=0.5, help="kink width parameter")
    p.add_argument("--t-final", type=float, default=None, help="default 10 h / s")
    p.add_argument("--dt", type=float, default=None, help="default h / 50")
    p.add_argument("--sites", type=int, default=400, help="lattice sites")
    return parser


@dataclass
class RunConfig:
    command: str
    flags: dict = field(default_factory=dict)
    out: str = "-"


def parse(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(ns).items() if k not in ("command", "out", "verbose")}
    cfg = RunConfig(ns.command, flags, ns.out)
    _validate(cfg)
    if ns.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    return cfg


def _validate(cfg: RunConfig) -> None:
    f = cfg.flags
    if cfg.command in ("scan-k", "find-kinks"):
        if f["sigma_max"] < f["sigma_min"]:
            raise UsageError("--sigma-max must be >= --sigma-min")
        if f["threads"] < 1:
            raise UsageError("--threads must be >= 1")
        _model_from(f)
        # surfaces c0/dt range errors before any integration
        shooting.ShootingConfig(f["sigma_min"], f["c0"], f["dt"], f["level"], f["t_max"])
    elif cfg.command == "bifurcation" and f["n"] < 1:
        raise UsageError("--n must be >= 1")
    elif cfg.command == "stokes" and f["n"] < 0:
        raise UsageError("--n must be >= 0")
    elif cfg.command == "inverse-verify" and f["points"] < 1:
        raise UsageError("--points must be >= 1")
    elif cfg.command == "lattice-sim" and f["sites"] < 8:
        raise UsageError("--sites must be >= 8")


def _model_from(f):
    name = f["model"]
    if name != "inverse":
        if any(f[k] is not None for k in ("alpha", "beta", "s", "mu")):
            raise UsageError("--alpha/--beta/--s/--mu only apply to --model inverse")
        return by_name(name)
    if f["s"] is not None and f["mu"] is not None:
        return inverse.inverse_params(f["s"], f["mu"]).model
    if f["alpha"] is not None and f["beta"] is not None:
        return by_name(name, f["alpha"], f["beta"])
    raise UsageError("--model inverse needs --s and --mu, or --alpha and --beta")


# --- subcommands -------------------------------------------------------------

def _cmd_scan(f, sink):
    model = _model_from(f)
    grid = shooting.sigma_grid(f["sigma_min"], f["sigma_max"], f["sigma_step"])
    rows = shooting.scan(grid, f["c0"], f["dt"], f["level"], model, f["t_max"], f["threads"])
    write_csv([(r.sigma, r.t0, r.K) for r in rows], ["sigma", "t0", "K"], sink)


def _cmd_find(f, sink):
    model = _model_from(f)
    zeros = shooting.find_sigma_zeros(
        (f["sigma_min"], f["sigma_max"]), f["sigma_step"], f["c0"], f["dt"], f["level"], model,
        f["t_max"], f["threads"], ktol=f["ktol"],
    )
    write_csv([(z.sigma_star, z.bracket_lo, z.bracket_hi, z.K_residual, z.t0) for z in zeros],
              ["sigma_star", "bracket_lo", "bracket_hi", "K_residual", "t0"], sink)


def _cmd_bifurcation(f, sink):
    n = f["n"]
    rows = []
    for i in range(1, n + 1):
        bp = dispersion.bifurcation_point(0.5 * math.pi * i / (n + 1))
        rows.append((bp.P, bp.c, bp.h, math.sqrt(3.0) * (1.0 - bp.c**2), bp.asymptotic_ratio))
    write_csv(rows, ["P", "c", "h", "h_leading", "ratio"], sink)


def _cmd_quartic(f, sink):
    q = dispersion.classify_quartic(f["gamma"], f["tau"])
    row = [f["gamma"], f["tau"], q.label.value]
    schema = ["gamma", "tau", "label"]
    for i, r in enumerate(q.roots, 1):
        row += [r.real, r.imag]
        schema += [f"root{i}_re", f"root{i}_im"]
    write_csv([row], schema, sink)


def _cmd_dispersion(f, sink):
    roots = dispersion.imaginary_roots(f["c"], f["h"], f["k_max"])
    rows = [(K, 2.0 * K, abs(dispersion.eval_D(2j * K, f["c"], f["h"]))) for K in roots]
    write_csv(rows, ["K", "Lambda_imag", "abs_D"], sink)


def _cmd_stokes(f, sink):
    seq = stokes.b_sequence(f["n"])
    write_csv(list(enumerate(seq.b)), ["n", "b_n"], sink)


def _cmd_inverse(f, sink):
    p = inverse.inverse_params(f["s"], f["mu"])
    zeta = np.linspace(-f["z_max"], f["z_max"], f["points"])
    rows = [
        ("alpha", p.alpha), ("beta", p.beta), ("h2", p.h2),
        ("advance_delay_residual", inverse.advance_delay_residual(f["s"], f["mu"], zeta)),
    ]
    for i, m in enumerate(inverse.mu_s_roots(f["gamma_s"], f["tau"]), 1):
        rows.append((f"mu_s{i}", m))
        rows.append((f"normalform_residual{i}", inverse.normalform_residual(f["gamma_s"], f["tau"], m, zeta)))
    write_csv(rows, ["quantity", "value"], sink)


def _cmd_lattice(f, sink):
    p = inverse.inverse_params(f["s"], f["mu"])
    t_final = f["t_final"] if f["t_final"] is not None else 10.0 * p.h / f["s"]
    dt = f["dt"] if f["dt"] is not None else p.h / 50.0
    err = lattice.simulate_exact_kink(f["s"], f["mu"], t_final, dt, f["sites"])
    write_csv([(f["s"], f["mu"], p.h, t_final, dt, f["sites"], err)],
              ["s", "mu", "h", "t_final", "dt", "n_sites", "max_error"], sink)


COMMANDS = {
    "scan-k": _cmd_scan,
    "find-kinks": _cmd_find,
    "bifurcation": _cmd_bifurcation,
    "quartic": _cmd_quartic,
    "dispersion-roots": _cmd_dispersion,
    "stokes": _cmd_stokes,
    "inverse-verify": _cmd_inverse,
    "lattice-sim": _cmd_lattice,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse(argv)
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NUMERIC
    except InvalidParameter as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE

    buf = io.StringIO()
    try:
        COMMANDS[cfg.command](cfg.flags, buf)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NUMERIC
    except InvalidParameter as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (ArithmeticError, OverflowError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NUMERIC

    try:
        if cfg.out == "-":
            stdout.write(buf.getvalue())
        else:
            with open(cfg.out, "w", newline="\n") as fh:
                fh.write(buf.getvalue())
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(run())
