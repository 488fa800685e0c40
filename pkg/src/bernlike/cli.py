"""Command-line front end.

Every subcommand writes a CSV table (or a JSON document) to stdout or to
``--out``. Exit codes: 0 success/pass, 1 failed check or numeric fault,
2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .basis_core import basis_grid
from .errors import BernlikeError, NotConvex, NotIncreasing
from .families import FamilySpec, alpha_family, classical_family, sq_family
from .functions import get_function
from .operators import (
    OperatorSample,
    convergence_table,
    gruss_voronovskaja_estimate,
    moment_direct,
    moment_recurrence,
    operator_grid,
    voronovskaja_estimate,
)
from .shape_analysis import (
    DataClass,
    DataVector,
    check_convex_image,
    check_monotone_image,
    check_monotonicity_preserving_basis,
    random_convex_data,
    random_increasing_data,
)

MOMENT_TOL = 1e-10


class UsageError(Exception):
    pass


# -- parsing helpers -------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sweep(text: str) -> List[float]:
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("sweep must look like START:STOP:STEP")
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("sweep needs STEP > 0 and STOP >= START")
    count = int(round((stop - start) / step))
    return [round(start + k * step, 12) for k in range(count + 1)]


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _family(args) -> FamilySpec:
    if args.family == "alpha":
        if not 0.0 <= args.alpha <= 1.0:
            raise UsageError("--alpha must lie in [0, 1]")
        return alpha_family(args.alpha)
    if args.family == "classical":
        return classical_family()
    if args.nu < 0:
        raise UsageError("--nu must be >= 0")
    return sq_family(args.nu)


def _check_grid(grid: int) -> int:
    if grid < 2:
        raise UsageError("--grid must be >= 2")
    return grid


def _check_degrees(degrees: Sequence[int], minimum: int = 1) -> List[int]:
    if not degrees or any(d < minimum for d in degrees):
        raise UsageError(f"degrees must be >= {minimum}")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise UsageError("degrees must be strictly increasing")
    return list(degrees)


def _function(name: str):
    try:
        return get_function(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))


def _config(args) -> dict:
    skip = {"func", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# -- output ----------------------------------------------------------------------

class Table:
    def __init__(self, columns: Sequence[str]):
        self.columns = list(columns)
        self.rows: List[list] = []

    def add(self, *row) -> None:
        self.rows.append(list(row))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()

    def to_json(self, config: dict) -> str:
        doc = {
            "version": __version__,
            "config": config,
            "columns": self.columns,
            "rows": [[_json_value(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"


def _json_value(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(args, table: Table) -> None:
    _emit(args, table.to_json(_config(args)) if args.format == "json" else table.to_csv())


# -- subcommands -----------------------------------------------------------------

def cmd_basis(args) -> int:
    grid = _check_grid(args.grid)
    n = _check_degrees([args.degree])[0]
    z = np.linspace(0.0, 1.0, grid)
    names = ["z"] + [f"F{i}" for i in range(n + 1)]
    if args.alpha_sweep:
        if args.family != "alpha":
            raise UsageError("--alpha-sweep requires --family alpha")
        if any(not 0.0 <= a <= 1.0 for a in args.alpha_sweep):
            raise UsageError("sweep values must lie in [0, 1]")
        table = Table(["alpha"] + names)
        for a in args.alpha_sweep:
            values = basis_grid(alpha_family(a), n, z)
            for t, row in zip(z, values):
                table.add(a, t, *row)
    else:
        values = basis_grid(_family(args), n, z)
        table = Table(names)
        for t, row in zip(z, values):
            table.add(t, *row)
    _emit_table(args, table)
    return 0


def cmd_operator(args) -> int:
    grid = _check_grid(args.grid)
    n = _check_degrees([args.degree])[0]
    fn = _function(args.fn)
    spec = _family(args)
    z = np.linspace(0.0, 1.0, grid)
    approx = operator_grid(OperatorSample.from_function(spec, n, fn.f), z)
    table = Table(["z", "f", "operator", "abserr"])
    for t, b in zip(z, approx):
        ft = fn.f(t)
        table.add(t, ft, b, abs(b - ft))
    _emit_table(args, table)
    return 0


def cmd_moments(args) -> int:
    grid = _check_grid(args.grid)
    n = args.degree
    if n < 2:
        raise UsageError("--degree must be >= 2 for the moment recurrence")
    if not 0.0 <= args.alpha <= 1.0:
        raise UsageError("--alpha must lie in [0, 1]")
    if any(p < 0 for p in args.powers):
        raise UsageError("powers must be >= 0")
    table = Table(["z", "p", "direct", "recurrence", "absdiff"])
    worst = 0.0
    for t in np.linspace(0.0, 1.0, grid):
        for p in args.powers:
            d = moment_direct(n, p, args.alpha, t).value
            r = moment_recurrence(n, p, args.alpha, t).value
            diff = abs(d - r)
            worst = max(worst, diff)
            table.add(t, p, d, r, diff)
    _emit_table(args, table)
    if worst > MOMENT_TOL:
        print(f"moment recurrence disagrees with direct sum by {worst:.3e}", file=sys.stderr)
        return 1
    return 0


def cmd_converge(args) -> int:
    grid = _check_grid(args.grid)
    degrees = _check_degrees(args.degrees)
    fn = _function(args.fn)
    table = Table(["n", "max_error"])
    for n, err in convergence_table(fn.f, _family(args), degrees, grid):
        table.add(n, err)
    _emit_table(args, table)
    return 0


def cmd_voronovskaja(args) -> int:
    degrees = _check_degrees(args.degrees, minimum=2)
    if not 0.0 < args.z < 1.0:
        raise UsageError("--z must lie in (0, 1)")
    spec = _family(args)
    f = _function(args.fn)
    if args.gruss:
        h = _function(args.h)
        est = gruss_voronovskaja_estimate(f.f, f.d1, h.f, h.d1, args.alpha, args.z, degrees, family=spec)
    else:
        est = voronovskaja_estimate(f.f, f.d2, args.alpha, args.z, degrees, family=spec)
    table = Table(["n", "estimate", "target", "abserr"])
    for n, e, err in zip(est.degree_sequence, est.estimates, est.abs_errors):
        table.add(n, e, est.target, err)
    _emit_table(args, table)
    return 0


def _read_data(path: str) -> List[float]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read data file: {exc}")
    try:
        values = [float(tok) for tok in text.split()]
    except ValueError as exc:
        raise UsageError(f"malformed data file: {exc}")
    if len(values) < 2 or not np.all(np.isfinite(values)):
        raise UsageError("data file needs at least two finite values")
    return values


def cmd_shape(args) -> int:
    grid = _check_grid(args.grid)
    spec = _family(args)
    check = args.check
    reports = []
    seed = None

    if check == "basis":
        if args.degree is None or args.degree < 2:
            raise UsageError("--check basis needs --degree >= 2")
        reports.append(check_monotonicity_preserving_basis(spec, args.degree, grid, args.tol))
    else:
        runner = check_monotone_image if check == "monotone" else check_convex_image
        kind = DataClass.INCREASING if check == "monotone" else DataClass.CONVEX
        if args.random:
            if args.degree is None or args.degree < 1:
                raise UsageError("--random needs --degree >= 1")
            seed = args.seed
            rng = np.random.default_rng(seed)
            make = random_increasing_data if check == "monotone" else random_convex_data
            data_sets = [make(rng, args.degree) for _ in range(args.random)]
        elif args.data:
            data_sets = [DataVector(_read_data(args.data), kind)]
        elif args.fn:
            if args.degree is None or args.degree < 1:
                raise UsageError("--fn needs --degree >= 1")
            fn = _function(args.fn)
            data_sets = [DataVector([fn.f(k / args.degree) for k in range(args.degree + 1)], kind)]
        else:
            raise UsageError("give one of --data, --fn or --random")
        try:
            for data in data_sets:
                reports.append(runner(spec, data, grid, args.tol))
        except (NotIncreasing, NotConvex) as exc:
            print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
            return 1

    worst = min(reports, key=lambda r: r.extremal_value)
    passed = all(r.passed for r in reports)
    doc = {
        "version": __version__,
        "config": _config(args),
        "seed": seed,
        "tolerance": worst.tolerance_used,
        "trials": len(reports),
        "failures": sum(not r.passed for r in reports),
        "report": worst.as_dict(),
    }
    doc["report"]["pass"] = passed
    _emit(args, json.dumps(doc, indent=2) + "\n")
    return 0 if passed else 1


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bernlike", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["alpha", "classical", "sq"], default="alpha")
    common.add_argument("--alpha", type=float, default=0.5)
    common.add_argument("--nu", type=float, default=0.5)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", metavar="PATH")

    p = sub.add_parser("basis", parents=[common], help="sample the basis on a grid")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--alpha-sweep", type=_sweep, metavar="START:STOP:STEP")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("operator", parents=[common], help="apply the operator to a named function")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--fn", "--f", dest="fn", default="exp")
    p.add_argument("--grid", type=int, default=1001)
    p.set_defaults(func=cmd_operator)

    p = sub.add_parser("moments", parents=[common], help="direct vs recurrence moments")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--powers", type=_int_list, default=[1, 2, 3])
    p.add_argument("--grid", type=int, default=11)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("converge", parents=[common], help="max-error convergence table")
    p.add_argument("--fn", "--f", dest="fn", default="exp")
    p.add_argument("--degrees", type=_int_list, required=True)
    p.add_argument("--grid", type=int, default=1001)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("voronovskaja", parents=[common], help="scaled residuals against their limits")
    p.add_argument("--fn", "--f", dest="fn", default="exp")
    p.add_argument("--h", default="exp")
    p.add_argument("--gruss", action="store_true")
    p.add_argument("--z", type=float, default=0.5)
    p.add_argument("--degrees", type=_int_list, default=[64, 128, 256, 512])
    p.set_defaults(func=cmd_voronovskaja)

    p = sub.add_parser("shape", parents=[common], help="shape-preservation checks (JSON report)")
    p.add_argument("--check", choices=["monotone", "convex", "basis"], required=True)
    p.add_argument("--data", metavar="FILE")
    p.add_argument("--fn", "--f", dest="fn")
    p.add_argument("--degree", type=int)
    p.add_argument("--random", type=int, default=0, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=1001)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_shape)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except BernlikeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
