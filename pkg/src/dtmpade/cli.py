"""Command-line front end.

Subcommands: series, solve, shoot, profile, compare. Every emitted result
embeds the fully resolved run manifest, and re-running a manifest through
execute() reproduces the result, which is what makes output files
self-describing. Exit codes are a contract: 0 success, 1 check failure,
2 usage/precondition, 3 numerical non-convergence, 4 degenerate
approximant.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .dtm import Problem, ProblemParams, RecurrenceMode, generate
from .errors import (
    BlowUpError,
    DegenerateApproximantError,
    NonConvergenceError,
)
from .rootfind import ClosureConfig, solve_problem
from .series import evaluate as series_evaluate
from .series import differentiate
from .shooting import Profile, ShootConfig, shoot_solve, tabulate_profile

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3
EXIT_DEGENERATE = 4

# golden coefficients of the published order-6 series at A = B = 1,
# kept as exact rationals and evaluated at runtime
GOLDEN_F = [Fraction(0), Fraction(0), Fraction(1, 2), Fraction(-1, 6),
            Fraction(-1, 24), Fraction(1, 48), Fraction(-7, 720)]
GOLDEN_THETA = [Fraction(1), Fraction(1), Fraction(0), Fraction(0),
                Fraction(-1, 8), Fraction(1, 40), Fraction(1, 240)]


class UsageError(Exception):
    pass


def _problem(name: str) -> Problem:
    try:
        return Problem(name)
    except ValueError:
        raise UsageError(f"unknown problem {name!r}")


def _mode(name: str) -> RecurrenceMode:
    try:
        return RecurrenceMode(name)
    except ValueError:
        raise UsageError(f"unknown mode {name!r}")


def parse_grid(spec: str) -> list[float]:
    """Parse 'start:end:step' into an inclusive grid (half-step end tolerance)."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:end:step, got {spec!r}")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"grid values must be numeric, got {spec!r}")
    if step <= 0 or end < start:
        raise UsageError("grid needs end >= start and step > 0")
    grid = []
    x = start
    while x <= end + 0.5 * step:
        grid.append(round(x, 12))
        x += step
    if grid[-1] > end + 0.5 * step:
        grid.pop()
    return grid


def parse_guess(spec: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in spec.split(","))
    except ValueError:
        raise UsageError(f"guess must be comma-separated reals, got {spec!r}")


# ---------------------------------------------------------------- execution

def execute(manifest: dict) -> dict:
    """Run the computation a manifest describes. Pure function of the manifest."""
    sub = manifest["subcommand"]
    if sub == "series":
        return _exec_series(manifest)
    if sub == "solve":
        return _exec_solve(manifest)
    if sub == "shoot":
        return _exec_shoot(manifest)
    if sub == "profile":
        return _exec_profile(manifest)
    if sub == "compare":
        return _exec_compare(manifest)
    raise UsageError(f"unknown subcommand {sub!r}")


def _exec_series(m: dict) -> dict:
    sol = generate(ProblemParams(
        problem=_problem(m["problem"]), pr=m["pr"], a=m["a"], b=m["b"],
        order=m["order"], mode=_mode(m["mode"]),
    ))
    theta = list(sol.theta_series.coeffs) if sol.theta_series is not None else None
    return {"f_coeffs": list(sol.f_series.coeffs), "theta_coeffs": theta}


def _solver_cfg(m: dict) -> ClosureConfig:
    return ClosureConfig(
        pade_degree=m["pade"], series_order=m.get("order"),
        tol=m["tol"], max_iter=m["max_iter"],
    )


def _exec_solve(m: dict) -> dict:
    res = solve_problem(
        _problem(m["problem"]), m["pr"], _solver_cfg(m),
        x0=m["guess"], mode=_mode(m["mode"]),
    )
    return {"a": res.a, "b": res.b, "residual_norm": res.residual_norm,
            "iterations": res.iterations}


def _exec_shoot(m: dict) -> dict:
    cfg = ShootConfig(eta_max=m["eta_max"], step=m["step"], tol=m["tol"],
                      max_iter=m["max_iter"])
    res = shoot_solve(m["pr"], cfg, x0=m["guess"], problem=_problem(m["problem"]))
    return {"a": res.a, "b": res.b, "residual_norm": res.residual_norm,
            "iterations": res.iterations}


def _series_profile_rows(m: dict, grid: list[float]) -> list[list[float]]:
    sol = generate(ProblemParams(
        problem=_problem(m["problem"]), pr=m["pr"], a=m["a"], b=m["b"],
        order=m["order"], mode=_mode(m["mode"]),
    ))
    fp = differentiate(sol.f_series, 1)
    rows = []
    for eta in grid:
        theta = (series_evaluate(sol.theta_series, eta)
                 if sol.theta_series is not None else float("nan"))
        rows.append([eta, series_evaluate(sol.f_series, eta),
                     series_evaluate(fp, eta), theta])
    return rows


def _integrator_profile_rows(m: dict, grid: list[float]) -> list[list[float]]:
    cfg = ShootConfig(eta_max=m["eta_max"], step=m["step"], tol=m["tol"],
                      max_iter=m["max_iter"])
    prof = tabulate_profile(m["a"], m["b"], m["pr"], grid, cfg,
                            problem=_problem(m["problem"]))
    return [list(row) for row in prof.rows]


def _exec_profile(m: dict) -> dict:
    grid = parse_grid(m["grid"])
    source = m["source"]
    if source == "series":
        return {"columns": ["eta", "f", "fprime", "theta"],
                "rows": _series_profile_rows(m, grid)}
    if source == "integrator":
        return {"columns": ["eta", "f", "fprime", "theta"],
                "rows": _integrator_profile_rows(m, grid)}
    if source == "both":
        s_rows = _series_profile_rows(m, grid)
        i_rows = _integrator_profile_rows(m, grid)
        rows = [s + i[1:] for s, i in zip(s_rows, i_rows)]
        return {"columns": ["eta", "f_series", "fprime_series", "theta_series",
                            "f_integrator", "fprime_integrator", "theta_integrator"],
                "rows": rows}
    raise UsageError(f"unknown profile source {source!r}")


def _exec_compare(m: dict) -> dict:
    problem = _problem(m["problem"])
    shoot_cfg = ShootConfig(eta_max=m["eta_max"], step=m["step"],
                            tol=m["shoot_tol"], max_iter=m["max_iter"])
    oracle = shoot_solve(m["pr"], shoot_cfg, problem=problem)
    rows = []
    for n in m["pade"]:
        sub = dict(m, pade=n, order=None)
        res = solve_problem(problem, m["pr"], _solver_cfg(sub),
                            x0=m["guess"], mode=_mode(m["mode"]))
        row = {"pade_degree": n, "a": res.a, "a_oracle": oracle.a,
               "delta_a": abs(res.a - oracle.a)}
        if res.b is not None and oracle.b is not None:
            row.update(b=res.b, b_oracle=oracle.b, delta_b=abs(res.b - oracle.b))
        rows.append(row)
    return {"oracle": {"a": oracle.a, "b": oracle.b}, "rows": rows}


# ----------------------------------------------------------------- emission

def _fmt(x, digits: int) -> str:
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return str(x)


def emit(manifest: dict, result: dict, stream) -> None:
    fmt = manifest["format"]
    if fmt == "json":
        json.dump({"manifest": manifest, "result": result}, stream, indent=2)
        stream.write("\n")
    elif fmt == "csv":
        _emit_csv(manifest, result, stream)
    else:
        _emit_table(manifest, result, stream)


def _tabular(result: dict) -> tuple[list[str], list[list]]:
    """Coerce any result payload into (header, rows) for csv/table output."""
    if "rows" in result and "columns" in result:
        return list(result["columns"]), [list(r) for r in result["rows"]]
    if "rows" in result:  # compare: list of dicts sharing keys
        header = list(result["rows"][0].keys())
        return header, [[r.get(h) for h in header] for r in result["rows"]]
    if "f_coeffs" in result:
        header = ["k", "f_coeff"]
        rows = [[k, c] for k, c in enumerate(result["f_coeffs"])]
        if result.get("theta_coeffs") is not None:
            header.append("theta_coeff")
            for row, c in zip(rows, result["theta_coeffs"]):
                row.append(c)
        return header, rows
    header = list(result.keys())
    return header, [[result[h] for h in header]]


def _emit_csv(manifest: dict, result: dict, stream) -> None:
    digits = manifest["digits"]
    for key, value in manifest.items():
        stream.write(f"# {key}={value}\n")
    header, rows = _tabular(result)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v, digits) for v in row])


def _emit_table(manifest: dict, result: dict, stream) -> None:
    digits = manifest["digits"]
    stream.write(f"dtmpade {__version__} :: {manifest['subcommand']}\n")
    settings = ", ".join(f"{k}={v}" for k, v in manifest.items()
                         if k not in ("subcommand", "format", "digits", "version"))
    stream.write(f"  [{settings}]\n")
    header, rows = _tabular(result)
    cells = [header] + [[_fmt(v, digits) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    for r in cells:
        stream.write("  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + "\n")


# -------------------------------------------------------------------- argv

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", default="free-convection",
                   choices=["free-convection", "blasius"])
    p.add_argument("--pr", type=float, default=1.0, help="Prandtl number")
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])
    p.add_argument("--digits", type=int, default=10,
                   help="significant digits in emitted numbers")
    p.add_argument("--out", default=None, help="write output to this path")
    p.add_argument("--config", default=None,
                   help="key=value file supplying defaults; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtmpade")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("series", help="print the recurrence coefficients")
    _add_common(p)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--mode", default="corrected", choices=["corrected", "paper"])
    p.add_argument("--a", type=float, default=1.0, help="f''(0)")
    p.add_argument("--b", type=float, default=1.0, help="theta'(0)")
    p.add_argument("--check-paper", action="store_true",
                   help="verify the published order-6 coefficients at A=B=1")

    p = subs.add_parser("solve", help="determine (A, B) from the infinity conditions")
    _add_common(p)
    p.add_argument("--pade", type=int, default=3, help="diagonal degree n")
    p.add_argument("--order", type=int, default=None,
                   help="series truncation (derived from the degree when omitted)")
    p.add_argument("--mode", default="corrected", choices=["corrected", "paper"])
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--guess", type=parse_guess, default=None, help="a,b starting point")

    p = subs.add_parser("shoot", help="independent shooting-method oracle")
    _add_common(p)
    p.add_argument("--eta-max", type=float, default=8.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--guess", type=parse_guess, default=None)

    p = subs.add_parser("profile", help="tabulate (eta, f, f', theta) on a grid")
    _add_common(p)
    p.add_argument("--source", default="integrator",
                   choices=["series", "integrator", "both"])
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--grid", default="0:1:0.1")
    p.add_argument("--order", type=int, default=12, help="series order for --source series")
    p.add_argument("--mode", default="corrected", choices=["corrected", "paper"])
    p.add_argument("--eta-max", type=float, default=8.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=50)

    p = subs.add_parser("compare", help="DTM-Pade roots against the shooting oracle")
    _add_common(p)
    p.add_argument("--pade", type=lambda s: [int(v) for v in s.split(",")],
                   default=[3], help="diagonal degree(s), comma separated")
    p.add_argument("--mode", default="corrected", choices=["corrected", "paper"])
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--shoot-tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--eta-max", type=float, default=8.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--guess", type=parse_guess, default=None)
    return parser


def _load_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"config line is not key=value: {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _preapply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Install config-file values as subparser defaults before parsing.

    Parser-level defaults lose to explicitly supplied flags, which gives the
    documented precedence (flags win) for free.
    """
    path = None
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
    if path is None:
        return
    sub = next((t for t in argv if not t.startswith("-")), None)
    sp = None
    for action in parser._subparsers._group_actions:
        sp = action.choices.get(sub)
        if sp is not None:
            break
    if sp is None:
        return
    actions = {a.dest: a for a in sp._actions}
    defaults = {}
    for key, raw in _load_config(path).items():
        action = actions.get(key)
        if action is None:
            raise UsageError(f"config key {key!r} is not a flag of {sub!r}")
        defaults[key] = action.type(raw) if action.type is not None else raw
    sp.set_defaults(**defaults)


def _manifest(args: argparse.Namespace) -> dict:
    skip = {"out", "config", "check_paper"}
    m = {"subcommand": args.subcommand, "version": __version__}
    for key, value in sorted(vars(args).items()):
        if key in skip or key == "subcommand":
            continue
        m[key] = value
    if m.get("guess") is not None:
        m["guess"] = tuple(m["guess"])
    return m


def _check_paper() -> int:
    result = _exec_series({"problem": "free-convection", "pr": 1.0, "a": 1.0,
                           "b": 1.0, "order": 6, "mode": "paper"})
    ok = True
    for label, got, want in (("f", result["f_coeffs"], GOLDEN_F),
                             ("theta", result["theta_coeffs"], GOLDEN_THETA)):
        for k, (g, w) in enumerate(zip(got, want)):
            if abs(g - float(w)) > 1e-14:
                print(f"MISMATCH {label}({k}): got {g!r}, expected {w}", file=sys.stderr)
                ok = False
    print("paper series check:", "ok" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def run(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        _preapply_config(parser, argv)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "series" and args.check_paper:
            return _check_paper()
        manifest = _manifest(args)
        result = execute(manifest)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergenceError, BlowUpError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, NonConvergenceError) and exc.last_iterate is not None:
            print(f"  last iterate: {exc.last_iterate}, residual norm "
                  f"{exc.residual_norm:.3e}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except DegenerateApproximantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

    if args.out:
        buf = io.StringIO()
        emit(manifest, result, buf)
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        emit(manifest, result, sys.stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
