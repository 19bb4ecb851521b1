"""
Command-line entry point.

    olgrecycle <command> --scenario FILE [options]

Commands: validate, simulate, steady, thresholds, sweep, optimize, regimes.
Exit status is 0 on success, 1 for invalid input, 2 for numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
import warnings

from . import dynamics, optimize, policy, steady_state
from .errors import NumericError, ParameterError, RegimeError
from .params import PARAM_NAMES, in_bounds, interval_str, validate
from .scenario import Scenario, fmt, load_scenario

SWEEP_OUTPUTS = ("y_star", "u_star", "w_star", "h_star", "p_star", "dy_dbeta", "du_dbeta")
DEFAULT_REGIME_GRID = "0.001:1:1000"

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2


class UsageError(ParameterError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def dumps(obj) -> str:
    """JSON with every float rendered at 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise NumericError(f"cannot serialise non-finite value {obj!r}")
        return fmt(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_grid(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid must be from:to:steps, got {spec!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--grid must be from:to:steps, got {spec!r}") from None
    if steps < 2:
        raise UsageError(f"--grid needs steps >= 2, got {steps}")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError("--grid bounds must be finite")
    return [lo + (hi - lo) * i / (steps - 1) if i < steps - 1 else hi for i in range(steps)]


def _write_out(path: str, text: str) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except BaseException:
        if os.path.exists(path):
            os.remove(path)
        raise


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _scenario(args) -> Scenario:
    sc = load_scenario(args.scenario)
    changes = {}
    if args.tol is not None:
        if not (math.isfinite(args.tol) and args.tol > 0):
            raise ParameterError(f"--tol must be finite and > 0, got {args.tol!r}")
        changes["tol"] = args.tol
    if args.max_periods is not None:
        if args.max_periods < 0:
            raise ParameterError(f"--max-periods must be >= 0, got {args.max_periods}")
        changes["max_periods"] = args.max_periods
    if changes:
        sc = dataclasses.replace(sc, **changes)
    return sc


def cmd_validate(args, out):
    sc = _scenario(args)
    if args.json:
        d = sc.params.as_dict()
        d.update(k0=sc.k0, p0=sc.initial_pollution, max_periods=sc.max_periods, tol=sc.tol)
        out.write(dumps(d) + "\n")
    else:
        out.write(sc.to_text())


def cmd_simulate(args, out):
    sc = _scenario(args)
    traj = dynamics.simulate(sc.params, sc.k0, sc.initial_pollution, sc.max_periods, sc.tol)
    csv_text = traj.to_csv()
    residual = "inf" if math.isinf(traj.residual) else fmt(traj.residual)
    summary = f"converged={str(traj.converged).lower()} periods={traj.periods} residual={residual}"
    if args.out:
        _write_out(args.out, csv_text)
    if args.json:
        f = traj.final
        out.write(dumps({
            "converged": traj.converged,
            "periods": traj.periods,
            "residual": traj.residual if math.isfinite(traj.residual) else None,
            "final": {"t": f.t, "k": f.k, "P": f.pollution, "h": f.health, "y": f.y,
                      "w": f.wage, "R": f.interest, "c1": f.c_young, "s": f.savings},
        }) + "\n")
    elif args.out:
        out.write(summary + "\n")
    else:
        out.write(csv_text)
        sys.stderr.write(summary + "\n")


def cmd_steady(args, out):
    sc = _scenario(args)
    ss = steady_state.solve(sc.params)
    if ss.u_star is None:
        raise NumericError("old-age consumption is zero at tau = 1; welfare -inf")
    out.write(dumps(ss.as_dict()) + "\n")


def cmd_thresholds(args, out):
    sc = _scenario(args)
    out.write(dumps(policy.classify(sc.params).to_dict()) + "\n")


def _sweep_row(params, outputs):
    ss = None
    row = []
    for name in outputs:
        if name in ("dy_dbeta", "du_dbeta"):
            fn = policy.dy_dbeta if name == "dy_dbeta" else policy.du_dbeta
            row.append(fn(params, params.beta))
            continue
        if ss is None:
            ss = steady_state.solve(params)
        v = getattr(ss, name)
        if v is None:
            raise NumericError(f"{name} undefined at tau = 1")
        row.append(v)
    return row


def cmd_sweep(args, out):
    sc = _scenario(args)
    if not args.param:
        raise UsageError("sweep needs --param NAME")
    if args.param not in PARAM_NAMES:
        raise ParameterError(f"unknown sweep parameter {args.param!r}")
    if not args.grid:
        raise UsageError("sweep needs --grid from:to:steps")
    grid = parse_grid(args.grid)
    for v in (grid[0], grid[-1]):
        if not in_bounds(args.param, v):
            raise ParameterError(f"grid value {v!r} outside {args.param} range {interval_str(args.param)}")
    outputs = tuple(args.outputs.split(",")) if args.outputs else SWEEP_OUTPUTS
    bad = [o for o in outputs if o not in SWEEP_OUTPUTS]
    if bad:
        raise UsageError(f"unknown sweep output(s): {', '.join(bad)}")

    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for v in grid:
            params = validate(sc.params.replace(**{args.param: v}))
            rows.append((v, _sweep_row(params, outputs)))

    if args.json:
        text = dumps([{"value": v, **dict(zip(outputs, r))} for v, r in rows]) + "\n"
    else:
        text = _csv_text(("value",) + outputs, [[fmt(v)] + [fmt(x) for x in r] for v, r in rows])
    if args.out:
        _write_out(args.out, text)
    else:
        out.write(text)


def cmd_optimize(args, out):
    sc = _scenario(args)
    tol = args.tol if args.tol is not None else 1e-9
    out.write(dumps(optimize.audit(sc.params, tol)) + "\n")


def _bisect(f, lo, hi, tol=1e-14, max_iter=200):
    """Last point where ``f`` is False, given f(lo) False and f(hi) True."""
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def cmd_regimes(args, out):
    """Locate regime boundaries in tau from derivative signs at beta = 0.

    Welfare rises at beta = 0 past the first boundary and output rises past
    the second; bisection refines each sign change found on the grid.
    """
    sc = _scenario(args)
    grid = parse_grid(args.grid or DEFAULT_REGIME_GRID)
    for v in (grid[0], grid[-1]):
        if not in_bounds("tau", v):
            raise ParameterError(f"grid value {v!r} outside tau range {interval_str('tau')}")
    base = sc.params.replace(beta=0.0)

    def u_rises(t):
        return policy.slope_signs(base.replace(tau=t), 0.0)[1] > 0

    def y_rises(t):
        return policy.slope_signs(base.replace(tau=t), 0.0)[0] > 0

    def numeric_regime(t):
        return "III" if y_rises(t) else ("II" if u_rises(t) else "I")

    labels = [numeric_regime(t) for t in grid]
    found = {"u": None, "y": None}
    for key, test in (("u", u_rises), ("y", y_rises)):
        for a, b in zip(grid, grid[1:]):
            if not test(a) and test(b):
                found[key] = _bisect(test, a, b)
                break
    cut_u, cut_y = policy.tau_cutoff_u(base), policy.tau_cutoff_y(base)
    diffs = [abs(found[k] - c) for k, c in (("u", cut_u), ("y", cut_y)) if found[k] is not None]
    result = {
        "tau_cutoff_u": cut_u,
        "boundary_u": found["u"],
        "tau_cutoff_y": cut_y,
        "boundary_y": found["y"],
        "max_abs_diff": max(diffs) if diffs else None,
    }
    if args.out:
        rows = [[fmt(t), lab, policy.regime(base.replace(tau=t))] for t, lab in zip(grid, labels)]
        _write_out(args.out, _csv_text(("tau", "regime_numeric", "regime_analytic"), rows))
    if args.json:
        out.write(dumps(result) + "\n")
        return
    for name, key, cut in (("I|II", "u", cut_u), ("II|III", "y", cut_y)):
        b = found[key]
        if b is None:
            out.write(f"boundary={name} numeric=none analytic={fmt(cut)}\n")
        else:
            out.write(f"boundary={name} numeric={fmt(b)} analytic={fmt(cut)} abs_diff={fmt(abs(b - cut))}\n")


COMMANDS = {
    "validate": cmd_validate,
    "simulate": cmd_simulate,
    "steady": cmd_steady,
    "thresholds": cmd_thresholds,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "regimes": cmd_regimes,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--scenario", required=True, help="scenario file (name = value lines)")
    common.add_argument("--out", help="write CSV output to this path")
    common.add_argument("--tol", type=float, help="convergence / bracket tolerance")
    common.add_argument("--max-periods", type=int, dest="max_periods")
    common.add_argument("--grid", help="from:to:steps")
    common.add_argument("--param", help="parameter swept by 'sweep'")
    common.add_argument("--outputs", help="comma-separated sweep outputs")
    common.add_argument("--json", action="store_true", help="force JSON on stdout")

    parser = _Parser(prog="olgrecycle", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            COMMANDS[args.command](args, out)
        for w in caught:
            sys.stderr.write(f"warning: {w.message}\n")
        return EXIT_OK
    except ParameterError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (NumericError, RegimeError, ArithmeticError) as exc:
        sys.stderr.write(f"numeric error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
