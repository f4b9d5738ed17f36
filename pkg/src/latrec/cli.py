"""Command-line front end.

Subcommands:

* ``solve   --config FILE [--out PATH] [--format csv|json]``
* ``verify  --config FILE [--tmax N] [--evaluator NAME]``
* ``demo random-walk --p R --d R --q R --steps N``
* ``demo heat --r R --steps N``
* ``expand  --config FILE --power J``

Exit codes: 0 success / no mismatch, 1 verification found mismatches,
2 usage or config error.  Output is deterministic: rows sorted
lexicographically by point, then time, all values in exact rational text.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .closed_form import closed_rows, closed_value
from .combinatorics import expand_stencil_power
from .config import ConfigError, RunConfig, load_config, spec_hash
from .exactnum import ParseError, format_rational, parse_rational
from .lattice import FieldRow, Point, SpecError
from .models import (HeatParams, RandomWalkParams, heat_profile, heat_spec,
                     random_walk_distribution, random_walk_spec)
from .oracle import (Mismatch, Region, VerifyReport, WindowOverflowError,
                     auto_window, oracle_evolve, oracle_sweep_implicit,
                     sweep_window, verify_closed_vs_oracle, pointwise_closed)

EVALUATORS = ("auto", "nd", "tridiagonal", "tridiagonal-j-n", "one-row",
              "ninepoint", "grid-2d", "two-row", "implicit")


def format_table(dim: int, rows: list[tuple[Point, int, Fraction]],
                 header_hash: str, out_format: str) -> str:
    """Serialize (point, time, value) rows; caller supplies sorted rows."""
    if out_format == "csv":
        lines = [f"# spec={header_hash}"]
        lines.append(",".join([f"e{i + 1}" for i in range(dim)] + ["t", "value"]))
        for p, t, v in rows:
            lines.append(",".join([str(c) for c in p] + [str(t), format_rational(v)]))
        return "\n".join(lines) + "\n"
    payload = {
        "spec": header_hash,
        "rows": [{"at": list(p), "t": t, "value": format_rational(v)}
                 for p, t, v in rows],
    }
    return json.dumps(payload, sort_keys=True) + "\n"


def parse_table_csv(text: str) -> list[tuple[Point, int, Fraction]]:
    """Inverse of the CSV table format (used by tests and downstream tools)."""
    rows = []
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    dim = len(header) - 2
    for ln in lines[1:]:
        cells = ln.split(",")
        point = tuple(int(c) for c in cells[:dim])
        rows.append((point, int(cells[dim]), parse_rational(cells[dim + 1])))
    return rows


def _oracle_values(config: RunConfig):
    """Callable (point, time) -> value backed by iterated rows."""
    spec, initial = config.spec, config.initial
    t_max = config.t_max
    if spec.implicit_corner:
        a, b, c = spec.corner_coefficients()
        psi = initial.rows[0]
        if not psi.values:
            return lambda p, t: Fraction(0)
        hi = max(p[0] for p, _ in config.query_points)
        window = config.window or sweep_window(psi, t_max, right_edge=hi)
        rows = oracle_sweep_implicit(a, b, c, psi, window, t_max)
        return lambda p, t: rows[t].get(p)
    extra = config.query.box if isinstance(config.query, Region) else None
    window = config.window or auto_window(spec, initial, t_max, extra=extra)
    rows = oracle_evolve(spec, initial, t_max, window)
    return lambda p, t: rows[t].get(p)


def _closed_values(config: RunConfig):
    spec, initial = config.spec, config.initial
    if spec.implicit_corner:
        return lambda p, t: closed_value(spec, initial, p, t)
    rows = closed_rows(spec, initial, config.t_max)
    return lambda p, t: rows[t].get(p)


def run(config: RunConfig) -> tuple[int, str]:
    """Execute a run; returns (exit status, emitted artifact text)."""
    if config.engine == "verify":
        return run_verify(config, "auto")
    getter = _closed_values(config) if config.engine == "closed" else _oracle_values(config)
    table = [(p, t, getter(p, t)) for p, t in config.query_points]
    return 0, format_table(config.spec.spatial_dim, table,
                           spec_hash(config.spec), config.out_format)


def run_verify(config: RunConfig, evaluator: str,
                t_max: int | None = None) -> tuple[int, str]:
    spec, initial = config.spec, config.initial
    if isinstance(config.query, Region):
        region = config.query
        if t_max is not None:
            region = Region(region.box, min(region.t_lo, t_max), t_max)
        report = verify_closed_vs_oracle(spec, initial, region,
                                         evaluator=evaluator, window=config.window)
    else:
        report = _verify_point_list(config, evaluator)
    lines = [f"# spec={spec_hash(spec)}", report.summary()]
    for m in report.mismatches:
        lines.append(f"mismatch at {m.point} t={m.time}: "
                     f"closed={format_rational(m.closed_value)} "
                     f"oracle={format_rational(m.oracle_value)}")
    return (0 if report.ok else 1), "\n".join(lines) + "\n"


def _verify_point_list(config: RunConfig, evaluator: str) -> VerifyReport:
    oracle_get = _oracle_values(config)
    if evaluator == "auto":
        closed_get = _closed_values(config)
    else:
        closed_get = pointwise_closed(config.spec, config.initial, evaluator)
    mismatches = []
    points = config.query_points
    for p, t in points:
        cv, ov = closed_get(p, t), oracle_get(p, t)
        if cv != ov:
            mismatches.append(Mismatch(p, t, cv, ov))
    return VerifyReport(len(points), tuple(mismatches), config.t_max)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _rational_flag(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _cmd_solve(args) -> int:
    config = load_config(args.config)
    if args.format:
        config = _with_format(config, args.format)
    if config.engine == "verify":
        # solve runs the engine from the config; verify configs fall through
        # to the verification path so the exit code stays meaningful.
        status, text = run_verify(config, "auto")
    else:
        status, text = run(config)
    _emit(text, args.out if args.out else config.out_path)
    return status


def _with_format(config: RunConfig, out_format: str) -> RunConfig:
    return RunConfig(config.spec, config.initial, config.query, config.engine,
                     out_format, config.out_path, config.window)


def _cmd_verify(args) -> int:
    config = load_config(args.config)
    status, text = run_verify(config, args.evaluator, t_max=args.tmax)
    _emit(text, args.out)
    return status


def _cmd_demo_random_walk(args) -> int:
    params = RandomWalkParams(args.p, args.d, args.q)
    table = []
    for j in range(args.steps + 1):
        for p, v in random_walk_distribution(params, j).sorted_items():
            table.append((p, j, v))
    table.sort()
    text = format_table(1, table, spec_hash(random_walk_spec(params)), args.format)
    _emit(text, args.out)
    return 0


def _cmd_demo_heat(args) -> int:
    params = HeatParams(args.r)
    if not params.stable:
        sys.stderr.write(f"note: r={args.r} exceeds 1/2; the update is "
                         f"unstable (no maximum principle)\n")
    rows = heat_profile(params, FieldRow.delta(1), args.steps)
    table = []
    for j, row in enumerate(rows):
        for p, v in row.sorted_items():
            table.append((p, j, v))
    table.sort()
    text = format_table(1, table, spec_hash(heat_spec(params)), args.format)
    _emit(text, args.out)
    return 0


def _cmd_expand(args) -> int:
    config = load_config(args.config)
    spec = config.spec
    terms = expand_stencil_power(spec, args.power)
    dim = spec.spatial_dim
    if args.format == "csv":
        lines = [f"# spec={spec_hash(spec)} power={args.power}"]
        lines.append(",".join([f"a{i + 1}" for i in range(dim)] + ["b", "coeff"]))
        for key in sorted(terms):
            lines.append(",".join([str(e) for e in key] + [format_rational(terms[key])]))
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "spec": spec_hash(spec),
            "power": args.power,
            "terms": [{"spatial_exponents": list(key[:dim]), "time_exponent": key[dim],
                       "coeff": format_rational(terms[key])}
                      for key in sorted(terms)],
        }
        text = json.dumps(payload, sort_keys=True) + "\n"
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latrec",
        description="Exact evaluation of linear partial difference equations: "
                    "closed-form sums cross-checked against direct iteration.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="evaluate the engine chosen by the config")
    p_solve.add_argument("--config", required=True)
    p_solve.add_argument("--out", default=None)
    p_solve.add_argument("--format", choices=("csv", "json"), default=None)
    p_solve.set_defaults(func=_cmd_solve)

    p_verify = sub.add_parser("verify", help="compare closed form against the oracle")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--tmax", type=int, default=None)
    p_verify.add_argument("--evaluator", choices=EVALUATORS, default="auto",
                          help="closed-form evaluator; 'tridiagonal-j-n' is the "
                               "known-inconsistent variant kept as a negative control")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_demo = sub.add_parser("demo", help="built-in model presets")
    demo_sub = p_demo.add_subparsers(dest="preset", required=True)

    p_walk = demo_sub.add_parser("random-walk")
    p_walk.add_argument("--p", type=_rational_flag, required=True)
    p_walk.add_argument("--d", type=_rational_flag, required=True)
    p_walk.add_argument("--q", type=_rational_flag, required=True)
    p_walk.add_argument("--steps", type=int, default=5)
    p_walk.add_argument("--out", default=None)
    p_walk.add_argument("--format", choices=("csv", "json"), default="csv")
    p_walk.set_defaults(func=_cmd_demo_random_walk)

    p_heat = demo_sub.add_parser("heat")
    p_heat.add_argument("--r", type=_rational_flag, required=True)
    p_heat.add_argument("--steps", type=int, default=5)
    p_heat.add_argument("--out", default=None)
    p_heat.add_argument("--format", choices=("csv", "json"), default="csv")
    p_heat.set_defaults(func=_cmd_demo_heat)

    p_expand = sub.add_parser("expand",
                              help="dump the collected terms of the stencil "
                                   "symbol raised to a power")
    p_expand.add_argument("--config", required=True)
    p_expand.add_argument("--power", type=int, required=True)
    p_expand.add_argument("--out", default=None)
    p_expand.add_argument("--format", choices=("csv", "json"), default="csv")
    p_expand.set_defaults(func=_cmd_expand)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SpecError, ParseError, WindowOverflowError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
