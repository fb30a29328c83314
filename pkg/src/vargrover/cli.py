"""Command-line entry point: ``vargrover <command> [flags]``.

Exit status is 0 on success, 2 for an invalid configuration and 3 when a
numerical invariant is violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Dict, List, Optional, Sequence

from . import experiments
from .errors import InvariantViolation

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVARIANT = 3


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return ";".join(_fmt(v) for v in value)
    return str(value)


def to_csv(rows: List[Dict[str, object]]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(rows[0]))
        for row in rows:
            writer.writerow([_fmt(v) for v in row.values()])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def read_config(path: str) -> Dict[str, str]:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.lstrip("-").replace("-", "_")] = value
    return values


def _p_value(text: str):
    if text.strip().lower() == "auto":
        return "auto"
    return int(text)


def _flag(text) -> bool:
    if isinstance(text, bool):
        return text
    if str(text).lower() in ("1", "true", "yes", "on"):
        return True
    if str(text).lower() in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vargrover", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file; command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.add_argument("--config", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    def search(sp, hops=100):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--hops", type=int, default=hops)

    sp = sub.add_parser("grover", help="closed-form Grover baseline per qubit count")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=None)
    common(sp)

    sp = sub.add_parser("optimize", help="optimize one problem instance")
    sp.add_argument("--problem", type=int, choices=(1, 2, 3, 4), default=3)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--p", type=_p_value, default="auto")
    search(sp)
    common(sp)

    sp = sub.add_parser("table1", help="shared-angle improvement table for N = 8..64")
    search(sp)
    common(sp)

    sp = sub.add_parser("sweep", help="probability along the single angle of problem 2 or 3")
    sp.add_argument("--problem", type=int, choices=(2, 3), default=3)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--p", type=_p_value, default="auto")
    sp.add_argument("--resolution", type=int, default=10001)
    sp.add_argument("--full-period", type=_flag, nargs="?", const=True, default=False,
                    help="scan [0, 2pi] instead of [0, pi]")
    common(sp)

    sp = sub.add_parser("qubit-sweep", help="variational minus Grover at p_max for each n")
    sp.add_argument("--problem", type=int, choices=(1, 2, 3, 4), default=3)
    sp.add_argument("--n", type=int, default=2, help="first qubit count")
    sp.add_argument("--n-max", type=int, default=11)
    search(sp)
    common(sp)

    sp = sub.add_parser("noise-sweep", help="T1/T2 sweep of the compiled optimal schedule")
    sp.add_argument("--problem", type=int, choices=(1, 2, 3, 4), default=3)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--p", type=_p_value, default="auto")
    sp.add_argument("--omega", default=None, help="marked bitstring (default: all ones)")
    sp.add_argument("--t1-min", type=float, default=1e-6)
    sp.add_argument("--t1-max", type=float, default=1e-2)
    sp.add_argument("--t2-min", type=float, default=1e-6)
    sp.add_argument("--t2-max", type=float, default=1e-2)
    sp.add_argument("--grid-points", type=int, default=9)
    sp.add_argument("--duration-1q", type=float, default=50e-9)
    sp.add_argument("--duration-2q", type=float, default=150e-9)
    search(sp)
    common(sp)
    parser.subcommand_parsers = sub.choices
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            values = read_config(known.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
        commands = parser.subcommand_parsers
        known_keys = set().union(*({a.dest for a in sp._actions} for sp in commands.values()))
        bad = set(values) - known_keys
        if bad:
            parser.error(f"unknown config keys: {', '.join(sorted(bad))}")
        for sp in commands.values():
            dests = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: v for k, v in values.items() if k in dests})
    return parser.parse_args(argv)


def run(args: argparse.Namespace) -> str:
    cmd = args.command
    if cmd == "grover":
        rows = experiments.cmd_grover(args.n, args.n_max)
        return to_json(rows) if args.format == "json" else to_csv(rows)
    if cmd == "optimize":
        result, row = experiments.cmd_optimize(args.problem, args.n, args.p, hops=args.hops, seed=args.seed)
        if args.format == "json":
            return to_json({
                "problem": args.problem,
                "seed": args.seed,
                "hops": args.hops,
                "comparison": row.as_row(),
                "best_params": result.best_params,
                "best_cost": result.best_cost,
                "success_probability": result.success_probability,
                "evaluations": result.evaluations,
                "trace": result.trace,
            })
        return to_csv([row.as_row()])
    if cmd == "table1":
        rows = experiments.cmd_table1(hops=args.hops, seed=args.seed)
        return to_json(rows) if args.format == "json" else to_csv(rows)
    if cmd == "sweep":
        rows = experiments.cmd_sweep(args.problem, args.n, args.p, args.resolution, _flag(args.full_period))
        return to_json(rows) if args.format == "json" else to_csv(rows)
    if cmd == "qubit-sweep":
        rows = experiments.cmd_qubit_sweep(args.problem, args.n_max, args.n, hops=args.hops, seed=args.seed)
        return to_json(rows) if args.format == "json" else to_csv(rows)
    if cmd == "noise-sweep":
        rows, sweep = experiments.cmd_noise_sweep(
            n=args.n, problem=args.problem, p=args.p, omega=args.omega,
            t1_range=(args.t1_min, args.t1_max), t2_range=(args.t2_min, args.t2_max),
            grid_points=args.grid_points, duration_1q=args.duration_1q,
            duration_2q=args.duration_2q, hops=args.hops, seed=args.seed,
        )
        if args.format == "json":
            return to_json({
                "noiseless_probability": sweep.noiseless_probability,
                "grover_reference": sweep.reference_probability,
                "threshold": sweep.threshold,
                "flagged_fraction": sweep.flagged_fraction,
                "points": rows,
            })
        print(f"flagged {len(sweep.flagged)} of {sum(pt.physical for pt in sweep.points)} physical points",
              file=sys.stderr)
        return to_csv(rows)
    raise ValueError(f"unknown command {cmd!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = _apply_config(parser, argv)
    try:
        text = run(args)
    except InvariantViolation as exc:
        print(f"error: numerical invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
