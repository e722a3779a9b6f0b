"""Command line entry point: ``symkdv {run,sweep,verify,count-invariants}``.

Options may also come from a ``key = value`` file passed with ``--config``;
keys are the long option names without dashes (``newton-tol`` or
``newton_tol``). Command-line flags take precedence over the file.
"""

from __future__ import annotations

import argparse
import sys
import warnings

import numpy as np

from .errors import RankDeficientWarning
from .experiments import RunSpec, run, sweep
from .schemes import SchemeKind
from .stencil import Stencil, random_stencils, take
from .symmetry import invariant_count, z_matrix
from .verify import certify


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with default options")
    common.add_argument("--scheme", choices=[k.value for k in SchemeKind],
                        default=SchemeKind.UNIFORM_EVOLUTIVE.value)
    common.add_argument("--t0", type=float, default=1.0)
    common.add_argument("--tau", type=float, default=0.1)
    common.add_argument("--h0", type=float, default=0.1)
    common.add_argument("--x0", type=float, default=-1.0)
    common.add_argument("--nodes", type=int, default=21)
    common.add_argument("--steps", type=int, default=10)
    common.add_argument("--sweep", choices=["tau", "h0"])
    common.add_argument("--values", type=_floats, default=[])
    common.add_argument("--out", help="output path prefix for CSV and plot files")
    common.add_argument("--newton-tol", type=float, default=1e-12)
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="symkdv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parser.commands = {
        "run": sub.add_parser("run", parents=[common], help="integrate u = -x/t and report errors"),
        "sweep": sub.add_parser("sweep", parents=[common], help="error versus tau or h0"),
        "verify": sub.add_parser("verify", parents=[common],
                                 help="certify invariance and exactness"),
    }
    p = parser.commands["count-invariants"] = sub.add_parser("count-invariants", parents=[common],
                       help="rank of the symmetry matrix and number of invariants")
    p.add_argument("--stencil", type=_floats,
                   help="14 comma-separated coordinates x,t,u,xh_mm..xh_pp,th,uh_mm..uh_pp")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        sub = parser.commands[args.command]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, value in cfg.items():
            if key not in known:
                raise SystemExit(f"unknown config key: {key}")
            conv = known[key].type
            defaults[key] = conv(value) if conv else value
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def _spec(args) -> RunSpec:
    return RunSpec(scheme=args.scheme, t0=args.t0, tau=args.tau, h0=args.h0, x0=args.x0,
                   nodes=args.nodes, steps=args.steps, sweep=args.sweep,
                   values=tuple(args.values), out=args.out, newton_tol=args.newton_tol)


def cmd_run(args) -> int:
    report = run(_spec(args))
    for m, e in enumerate(report.errors):
        print(f"layer {m:4d}  linf error {e:.6e}")
    print(f"final linf error {report.final_error:.6e}")
    for f in report.files:
        print(f"wrote {f}")
    if report.failure:
        print(f"run aborted: {report.failure}", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    if args.sweep is None:
        print("sweep: --sweep {tau,h0} is required", file=sys.stderr)
        return 2
    try:
        report = sweep(_spec(args))
    except ValueError as exc:
        print(f"sweep: {exc}", file=sys.stderr)
        return 2
    print(f"{args.sweep:>12}  final linf error")
    for v, e, fail in report.table:
        print(f"{v:12.6g}  {e:.6e}" + (f"  ({fail})" if fail else ""))
    if report.exact_regime:
        print("exact regime: all errors at round-off level")
    elif report.slope is not None:
        print(f"log-log slope {report.slope:.4f}")
    for f in report.files:
        print(f"wrote {f}")
    return 1 if report.failure else 0


def cmd_verify(args) -> int:
    checks = certify(seed=args.seed)
    width = max(len(c.name) for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}")
    return 0 if all(c.passed for c in checks) else 1


def cmd_count(args) -> int:
    if args.stencil:
        if len(args.stencil) != 14:
            print("count-invariants: --stencil needs 14 values", file=sys.stderr)
            return 2
        z = Stencil(*args.stencil)
    else:
        z = take(random_stencils(np.random.default_rng(args.seed), 1), 0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficientWarning)
        res = invariant_count(z)
    np.set_printoptions(precision=4, suppress=True, linewidth=140)
    print(z_matrix(z))
    print(f"rank Z = {res.rank}")
    print(f"alpha  = {res.alpha}" + ("" if res.generic else "  (non-generic stencil)"))
    return 0 if res.generic else 1


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "verify": cmd_verify,
            "count-invariants": cmd_count}


def main(argv=None) -> int:
    args = parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
