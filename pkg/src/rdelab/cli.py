"""``rde-lab`` command-line tool.

Exit codes:
    0  completed, every comparison exact
    1  a singularity or violated non-vanishing condition truncated the run
    2  malformed invocation or configuration
    3  a verification failed (mismatch, or a pattern that is not a symmetry)
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .campaign import horizon_steps, run_verify
from .closedform import GeneralSolution, forbidden_check, x_const_coeff
from .config import ConfigError, RunConfig, parse_initial_text
from .engine import iterate
from .errors import ConditionViolated, IncomparableBeyond, NotASymmetry, RationalSyntaxError
from .invariants import v_recurrence_residual, v_sequence
from .model import CoefficientSpec, ExponentPattern, format_rational, index_residue, parse_rational
from .output import FORMATS, RowWriter, approx
from .symmetry import constraint_check, verify_group_invariance

EXIT_OK = 0
EXIT_SINGULAR = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

VARIANTS = {"++": (1, 1), "+-": (1, -1), "-+": (-1, 1), "--": (-1, -1)}
_VARIANT_ALIASES = {"pp": "++", "pm": "+-", "mp": "-+", "mm": "--"}


class UsageError(Exception):
    pass


def _load_config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    updates = {}
    if getattr(args, "initial", None):
        updates["initial"] = parse_initial_text(args.initial)
    if getattr(args, "steps", None) is not None:
        if args.steps < 1:
            raise ConfigError("steps", "must be >= 1")
        updates["steps"] = args.steps
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if updates:
        cfg = RunConfig(**{**cfg.__dict__, **updates})
    return cfg


def cmd_iterate(args, out) -> int:
    cfg = _load_config(args)
    cfg.require("initial", "a", "b", "steps")
    traj = iterate(cfg.initial, cfg.a, cfg.b, cfg.steps)
    w = RowWriter(out, args.format, ["n", "x_n", "approx"])
    for pos, value in enumerate(traj.values):
        w.write(n=pos - 4, x_n=format_rational(value), approx=approx(value, args.float_digits))
    if traj.singularity is not None:
        reason = traj.singularity.reason.value
        if args.format == "csv":
            w.write(n=traj.singularity.index, x_n=f"singularity:{reason}")
        else:
            w.write(n=traj.singularity.index, singularity=reason)
        return EXIT_SINGULAR
    return EXIT_OK


def cmd_closed_form(args, out) -> int:
    cfg = _load_config(args)
    cfg.require("initial", "a", "b")
    if args.n is None:
        raise ConfigError("n", "missing (--n)")
    violations = forbidden_check(cfg.initial, cfg.a, cfg.b, args.n)
    if violations:
        for v in violations:
            print(f"violated: {v.description}", file=sys.stderr)
        return EXIT_SINGULAR
    sol = GeneralSolution(cfg.initial, cfg.a, cfg.b)
    w = RowWriter(out, args.format, ["n", "j", "index", "x_n", "approx"])
    pairs = [(args.n, args.j)] if args.j is not None else [(n, j) for n in range(args.n + 1) for j in range(4)]
    rows = []
    for n, j in pairs:
        k = 4 * n if j == 0 else 4 * n + j - 4
        rows.append((k, n, j, sol.value(n, j)))
    for k, n, j, value in sorted(rows):
        w.write(n=n, j=j, index=k, x_n=format_rational(value), approx=approx(value, args.float_digits))
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    cfg = _load_config(args)
    cfg.require("initial", "a", "b", "steps")
    traj = iterate(cfg.initial, cfg.a, cfg.b, cfg.steps)
    V = v_sequence(traj)
    w = RowWriter(out, args.format, ["n", "V_n", "residual", "approx"])
    for n in range(len(V)):
        residual = v_recurrence_residual(V, cfg.a, cfg.b, n) if n + 2 < len(V) else None
        w.write(
            n=n,
            V_n=format_rational(V[n]),
            residual=None if residual is None else format_rational(residual),
            approx=approx(V[n], args.float_digits),
        )
        if residual:
            return EXIT_MISMATCH
    return EXIT_SINGULAR if traj.singularity is not None else EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = _load_config(args)
    trials = args.trials if args.trials is not None else 100
    if trials < 1:
        raise ConfigError("trials", "must be >= 1")
    max_n = args.n if args.n is not None else 10
    if max_n < 0:
        raise ConfigError("n", "must be >= 0")
    seed = cfg.seed if cfg.seed is not None else 0
    outcomes = run_verify(trials, max_n, seed, fault=args.inject_fault)
    failures = [o for o in outcomes if not o.ok]
    checked = len(range(-3, horizon_steps(max_n) + 1))
    out.write(
        json.dumps({"seed": seed, "trials": trials, "max_n": max_n, "indices_per_trial": checked,
                    "failures": len(failures)}) + "\n"
    )
    if not failures:
        return EXIT_OK
    worst = min(failures, key=lambda o: (o.mismatches[0][0], o.trial))
    k, iterated, closed = worst.mismatches[0]
    dump = {
        "counterexample": worst.instance.to_json(),
        "trial": worst.trial,
        "index": k,
        "residue": list(index_residue(k)),
        "iterated": format_rational(iterated),
        "closed_form": None if closed is None else format_rational(closed),
    }
    out.write(json.dumps(dump) + "\n")
    return EXIT_MISMATCH


def cmd_symmetry(args, out) -> int:
    cfg = _load_config(args)
    cfg.require("initial", "a", "b")
    if args.pattern is None:
        raise ConfigError("pattern", "missing (--pattern)")
    try:
        pattern = ExponentPattern.parse(args.pattern)
    except ValueError as exc:
        raise ConfigError("pattern", str(exc)) from None
    t = parse_rational(args.t) if args.t is not None else Fraction(2)
    if t == 0:
        raise ConfigError("t", "must be nonzero")
    steps = cfg.steps or 40
    classification = "accepted" if constraint_check(pattern) else "NotASymmetry"
    try:
        report = verify_group_invariance(cfg.initial, cfg.a, cfg.b, pattern, t, steps)
    except NotASymmetry as exc:
        report = exc.report
    except IncomparableBeyond as exc:
        out.write(json.dumps({"pattern": str(pattern), "t": format_rational(t),
                              "classification": classification, "incomparable_beyond": exc.index}) + "\n")
        return EXIT_SINGULAR
    out.write(json.dumps({
        "pattern": str(pattern),
        "t": format_rational(t),
        "classification": classification,
        "compared": len(report.residuals),
        "all_zero": report.ok,
        "first_failure": report.first_failure,
    }) + "\n")
    return EXIT_OK if report.ok and report.accepted else EXIT_MISMATCH


def _variant(text: str) -> str:
    text = text.replace("−", "-")
    text = _VARIANT_ALIASES.get(text, text)
    if text not in VARIANTS:
        raise ConfigError("variant", f"expected one of {', '.join(VARIANTS)}; got {text!r}")
    return text


def cmd_preset(args, out) -> int:
    if args.variant is None:
        raise ConfigError("variant", "missing (--variant)")
    variant = _variant(args.variant)
    a, b = VARIANTS[variant]
    cfg = _load_config(args)
    cfg.require("initial")
    steps = cfg.steps or 20
    ic = cfg.initial
    traj = iterate(ic, CoefficientSpec.constant(a), CoefficientSpec.constant(b), steps)
    horizon = traj.last_index
    try:
        closed = {}
        for k in range(-3, horizon + 1):
            n, j = index_residue(k)
            closed[k] = x_const_coeff(ic, a, b, n, j)
    except ConditionViolated as exc:
        print(f"violated: {exc.description}", file=sys.stderr)
        closed = None
    w = RowWriter(out, args.format, ["n", "x_n", "closed_form", "approx"])
    mismatch = False
    for k in range(-4, horizon + 1):
        x = traj.x(k)
        c = x if k == -4 else (closed or {}).get(k)
        if closed is not None and c != x:
            mismatch = True
        w.write(n=k, x_n=format_rational(x), closed_form=None if c is None else format_rational(c),
                approx=approx(x, args.float_digits))
    if mismatch:
        return EXIT_MISMATCH
    if traj.singularity is not None or closed is None:
        if traj.singularity is not None:
            reason = traj.singularity.reason.value
            if args.format == "csv":
                w.write(n=traj.singularity.index, x_n=f"singularity:{reason}")
            else:
                w.write(n=traj.singularity.index, singularity=reason)
        return EXIT_SINGULAR
    return EXIT_OK


COMMANDS = {
    "iterate": cmd_iterate,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
    "invariants": cmd_invariants,
    "symmetry": cmd_symmetry,
    "preset": cmd_preset,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="JSON run configuration")
    common.add_argument("--initial", metavar="X4,X3,X2,X1,X0", help="override the five seeds x_-4..x_0")
    common.add_argument("--steps", type=int, metavar="N")
    common.add_argument("--n", type=int, metavar="N")
    common.add_argument("--j", type=int, choices=range(4), metavar="0..3")
    common.add_argument("--pattern", metavar="a,b,c,d")
    common.add_argument("--t", metavar="p/q")
    common.add_argument("--trials", type=int, metavar="T")
    common.add_argument("--seed", type=int, metavar="S")
    common.add_argument("--variant", metavar="{++,+-,-+,--}", help="preset variant; write --variant=-+")
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--float-digits", type=int, default=12, metavar="D")
    common.add_argument("--output", metavar="FILE")
    common.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    parser = _Parser(prog="rde-lab", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.float_digits < 0:
            raise ConfigError("float-digits", "must be >= 0")
        with contextlib.ExitStack() as stack:
            out = sys.stdout
            if args.output:
                out = stack.enter_context(open(args.output, "w", encoding="utf-8", newline=""))
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"rde-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, RationalSyntaxError) as exc:
        print(f"rde-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
