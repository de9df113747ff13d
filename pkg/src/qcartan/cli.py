"""Command line entry point: ``qcartan verify`` and ``qcartan eval``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on a
configuration error (reported before any check runs).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from typing import Optional

from .dsl import DSLError, Evaluator, parse
from .dual import DualError
from .ncalg import AlgebraError, Instance
from .qscalar import ScalarError, set_degree_cap
from .suites import SUITES, Context, build_suite, run_checks
from .wedge import dense16

REPORT_SCHEMA = "qcartan-report/1"
BUILTIN = "builtin:gl_q2"


class ConfigError(Exception):
    pass


def load_instance(spec: str) -> Instance:
    """A path to an instance JSON file, or ``builtin:gl_q2``."""
    try:
        if spec == BUILTIN:
            text = resources.files("qcartan").joinpath("data/gl_q2.json").read_text()
            return Instance.from_json(text)
        with open(spec, encoding="utf-8") as fh:
            return Instance.from_json(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read instance {spec!r}: {exc.strerror or exc}") from None
    except (ValueError, KeyError, TypeError, AlgebraError) as exc:
        raise ConfigError(f"invalid instance {spec!r}: {exc}") from None


def _parse_q(text: Optional[str]) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--q expects a rational number such as 2, -1 or 1/3, got {text!r}") from None


def _context(args) -> Context:
    if args.degree_cap is not None:
        if args.degree_cap < 1:
            raise ConfigError("--degree-cap must be positive")
        set_degree_cap(args.degree_cap)
    inst = load_instance(args.instance)
    if inst.frt is None:
        raise ConfigError("the instance has no FRT block; the calculus needs one")
    q = _parse_q(args.q)
    if q is not None and q == 0:
        raise ConfigError("q = 0 is not allowed")
    if q is not None and inst.q_value is not None:
        raise ConfigError(f"the instance is already specialized at q = {inst.q_value}")
    try:
        return Context(inst, q=q, normalization=args.normalization)
    except (DualError, AlgebraError, ScalarError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc)) from None


def _matrix_json(n: int, M: dict) -> list:
    return [[str(c) for c in row] for row in dense16(n, M)]


def _artifacts(name: str, ctx: Context) -> dict:
    if name != "braid":
        return {}
    br = ctx.braid
    return {
        "index_order": [[i + 1, j + 1] for i in range(ctx.n) for j in range(ctx.n)],
        "sigma": _matrix_json(ctx.n, br.sigma),
        "B": _matrix_json(ctx.n, br.B_f),
        "sigma_inverse": _matrix_json(ctx.n, br.B),
        "W2": _matrix_json(ctx.n, br.W(2)),
    }


def run_verify(args, out=None) -> int:
    out = out or sys.stdout
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    ctx = _context(args)
    suites = []
    for name in names:
        rows = run_checks(build_suite(name, ctx))
        suites.append({
            "name": name,
            "checks": [r.as_dict() for r in rows],
            "passed": sum(r.ok for r in rows),
            "failed": sum(not r.ok for r in rows),
            "artifacts": _artifacts(name, ctx),
        })
    total = sum(len(s["checks"]) for s in suites)
    failed = sum(s["failed"] for s in suites)
    report = {
        "schema": REPORT_SCHEMA,
        "instance": args.instance,
        "q": None if ctx.q is None else str(ctx.q),
        "normalization": args.normalization,
        "suites": suites,
        "summary": {"checks": total, "passed": total - failed, "failed": failed, "ok": failed == 0},
    }
    if args.report == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        out.write(format_text(report))
    return 0 if failed == 0 else 1


def format_text(report: dict) -> str:
    lines = [f"instance {report['instance']}  q={report['q'] or 'symbolic'}  "
             f"normalization={report['normalization']}"]
    for s in report["suites"]:
        lines.append(f"== {s['name']}: {s['passed']} passed, {s['failed']} failed")
        for row in s["checks"]:
            tag = "PASS" if row["status"] == "pass" else "FAIL"
            note = " (expected nonzero)" if row["expect"] == "nonzero" and tag == "PASS" else ""
            lines.append(f"{tag}  {row['check']}{note}  [{row['elapsed']:.3f}s]")
            if tag == "FAIL":
                if row["witness"]:
                    lines.append(f"      witness: {row['witness']}")
                lines.append(f"      lhs: {row['lhs']}")
                lines.append(f"      rhs: {row['rhs']}")
    sm = report["summary"]
    lines.append(f"total {sm['checks']} checks: {sm['passed']} passed, {sm['failed']} failed")
    return "\n".join(lines) + "\n"


def run_eval(args, out=None) -> int:
    out = out or sys.stdout
    ctx = _context(args)
    try:
        tree = parse(args.expr)
    except DSLError as exc:
        raise ConfigError(str(exc)) from None
    ev = Evaluator(ctx)
    try:
        value = ev.eval(tree)
    except (DSLError, DualError, AlgebraError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    out.write(f"{value}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcartan",
                                description="Exact checks for bicovariant calculi on GL_q(2)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--instance", default=BUILTIN,
                        help=f"instance JSON file (default {BUILTIN})")
        sp.add_argument("--q", default=None, help="specialize q to a rational number")
        sp.add_argument("--normalization", choices=("lambda", "raw"), default="lambda",
                        help="chi divided by q - 1/q (lambda) or not (raw)")
        sp.add_argument("--degree-cap", type=int, default=None,
                        help="maximum degree of numerators and denominators in q")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", default="all", help=f"all or one of: {', '.join(SUITES)}")
    v.add_argument("--report", choices=("text", "json"), default="text")

    e = sub.add_parser("eval", help="evaluate one expression")
    common(e)
    e.add_argument("expr", help="expression, e.g. 'bracket(t[1,1], omega[1,1])'")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return run_verify(args)
        return run_eval(args)
    except ConfigError as exc:
        print(f"qcartan: configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
