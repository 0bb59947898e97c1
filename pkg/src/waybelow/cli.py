"""The ``wbk`` command line.

Exit codes: 0 when the relation holds (or a campaign has no failures),
1 when it fails, 2 for malformed input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .campaigns import VERIFIERS, run_campaign
from .cuntz import cuntz_certificate
from .ideals import ideal_compactly_contained
from .instances import Instance, load
from .order import way_below_directed, way_below_literal
from .region import (
    compactly_contained,
    exhaustion_capture,
    is_compact,
    is_subset,
    relative_closure,
)
from .render import render

CHECK_KINDS = ("region-ll", "cuntz-ll", "poset-ll", "ideal-ll")
CAPTURE_LIMIT = 64


class UsageError(Exception):
    pass


def _region_certificate(u, v, k) -> dict:
    verdict = compactly_contained(u, v, k)
    cl = relative_closure(u, k)
    cert = {
        "closure_U": cl.to_json(),
        "closure_compact": is_compact(cl),
        "closure_inside_V": is_subset(cl, v),
    }
    if is_compact(k):
        cert["exhaustion_capture"] = exhaustion_capture(u, v, k, CAPTURE_LIMIT)
    return {"verdict": verdict, "certificate": cert}


def check(kind: str, inst: Instance) -> tuple[bool, dict]:
    if inst.kind != kind:
        raise UsageError(f"input holds a {inst.kind} instance, expected {kind}")
    if kind == "region-ll":
        out = _region_certificate(inst["U"], inst["V"], inst["K"])
        return out["verdict"], out
    if kind == "cuntz-ll":
        cert = cuntz_certificate(inst["a"], inst["b"], inst.get("K"))
        return cert["way_below"], {"verdict": cert["way_below"], "certificate": cert}
    if kind == "poset-ll":
        p, x, y = inst["poset"], inst["x"], inst["y"]
        p.check(x, y)
        lit, dirs = way_below_literal(p, x, y), way_below_directed(p, x, y)
        return dirs, {"verdict": {"literal": lit, "directed": dirs}, "x": x, "y": y}
    i, j = inst["I"], inst["J"]
    verdict = ideal_compactly_contained(i, j)
    out = _region_certificate(i.carrier, j.carrier, i.ambient)
    out["verdict"] = verdict
    return verdict, out


def _headline(kind: str, out: dict) -> str:
    if kind == "poset-ll":
        v = out["verdict"]
        return f"literal {str(v['literal']).lower()} / directed {str(v['directed']).lower()}"
    return str(out["verdict"]).lower()


def cmd_check(args) -> int:
    inst = load(args.input)
    holds, out = check(args.kind, inst)
    print(_headline(args.kind, out))
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0 if holds else 1


def cmd_verify(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    report = run_campaign(args.theorem, args.count, args.seed, args.jobs)
    text = report.dumps()
    if args.output:
        Path(args.output).write_text(text + "\n")
    print(f"{args.theorem}: {report.passed}/{report.count} passed")
    print(text)
    return 0 if report.failed == 0 else 1


def cmd_render(args) -> int:
    inst = load(args.input)
    data = render(inst, args.format)
    Path(args.output).write_text(data)
    print(f"wrote {args.output}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wbk", description="Exact deciders for compact containment and way-below.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide one instance and print a certificate")
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a seeded verification campaign")
    p.add_argument("theorem", choices=sorted(VERIFIERS))
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", help="also write the report JSON here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw an instance as SVG or sample it as CSV")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=("svg", "csv"), default="svg")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, UsageError, IndexError, OSError) as exc:
        print(f"wbk: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
