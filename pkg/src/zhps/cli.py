"""Command-line front end: ``zhps {translate,simplify,verify,eval,selfcheck}``.

Exit codes: 0 success (or Equal), 1 NotProven, 2 Unequal, 3 usage or
input errors, 4 oracle cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Union

import numpy as np

from .circuits import (Circuit, CircuitParseError, circuit_to_diagram, circuit_to_pathsum,
                       parse_circuit)
from .diagram import Diagram, normalize
from .oracle import Mode, OracleCapExceeded
from .pathsum import PurePathSum
from .rules.pathsum_rules import RuleError
from .rules.strategy import DEFAULT_POLICY, DIAGRAM_POLICY, simplify, simplify_diagram
from .selfcheck import format_report, run_selfcheck
from .translate import TranslationError, pathsum_to_zh, zh_to_pathsum
from .verify import evaluate, verify

EXIT_USAGE = 3
EXIT_CAP = 4

Operand = Union[Circuit, Diagram, PurePathSum]


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2, which would read as an Unequal verdict
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load(path: str, kind: str = "auto") -> Operand:
    """Read a circuit (gate list), a diagram JSON or a path-sum JSON."""
    try:
        with open(path) as f:
            text = f.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    if kind == "auto":
        stripped = text.lstrip()
        if not stripped.startswith("{"):
            kind = "circuit"
        else:
            kind = "json"
    if kind == "circuit":
        try:
            return parse_circuit(text)
        except CircuitParseError as exc:
            raise InputError(f"{path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if kind == "json":
        kind = "pathsum" if "terms" in obj or "vars" in obj else "zh"
    try:
        if kind == "pathsum":
            return PurePathSum.from_json(obj)
        if kind == "zh":
            return Diagram.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not a valid {kind} document ({exc})") from None
    raise InputError(f"unknown input kind {kind!r}")


def to_diagram(x: Operand) -> Diagram:
    if isinstance(x, Circuit):
        return normalize(circuit_to_diagram(x))
    if isinstance(x, PurePathSum):
        return pathsum_to_zh(x)
    return x


def to_pathsum(x: Operand, inexact: bool = False) -> PurePathSum:
    if isinstance(x, PurePathSum):
        return x
    if isinstance(x, Circuit):
        return circuit_to_pathsum(x)
    return zh_to_pathsum(to_diagram(x), inexact=inexact)


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w") as f:
            f.write(text if text.endswith("\n") else text + "\n")


def _size(x: Operand) -> str:
    if isinstance(x, PurePathSum):
        return f"{x.num_vars} variables, {len(x.phi)} terms"
    return f"{len(x.spiders)} spiders, {len(x.hboxes)} H-boxes"


# -- commands --------------------------------------------------------------------

def cmd_translate(args) -> int:
    x = load(args.input, "auto" if args.source in (None, "auto") else args.source)
    if args.target == "zh":
        out: Operand = to_diagram(x)
    else:
        out = to_pathsum(x, inexact=args.inexact)
    _write(args.out, json.dumps(out.to_json(), indent=2))
    if args.dot:
        _write(args.dot, to_diagram(out).to_dot())
    return 0


def cmd_simplify(args) -> int:
    x = load(args.input)
    if args.engine == "pathsum":
        before = to_pathsum(x)
        after, trace = simplify(before, args.policy.split(",") if args.policy else None)
    else:
        before = to_diagram(x)
        after, trace = simplify_diagram(before, args.policy.split(",") if args.policy else None)
    print(f"before: {_size(before)}", file=sys.stderr)
    print(f"after:  {_size(after)} ({len(trace)} steps)", file=sys.stderr)
    _write(args.out, json.dumps(after.to_json(), indent=2))
    if args.trace:
        _write(args.trace, json.dumps(trace.to_json(), indent=2))
    if args.dot:
        _write(args.dot, to_diagram(after).to_dot())
    return 0


def _verify_pair(a_path: str, b_path: str, mode: str, cap: Optional[int], engine: str,
                 use_oracle: bool) -> dict:
    a, b = load(a_path), load(b_path)
    v = verify(a, b, mode, cap, engine, use_oracle)
    out = v.to_json()
    out.update({"a": a_path, "b": b_path, "exit": v.exit_code})
    return out


def _report(res: dict, show_trace: bool) -> str:
    line = f"{res['status']} ({res['method']})"
    if "witness" in res:
        line += f": entry {tuple(res['witness'])} differs by {res['max_abs_diff']:.3g}"
    if show_trace:
        line += "\n" + json.dumps(res["trace"])
    return line


def cmd_verify(args) -> int:
    if args.batch:
        pairs = []
        with open(args.batch) as f:
            for lineno, line in enumerate(f, 1):
                line = line.split("#", 1)[0].split()
                if not line:
                    continue
                if len(line) != 2:
                    raise InputError(f"{args.batch}: line {lineno}: expected two paths")
                base = os.path.dirname(args.batch)
                pairs.append([os.path.join(base, p) for p in line])
        jobs = [(a, b, args.mode, args.oracle_cap, args.engine, not args.no_oracle) for a, b in pairs]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_verify_star, jobs))
        else:
            results = [_verify_star(j) for j in jobs]
        for r in results:
            print(f"{r['a']}\t{r['b']}\t{_report(r, False)}")
        return max((r["exit"] for r in results), default=0)
    if not (args.a and args.b):
        raise InputError("verify needs two inputs (or --batch FILE)")
    res = _verify_pair(args.a, args.b, args.mode, args.oracle_cap, args.engine, not args.no_oracle)
    print(_report(res, args.show_trace))
    if args.json:
        _write(args.json, json.dumps(res, indent=2))
    return res["exit"]


def _verify_star(job) -> dict:
    return _verify_pair(*job)


def _fmt(z: complex) -> str:
    re = 0.0 if abs(z.real) < 1e-12 else z.real
    im = 0.0 if abs(z.imag) < 1e-12 else z.imag
    return f"{re:.12g}{im:+.12g}j"


def cmd_eval(args) -> int:
    x = load(args.input)
    m = evaluate(x, args.oracle_cap)
    if args.format == "json":
        rows = [[[_clean(z.real), _clean(z.imag)] for z in row] for row in m]
        _write(args.out, json.dumps(rows))
    else:
        _write(args.out, "\n".join("\t".join(_fmt(z) for z in row) for row in m))
    return 0


def _clean(v: float) -> float:
    return 0.0 if abs(v) < 1e-12 else round(v, 12)


def cmd_selfcheck(args) -> int:
    only = args.only.split(",") if args.only else None
    results = run_selfcheck(args.seed, args.cases, only=only)
    print(format_report(results))
    return 0 if all(r.ok for r in results) else 2


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zhps", description=(
        "Translate, simplify and verify Toffoli+Hadamard circuits as ZH-diagrams and path-sums."))
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("translate", help="convert between circuit, zh and pathsum forms")
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--from", dest="source", choices=["auto", "circuit", "zh", "pathsum"], default="auto")
    t.add_argument("--to", dest="target", choices=["zh", "pathsum"], required=True)
    t.add_argument("--out", default="-")
    t.add_argument("--dot", help="also write a Graphviz view of the diagram")
    t.add_argument("--inexact", action="store_true",
                   help="accept unit-modulus complex labels as float phases")
    t.set_defaults(func=cmd_translate)

    s = sub.add_parser("simplify", help="rewrite to a fixpoint")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--engine", choices=["pathsum", "diagram"], default="pathsum")
    s.add_argument("--policy", help="comma-separated rule order (pathsum: %s; diagram: %s)"
                   % (",".join(DEFAULT_POLICY), ",".join(DIAGRAM_POLICY)))
    s.add_argument("--out", default="-")
    s.add_argument("--trace")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_simplify)

    v = sub.add_parser("verify", help="check two inputs denote the same map")
    v.add_argument("a", nargs="?")
    v.add_argument("b", nargs="?")
    v.add_argument("--mode", choices=[m.value for m in Mode], default="exact")
    v.add_argument("--engine", choices=["pathsum", "diagram"], default="pathsum")
    v.add_argument("--oracle-cap", type=int, default=None)
    v.add_argument("--no-oracle", action="store_true", help="rewriting only")
    v.add_argument("--batch", help="file with one 'A B' pair per line")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--show-trace", action="store_true")
    v.add_argument("--json", help="write the verdict as JSON")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="print the dense matrix")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--format", choices=["tsv", "json"], default="tsv")
    e.add_argument("--oracle-cap", type=int, default=None)
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("selfcheck", help="randomized soundness sweep of every rule")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--cases", type=int, default=100)
    c.add_argument("--only", help="comma-separated check names")
    c.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, TranslationError, RuleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
