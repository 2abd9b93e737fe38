"""Command-line interface.

Exit codes: 0 success (or equal), 1 unequal or suite failure, 2 usage
errors, 3 parse or type errors.  Subcommands print nothing on success
except the artifact they were asked for.
"""

from __future__ import annotations

import argparse
import sys

from ..errors import ParseError, TapecalcError, TypeCheckError
from ..interp import eval_tape
from ..objects import normalize
from ..suites import (SuiteBounds, axiom_suite, coherence_suite, lemma_suite,
                      sem_eq)
from ..tape import type_of_tape
from .parser import parse_module, parse_object_expr
from .render import render_svg
from .surface import elaborate

EXIT_OK = 0
EXIT_UNEQUAL = 1
EXIT_USAGE = 2
EXIT_BAD_INPUT = 3


class _Argparser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Argparser(prog="tapecalc",
                        description="tape diagrams with exact matrix semantics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and type every definition")
    p.add_argument("file")

    p = sub.add_parser("normalize", help="normalize an object expression")
    p.add_argument("expr")

    p = sub.add_parser("eval", help="evaluate a definition to a matrix")
    p.add_argument("file")
    p.add_argument("--term", required=True)
    p.add_argument("--interp", required=True)

    p = sub.add_parser("eq", help="decide semantic equality of two definitions")
    p.add_argument("file")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--interp", required=True)

    p = sub.add_parser("suite", help="run the axiom and lemma suites")
    p.add_argument("file")
    p.add_argument("--interp", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", action="append", default=[],
                   metavar="KEY=N",
                   help="override a bound: sorts, mono, poly, carrier, "
                        "samples, tuples")

    p = sub.add_parser("render", help="render a definition to SVG")
    p.add_argument("file")
    p.add_argument("--term", required=True)
    p.add_argument("-o", "--output", required=True)
    return parser


def load_module(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        sys.exit(EXIT_USAGE)
    return parse_module(text)


def parse_bounds(pairs: list[str]) -> SuiteBounds:
    keys = {"sorts": "sorts", "mono": "mono_len", "poly": "poly_len",
            "carrier": "carrier", "samples": "samples", "tuples": "max_tuples"}
    values = {}
    for pair in pairs:
        key, _, num = pair.partition("=")
        if key not in keys or not num.isdigit():
            raise ParseError(f"bad bound {pair!r}; use KEY=N with KEY in "
                             f"{sorted(keys)}")
        values[keys[key]] = int(num)
    return SuiteBounds(**values)


def cmd_check(args) -> int:
    module = load_module(args.file)
    sig = module.signature()
    for name, body in module.defs.items():
        try:
            type_of_tape(elaborate(body, module, sig), sig)
        except TypeCheckError as exc:
            sys.stderr.write(f"error: definition {name}: {exc}\n")
            return EXIT_BAD_INPUT
    for check in module.checks:
        interp = module.interpretation(check.interp)
        lhs = elaborate(module.defs[check.left], module, interp.sig)
        rhs = elaborate(module.defs[check.right], module, interp.sig)
        result = sem_eq(lhs, rhs, interp)
        if result.kind == "type-error":
            sys.stderr.write(
                f"error: check {check.left} = {check.right}: {result.message}\n")
            return EXIT_BAD_INPUT
        if not result.equal:
            y, x, a, b = result.witness
            sys.stdout.write(
                f"check {check.left} = {check.right} with {check.interp}: "
                f"unequal at entry ({y},{x}): {a} vs {b}\n")
            return EXIT_UNEQUAL
    return EXIT_OK


def cmd_normalize(args) -> int:
    term, sorts = parse_object_expr(args.expr)
    sys.stdout.write(str(normalize(term, sorts)) + "\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    module = load_module(args.file)
    interp = module.interpretation(args.interp)
    body = module.defs.get(args.term)
    if body is None:
        sys.stderr.write(f"error: no definition named {args.term}\n")
        return EXIT_BAD_INPUT
    tape = elaborate(body, module, interp.sig)
    type_of_tape(tape, interp.sig)
    sys.stdout.write(eval_tape(tape, interp).pretty() + "\n")
    return EXIT_OK


def cmd_eq(args) -> int:
    module = load_module(args.file)
    interp = module.interpretation(args.interp)
    for name in (args.left, args.right):
        if name not in module.defs:
            sys.stderr.write(f"error: no definition named {name}\n")
            return EXIT_BAD_INPUT
    lhs = elaborate(module.defs[args.left], module, interp.sig)
    rhs = elaborate(module.defs[args.right], module, interp.sig)
    result = sem_eq(lhs, rhs, interp)
    if result.kind == "type-error":
        sys.stderr.write(f"error: {result.message}\n")
        return EXIT_BAD_INPUT
    if result.equal:
        return EXIT_OK
    y, x, a, b = result.witness
    sys.stdout.write(f"unequal at entry ({y},{x}): left={a} right={b}\n")
    return EXIT_UNEQUAL


def cmd_suite(args) -> int:
    module = load_module(args.file)
    interp = module.interpretation(args.interp)
    bounds = parse_bounds(args.bound)
    report = coherence_suite(bounds, args.seed, max_size=bounds.carrier)
    report = report.merge(axiom_suite(interp, bounds, args.seed))
    report = report.merge(lemma_suite(interp, bounds, args.seed))
    for line in report.lines():
        sys.stdout.write(line + "\n")
    return EXIT_OK if report.failed == 0 else EXIT_UNEQUAL


def cmd_render(args) -> int:
    module = load_module(args.file)
    sig = module.signature()
    body = module.defs.get(args.term)
    if body is None:
        sys.stderr.write(f"error: no definition named {args.term}\n")
        return EXIT_BAD_INPUT
    tape = elaborate(body, module, sig)
    type_of_tape(tape, sig)
    svg = render_svg(tape, sig)
    with open(args.output, "wb") as handle:
        handle.write(svg.encode("utf-8"))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"check": cmd_check, "normalize": cmd_normalize,
                "eval": cmd_eval, "eq": cmd_eq, "suite": cmd_suite,
                "render": cmd_render}
    try:
        return handlers[args.command](args)
    except (ParseError, TypeCheckError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    except TapecalcError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
