"""Command-line front end.

Subcommands: check-axioms, chase, induce, pyramid, verify, snake.
Exit codes: 0 all checks pass, 1 a verified failure or refutation,
2 input error (parse failure, unknown names, shape mismatch).
Output ordering is deterministic (sorted names).
"""

from __future__ import annotations

import argparse
import sys

from .axioms import axiom_suite
from .core import render_key
from .errors import FormError, ParseError
from .lemmas import (
    generalized_snail,
    goursat,
    salamander,
    snake,
    verify_exercise,
    verify_five,
    verify_four,
    verify_threebythree,
)
from .parser import merge, parse_file
from .pyramid import build_pyramid, decide_induction
from .zigzag import chase_backward, chase_forward

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _load(files):
    return merge(*(parse_file(f) for f in files))


def _resolve_subobject(obj, spec: str):
    if spec == "bottom":
        return obj.bottom
    if spec == "top":
        return obj.top
    try:
        key = tuple(sorted(int(v) for v in spec.split(",")))
    except ValueError:
        raise ParseError(f"bad subobject spec {spec!r}; use 'bottom', 'top' or e.g. '0,2'")
    return obj.sub(key)


def cmd_check_axioms(args) -> int:
    ws = _load(args.files)
    forms = ws.forms()
    if args.form:
        if args.form not in forms:
            print(f"error: no form named {args.form!r}", file=sys.stderr)
            return EXIT_INPUT
        forms = {args.form: forms[args.form]}
    if not forms:
        print("error: no forms or algebras declared", file=sys.stderr)
        return EXIT_INPUT
    ok = True
    for name in sorted(forms):
        report = axiom_suite(forms[name], include_axiom6=args.with_axiom6)
        print(report.render())
        ok = ok and report.passed
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_chase(args) -> int:
    ws = _load(args.files)
    z = ws.zigzag(args.zigzag)
    src = z.start if args.direction == "forward" else z.end
    S = _resolve_subobject(src, args.subobject)
    chase = chase_forward if args.direction == "forward" else chase_backward
    if args.trace:
        result, steps = chase(z, S, trace=True)
        for step in steps:
            print(f"{step.owner.id}: {render_key(step.key)}")
    else:
        result = chase(z, S)
    print(f"result {result.owner.id}: {render_key(result.key)}")
    return EXIT_PASS


def cmd_induce(args) -> int:
    ws = _load(args.files)
    z = ws.zigzag(args.zigzag)
    verdict = decide_induction(z, name=args.zigzag)
    if not verdict.induces:
        print("FAIL induce")
        for failure in verdict.failures:
            print(f"  {failure.render()}")
        return EXIT_FAIL
    m = verdict.morphism
    print(f"PASS induce {m.dom.id} -> {m.cod.id}")
    for k in m.dom.lattice.keys:
        print(f"  dimg {render_key(k)} -> {render_key(m.dimg[k])}")
    for k in m.cod.lattice.keys:
        print(f"  iimg {render_key(k)} -> {render_key(m.iimg[k])}")
    if m.element_map is not None:
        print("  elements " + " ".join(map(str, m.element_map)))
    return EXIT_PASS


def cmd_pyramid(args) -> int:
    ws = _load(args.files)
    z = ws.zigzag(args.zigzag)
    p = build_pyramid(z)
    dot = p.to_dot()
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot + "\n")
        print(f"wrote {args.dot}")
    else:
        print(dot)
    failures = p.commutativity_failures()
    for f in failures:
        print(f"FAIL {f}")
    return EXIT_PASS if not failures else EXIT_FAIL


def cmd_verify(args) -> int:
    ws = _load(args.files)
    d = ws.diagram(args.diagram)
    lemma = args.lemma
    if lemma == "generic":
        from .diagram import verify_generic

        report = verify_generic(d, [], lemma=args.diagram)
        print(report.render())
        return EXIT_PASS if report.passed else EXIT_FAIL
    if lemma == "four":
        report = verify_four(d, args.part or "i")
    elif lemma == "five":
        report = verify_five(d, args.part or "full")
    elif lemma in ("3x3", "threebythree"):
        report = verify_threebythree(d, args.part or "upper")
    elif lemma == "goursat":
        report, _ = goursat(d)
    elif lemma == "salamander":
        report = salamander(d)
    elif lemma == "generalized-snail":
        report = generalized_snail(d).report
    else:
        report = verify_exercise(d, lemma, args.part)
    print(report.render())
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_snake(args) -> int:
    ws = _load(args.files)
    d = ws.diagram(args.diagram)
    result = snake(d)
    if result.objects is not None:
        orders = " ".join(str(o.order) for o in result.objects)
        print(f"objects {' '.join(o.id for o in result.objects)}")
        print(f"orders {orders}")
    print(result.report.render())
    return EXIT_PASS if result.report.passed else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="noetherform",
        description="Exact engine for subgroup chasing and homological diagram lemmas "
        "over finite group-like structures.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-axioms", help="run the axiom suite on the loaded forms")
    p.add_argument("files", nargs="+")
    p.add_argument("--with-axiom6", action="store_true")
    p.add_argument("--form", help="check only the named form")
    p.set_defaults(fn=cmd_check_axioms)

    p = sub.add_parser("chase", help="chase a subobject along a zigzag")
    p.add_argument("files", nargs="+")
    p.add_argument("zigzag")
    p.add_argument("--subobject", required=True, help="'bottom', 'top' or elements '0,2'")
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(fn=cmd_chase)

    p = sub.add_parser("induce", help="decide homomorphism induction for a zigzag")
    p.add_argument("files", nargs="+")
    p.add_argument("zigzag")
    p.set_defaults(fn=cmd_induce)

    p = sub.add_parser("pyramid", help="build the pyramid over a zigzag")
    p.add_argument("files", nargs="+")
    p.add_argument("zigzag")
    p.add_argument("--dot", help="write DOT output to this file")
    p.set_defaults(fn=cmd_pyramid)

    p = sub.add_parser("verify", help="verify a named lemma on a diagram")
    p.add_argument("files", nargs="+")
    p.add_argument("diagram")
    p.add_argument("--lemma", required=True)
    p.add_argument("--part", help="lemma part or variant (e.g. i, ii, upper)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("snake", help="construct and check the snake sequence")
    p.add_argument("files", nargs="+")
    p.add_argument("diagram")
    p.set_defaults(fn=cmd_snake)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
