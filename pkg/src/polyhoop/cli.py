"""Command-line front end.

Every verb prints a human-readable line followed by a machine-readable
``verdict=<word> witness=<json-or-dash>`` line.  Exit codes: 0 affirmative,
1 negative, 2 usage or input error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .corpus import run_corpus
from .decide import (Projectivity, Rule, admissible, arity_of, entails, equivalence,
                     is_exact_presentation, max_coexact_unifier, meet_all, projectivity_report)
from .exact import fmt, point
from .pl import compile, one_set, uncovered_point
from .polytope import Polyhedron, describe
from .svg import emit_svg
from .synth1d import SynthesisError, synthesize_1d
from .terms import MODES, WH, One, Term, TermSyntaxError, eval_term, parse, render

OK, NO, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _json(x) -> str:
    return json.dumps(x, separators=(",", ":"))


def _pt(p) -> list[str]:
    return [fmt(c) for c in p]


def _report(human: str, verdict: str, witness=None) -> None:
    print(human)
    print(f"verdict={verdict} witness={'-' if witness is None else _json(witness)}")


def _text(arg: str) -> str:
    if arg.startswith("@"):
        return Path(arg[1:]).read_text(encoding="utf-8").strip()
    return arg


def _term(arg: str, mode: str) -> Term:
    return parse(_text(arg), mode)


def _polyhedron(path: str) -> Polyhedron:
    return Polyhedron.loads(Path(path).read_text(encoding="utf-8"))


def _split_rule(items: Sequence[str]) -> tuple[list[str], list[str]]:
    """Premises and conclusions: ``P... => C...``, or exactly two positionals."""
    items = list(items)
    if "=>" in items:
        i = items.index("=>")
        prem, concl = items[:i], items[i + 1:]
    elif len(items) == 2:
        prem, concl = items[:1], items[1:]
    else:
        raise UsageError("give 'PREMISE CONCLUSION' or 'PREMISES... => CONCLUSIONS...'")
    if not prem or not concl:
        raise UsageError("a rule needs at least one premise and one conclusion")
    return prem, concl


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")


def _input_polyhedron(args):
    """A polyhedron from --polyhedron, else the one-set of the given term."""
    if args.polyhedron:
        return _polyhedron(args.polyhedron)
    if not args.term:
        raise UsageError("give a term or --polyhedron FILE")
    t = _term(args.term, args.mode)
    return one_set(compile(t, args.arity or arity_of(t)))


# ---------------------------------------------------------------------------
# verbs

def cmd_parse(args) -> int:
    t = _term(args.term, args.mode)
    _report(render(t), "parsed", {"arity": t.arity, "term": render(t)})
    return OK


def cmd_eval(args) -> int:
    t = _term(args.term, args.mode)
    p = point(args.point.replace(",", " ").split())
    v = eval_term(t, p, args.arity)
    _report(f"{render(t)} at ({', '.join(_pt(p))}) = {fmt(v)}", "value", fmt(v))
    return OK


def cmd_compile(args) -> int:
    t = _term(args.term, args.mode)
    F = compile(t, args.arity or arity_of(t))
    _write(args, json.dumps(F.to_json()) + "\n")
    _report(f"{len(F.cells)} cells on [0,1]^{F.n}", "compiled", {"cells": len(F.cells)})
    return OK


def cmd_oneset(args) -> int:
    t = _term(args.term, args.mode)
    O = one_set(compile(t, args.arity or arity_of(t)))
    _write(args, O.dumps() + "\n")
    _report(f"one-set = {describe(O)}", "computed", O.to_json())
    return OK


def cmd_valid(args) -> int:
    t = _term(args.term, args.mode)
    u = _term(args.other, args.mode) if args.other else One()
    n = args.arity or arity_of(t, u)
    F = compile(equivalence(t, u), n)
    bad = uncovered_point(F, Polyhedron.cube(n))
    if bad is None:
        _report("valid", "valid")
        return OK
    _report(f"not valid: {render(t)} and {render(u)} differ at ({', '.join(_pt(bad))})",
            "invalid", _pt(bad))
    return NO


def cmd_entails(args) -> int:
    prem, concl = _split_rule(args.terms)
    if len(concl) != 1:
        raise UsageError("entails takes exactly one conclusion")
    ts = [_term(a, args.mode) for a in prem]
    u = _term(concl[0], args.mode)
    n = args.arity or arity_of(u, *ts)
    if entails(ts, u, args.mode, n):
        _report("entailed", "entailed")
        return OK
    bad = uncovered_point(compile(u, n), one_set(compile(meet_all(ts), n)))
    _report("not entailed" + (f": premises hold and conclusion fails at ({', '.join(_pt(bad))})"
                               if bad is not None else ""),
            "not-entailed", None if bad is None else _pt(bad))
    return NO


def cmd_admissible(args) -> int:
    prem, concl = _split_rule(args.terms)
    rule = Rule.of([_text(a) for a in prem], [_text(a) for a in concl], args.mode)
    v = admissible(rule, args.arity)
    C = describe(v.max_unifier)
    if v.admissible:
        _report(f"admissible; max unifier = {C}", "admissible",
                {"conclusion": v.witness_conclusion, "unifier": v.max_unifier.to_json()})
        return OK
    _report(f"not admissible; max unifier = {C}", "not-admissible",
            {"unifier": v.max_unifier.to_json()})
    return NO


def cmd_unifier(args) -> int:
    ts = [_term(a, WH) for a in args.terms]
    C = max_coexact_unifier(ts, args.arity)
    _write(args, C.dumps() + "\n")
    _report(f"max coexact unifier = {describe(C)}", "computed", C.to_json())
    return OK


def cmd_exact(args) -> int:
    P = _input_polyhedron(args)
    if is_exact_presentation(P):
        _report(f"exact: {describe(P)} is connected and strongly regular", "exact")
        return OK
    _report(f"not exact: {describe(P)}", "not-exact")
    return NO


def cmd_projective(args) -> int:
    P = _input_polyhedron(args)
    r = projectivity_report(P)
    word = {Projectivity.PROJECTIVE: "projective", Projectivity.NOT_PROJECTIVE: "not-projective",
            Projectivity.INCONCLUSIVE: "inconclusive"}[r.verdict]
    _report(f"{r.verdict} ({r.reason})", word, r.shape.to_json())
    return OK if r.verdict is Projectivity.PROJECTIVE else NO


def cmd_synth1d(args) -> int:
    P = _polyhedron(args.polyhedron)
    t = synthesize_1d(P)
    _write(args, render(t) + "\n")
    _report(render(t), "synthesized", render(t))
    return OK


def cmd_plot(args) -> int:
    if not args.out:
        raise UsageError("plot needs --out FILE.svg")
    if args.polyhedron:
        target = _polyhedron(args.polyhedron)
    elif not args.terms:
        raise UsageError("give one or more terms or --polyhedron FILE")
    else:
        ts = [_term(a, args.mode) for a in args.terms]
        n = args.arity or arity_of(*ts)
        if args.oneset:
            if len(ts) != 1:
                raise UsageError("--oneset plots exactly one term")
            target = one_set(compile(ts[0], n))
        else:
            target = [compile(t, n) for t in ts]
    emit_svg(target, args.out)
    _report(f"wrote {args.out}", "written", args.out)
    return OK


def cmd_corpus(args) -> int:
    results = run_corpus(args.root, set(args.ids) if args.ids else None)
    for r in results:
        print(r.line())
    failed = [r.id for r in results if not r.passed]
    _report(f"{len(results) - len(failed)}/{len(results)} corpus entries pass",
            "pass" if not failed else "fail", failed or None)
    return OK if not failed else NO


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyhoop",
                                 description="Decide properties of Wajsberg hoop terms via rational polyhedra.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default=WH, help="term language (default wh)")
    common.add_argument("--arity", type=int, default=None, help="ambient dimension n")
    common.add_argument("--out", default=None, help="write the artifact (JSON or SVG) here")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    verb("parse", cmd_parse, "parse and pretty-print a term").add_argument("term")
    p = verb("eval", cmd_eval, "evaluate a term at a rational point")
    p.add_argument("term")
    p.add_argument("point", help="coordinates, e.g. '3/4,1/2'")
    verb("compile", cmd_compile, "compile to a piecewise-linear function").add_argument("term")
    verb("oneset", cmd_oneset, "one-set of a term").add_argument("term")
    p = verb("valid", cmd_valid, "is t = u (default u = 1) valid?")
    p.add_argument("term")
    p.add_argument("other", nargs="?")
    verb("entails", cmd_entails, "does t = 1 entail u = 1?").add_argument("terms", nargs="+")
    verb("admissible", cmd_admissible, "is the rule admissible in Wajsberg hoops?").add_argument(
        "terms", nargs="+")
    verb("unifier", cmd_unifier, "maximal coexact unifier of the premises").add_argument(
        "terms", nargs="+")
    for name, fn, help in (("exact", cmd_exact, "does the term or polyhedron present an exact hoop?"),
                           ("projective", cmd_projective, "projectivity report")):
        p = verb(name, fn, help)
        p.add_argument("term", nargs="?")
        p.add_argument("--polyhedron", help="polyhedron JSON file")
    verb("synth1d", cmd_synth1d, "term with a given one-set in [0,1]").add_argument(
        "--polyhedron", required=True, help="polyhedron JSON file")
    p = verb("plot", cmd_plot, "SVG of functions (n = 1) or a polyhedron (n <= 2)")
    p.add_argument("terms", nargs="*")
    p.add_argument("--polyhedron", help="polyhedron JSON file")
    p.add_argument("--oneset", action="store_true", help="plot the one-set instead of the graph")
    p = verb("corpus", cmd_corpus, "run the regression corpus")
    p.add_argument("ids", nargs="*", help="only these entry ids")
    p.add_argument("--root", default=None, help="corpus directory (default: bundled)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.fn(args)
    except (SynthesisError, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return INTERNAL
    except TermSyntaxError as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return USAGE
    except (UsageError, ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
