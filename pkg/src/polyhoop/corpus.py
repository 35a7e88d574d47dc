"""Regression corpus: terms and polyhedra with expected verdicts, and its runner."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from .decide import (Rule, admissible, entails, is_exact_presentation, max_coexact_unifier,
                     projectivity_report, valid_identity)
from .exact import IntMatrix, affine_hull, integer_solvable, point, rational
from .oracle import GridSpec, grid_check, refute_admissibility
from .pl import compile, covers, eval_pl, image, is_constant_one, one_set
from .polygeo import (anchored_part, component_containing_one, is_anchored, is_strongly_regular,
                      triangulate)
from .polytope import Polyhedron, same_pointset
from .synth1d import synthesize_1d
from .terms import MV, WH, eval_term, parse, positive_normal_form, render


@dataclass(frozen=True)
class CorpusResult:
    id: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.id}" + (f": {self.detail}" if self.detail else "")


class Corpus:
    def __init__(self, root: Path):
        self.root = Path(root)
        self.entries = json.loads((self.root / "corpus.json").read_text(encoding="utf-8"))["entries"]

    @classmethod
    def bundled(cls) -> "Corpus":
        return cls(Path(str(resources.files("polyhoop") / "data")))

    def polyhedron(self, name: str) -> Polyhedron:
        return Polyhedron.loads((self.root / "polyhedra" / f"{name}.json").read_text(encoding="utf-8"))

    def run(self, ids: set[str] | None = None) -> list[CorpusResult]:
        out = []
        for e in self.entries:
            if ids is not None and e["id"] not in ids:
                continue
            out.append(self.run_entry(e))
        return out

    def run_entry(self, e: dict) -> CorpusResult:
        check = CHECKS.get(e.get("check"))
        if check is None:
            return CorpusResult(e.get("id", "?"), False, f"unknown check {e.get('check')!r}")
        try:
            ok, got = check(self, e)
        except Exception as exc:  # one broken entry must not stop the run
            return CorpusResult(e["id"], False, f"{type(exc).__name__}: {exc}")
        return CorpusResult(e["id"], ok, "" if ok else f"got {got}")


def _mode(e: dict) -> str:
    return e.get("mode", WH)


def _term(e: dict, key: str = "term"):
    return parse(e[key], _mode(e))


def _same(got: Polyhedron, want: Polyhedron):
    return same_pointset(got, want), str(got)


def _eval(c, e):
    t = _term(e)
    got = eval_term(t, point(e["point"]))
    return got == rational(e["expect"]), got


def _eval_pl(c, e):
    t = _term(e)
    got = eval_pl(compile(t, len(e["point"])), point(e["point"]))
    return got == rational(e["expect"]), got


def _nf(c, e):
    pol, p = positive_normal_form(parse(e["term"], MV))
    want = parse(e["normal"], WH)
    return (str(pol) == e["polarity"] and p == want), f"({pol}, {render(p)})"


def _oneset(c, e):
    t = _term(e)
    n = c.polyhedron(e["expect"]).n
    return _same(one_set(compile(t, n)), c.polyhedron(e["expect"]))


def _constant_one(c, e):
    got = is_constant_one(compile(_term(e)))
    return got == e["expect"], got


def _image(c, e):
    D = c.polyhedron(e["domain"])
    return _same(image([compile(_term(e), D.n)], D), c.polyhedron(e["expect"]))


def _vertex(c, e):
    F = compile(_term(e), len(e["vertex"]))
    v = point(e["vertex"])
    got = v in F.vertices() and eval_pl(F, v) == rational(e["value"])
    return got, [str(x) for x in F.vertices()]


def _valid(c, e):
    got = valid_identity(e["t"], e["u"], _mode(e))
    return got == e["expect"], got


def _entails(c, e):
    got = entails(e["premises"], e["u"], _mode(e))
    return got == e["expect"], got


def _covers(c, e):
    P = c.polyhedron(e["polyhedron"])
    got = covers(compile(_term(e), P.n), P)
    return got == e["expect"], got


def _unifier(c, e):
    want = c.polyhedron(e["expect"])
    return _same(max_coexact_unifier(e["premises"], want.n), want)


def _admissible(c, e):
    rule = Rule.of(e["premises"], e["conclusions"], _mode(e))
    n = c.polyhedron(e["unifier"]).n if "unifier" in e else None
    v = admissible(rule, n)
    ok = v.admissible == e["expect"]
    if "unifier" in e:
        ok = ok and same_pointset(v.max_unifier, c.polyhedron(e["unifier"]))
    return ok, f"admissible={v.admissible} unifier={v.max_unifier}"


def _component(c, e):
    return _same(component_containing_one(c.polyhedron(e["polyhedron"])), c.polyhedron(e["expect"]))


def _anchored_part(c, e):
    return _same(anchored_part(triangulate(c.polyhedron(e["polyhedron"]))), c.polyhedron(e["expect"]))


def _exact(c, e):
    x = c.polyhedron(e["polyhedron"]) if "polyhedron" in e else e["term"]
    got = is_exact_presentation(x)
    return got == e["expect"], got


def _projective(c, e):
    x = c.polyhedron(e["polyhedron"]) if "polyhedron" in e else e["term"]
    got = projectivity_report(x).verdict
    return str(got) == e["expect"], got


def _strongly_regular(c, e):
    got = is_strongly_regular(c.polyhedron(e["polyhedron"]))
    return got == e["expect"], got


def _synth1d(c, e):
    P = c.polyhedron(e["polyhedron"])
    t = synthesize_1d(P)
    ok = same_pointset(one_set(compile(t, 1)), P) and valid_identity(t, e["equivalent"], WH, 1)
    return ok, render(t)


def _grid(c, e):
    grid = GridSpec(e["D"], e["n"])
    got = grid_check(e["kind"], _term(e, "t"), _term(e, "u"), grid)
    want = None if e["expect"] is None else point(e["expect"])
    return got == want, got


def _refute(c, e):
    rule = Rule.of(e["premises"], e["conclusions"], _mode(e))
    got = refute_admissibility(rule, e["depth"])
    shown = None if got is None else [render(s) for s in got]
    return shown == e["expect"], shown


def _anchored(c, e):
    got = is_anchored(e["points"])
    return got == e["expect"], got


def _affine_hull(c, e):
    got = str(affine_hull(point(p) for p in e["points"]))
    return got == e["expect"], got


def _integer_solvable(c, e):
    got = integer_solvable(IntMatrix.of(e["A"]), e["b"])
    want = None if e["expect"] is None else tuple(e["expect"])
    return got == want, got


CHECKS: dict[str, Callable[[Corpus, dict], tuple[bool, object]]] = {
    "eval": _eval, "eval_pl": _eval_pl, "nf": _nf, "oneset": _oneset,
    "constant_one": _constant_one, "image": _image, "vertex": _vertex, "valid": _valid,
    "entails": _entails, "covers": _covers, "unifier": _unifier, "admissible": _admissible,
    "component": _component, "anchored_part": _anchored_part, "exact": _exact,
    "projective": _projective, "strongly_regular": _strongly_regular, "synth1d": _synth1d,
    "grid": _grid, "refute": _refute, "anchored": _anchored, "affine_hull": _affine_hull,
    "integer_solvable": _integer_solvable,
}


def run_corpus(root: str | Path | None = None, ids: set[str] | None = None) -> list[CorpusResult]:
    corpus = Corpus(Path(root)) if root is not None else Corpus.bundled()
    return corpus.run(ids)
