"""Decision procedures: validity, entailment, unifiers, admissibility, exactness."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

from .pl import compile, covers, is_constant_one, one_set
from .polygeo import (NotPointedError, ShapeReport, anchored_part, component_containing_one,
                      shape_report, triangulate)
from .polytope import Polyhedron
from .terms import MODES, WH, Imp, Meet, ModeError, One, Term, check_mode, parse

TermLike = Union[Term, str]


def as_term(t: TermLike, mode: str = WH) -> Term:
    if isinstance(t, str):
        return parse(t, mode)
    return check_mode(t, mode)


def arity_of(*terms: Term) -> int:
    return max([1] + [t.arity for t in terms])


def equivalence(t: Term, u: Term) -> Term:
    return Meet(Imp(t, u), Imp(u, t))


def meet_all(terms: Sequence[Term]) -> Term:
    if not terms:
        raise ValueError("need at least one premise")
    return reduce(Meet, terms)


def valid_identity(t: TermLike, u: TermLike = One(), mode: str = WH, n: int | None = None) -> bool:
    """Does t = u hold in every algebra of the variety (checked on [0,1])?"""
    t, u = as_term(t, mode), as_term(u, mode)
    return is_constant_one(compile(equivalence(t, u), n or arity_of(t, u)))


def entails(premises: Sequence[TermLike], u: TermLike, mode: str = WH,
            n: int | None = None) -> bool:
    """Is u = 1 derivable from {t = 1 : t in premises}?"""
    ts = [as_term(t, mode) for t in premises]
    u = as_term(u, mode)
    n = n or arity_of(u, *ts)
    return covers(compile(u, n), one_set(compile(meet_all(ts), n)))


def max_coexact_unifier(premises: Sequence[TermLike], n: int | None = None) -> Polyhedron:
    """Polyhedron of the maximal coexact unifier of the premises."""
    ts = [as_term(t, WH) for t in premises]
    n = n or arity_of(*ts)
    O = one_set(compile(meet_all(ts), n))
    return component_containing_one(anchored_part(triangulate(O)))


@dataclass(frozen=True)
class Rule:
    premises: tuple[Term, ...]
    conclusions: tuple[Term, ...]
    mode: str = WH

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.premises or not self.conclusions:
            raise ValueError("a rule needs at least one premise and one conclusion")

    @classmethod
    def of(cls, premises: Sequence[TermLike], conclusions: Sequence[TermLike],
           mode: str = WH) -> "Rule":
        if isinstance(premises, (str, Term)):
            premises = [premises]
        if isinstance(conclusions, (str, Term)):
            conclusions = [conclusions]
        return cls(tuple(as_term(t, mode) for t in premises),
                   tuple(as_term(t, mode) for t in conclusions), mode)

    @property
    def arity(self) -> int:
        return arity_of(*self.premises, *self.conclusions)

    def __str__(self) -> str:
        return (", ".join(str(t) for t in self.premises) + " => "
                + ", ".join(str(t) for t in self.conclusions))


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    max_unifier: Polyhedron
    witness_conclusion: int | None


def admissible(rule: Rule, n: int | None = None) -> AdmissibilityVerdict:
    """Admissibility in Wajsberg hoops via the maximal coexact unifier."""
    if rule.mode != WH:
        raise ModeError("MV admissibility out of scope")
    n = n or rule.arity
    C = max_coexact_unifier(rule.premises, n)
    for i, u in enumerate(rule.conclusions):
        if covers(compile(u, n), C):
            return AdmissibilityVerdict(True, C, i)
    return AdmissibilityVerdict(False, C, None)


def _polyhedron(x: Polyhedron | TermLike, n: int | None) -> Polyhedron:
    if isinstance(x, Polyhedron):
        return x
    t = as_term(x, WH)
    return one_set(compile(t, n or arity_of(t)))


def is_exact_presentation(x: Polyhedron | TermLike, n: int | None = None) -> bool:
    """Is the hoop presented by x (a term or a pointed polyhedron) exact?"""
    P = _polyhedron(x, n)
    if not P.pointed:
        raise NotPointedError("not pointed")
    rep = shape_report(P)
    return rep.connected and rep.strongly_regular


class Projectivity(enum.Enum):
    PROJECTIVE = "Projective"
    NOT_PROJECTIVE = "NotProjective"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ProjectivityReport:
    verdict: Projectivity
    shape: ShapeReport
    reason: str


def projectivity_report(x: Polyhedron | TermLike, n: int | None = None) -> ProjectivityReport:
    P = _polyhedron(x, n)
    if not P.pointed:
        raise NotPointedError("not pointed")
    s = shape_report(P)
    if not s.connected:
        return ProjectivityReport(Projectivity.NOT_PROJECTIVE, s, "disconnected")
    if not s.strongly_regular:
        return ProjectivityReport(Projectivity.NOT_PROJECTIVE, s, "not strongly regular")
    if s.dimension <= 1:
        if s.tree1d:
            return ProjectivityReport(Projectivity.PROJECTIVE, s, "tree, strongly regular")
        return ProjectivityReport(Projectivity.NOT_PROJECTIVE, s, "has a cycle")
    if s.euler_characteristic != 1:
        return ProjectivityReport(Projectivity.NOT_PROJECTIVE, s,
                                  f"Euler characteristic {s.euler_characteristic} != 1")
    return ProjectivityReport(Projectivity.INCONCLUSIVE, s, "contractibility not tested in dimension >= 2")
