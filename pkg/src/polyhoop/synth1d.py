"""One-variable synthesis: a Wajsberg term with a prescribed one-set."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .pl import compile, one_set
from .polygeo import NotPointedError
from .polytope import Polyhedron, same_pointset
from .terms import (POS, Join, Meet, Neg, One, Power, Scale, Term, Var, eval_term,
                    positive_normal_form)


class SynthesisError(RuntimeError):
    """The synthesized term failed its own one-set check."""


@dataclass(frozen=True, order=True)
class Interval1D:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= 1:
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")


def components(P: Polyhedron) -> list[Interval1D]:
    if P.n != 1:
        raise ValueError("synthesis needs a polyhedron in [0,1]^1")
    return [Interval1D(p.vertices[0][0], p.vertices[-1][0]) for p in P.polytopes]


def ramp(p: Fraction, arg: Term) -> Term:
    """A term in ``arg`` that equals 1 exactly where arg >= p (0 < p <= 1).

    Built by peeling p with two moves: ``arg -> m.arg`` divides the
    threshold by m, ``arg -> arg^k`` maps a threshold q to 1 - (1-q)/k.
    """
    p = Fraction(p)
    while p != 1:
        if p <= Fraction(1, 2):
            m = floor(1 / p)
            arg, p = Scale(m, arg), m * p
        else:
            k = ceil(1 / (1 - p)) - 1
            arg, p = Power(arg, k), 1 - k * (1 - p)
    return arg


def hat(iv: Interval1D) -> Term:
    """MV term whose one-set is exactly the interval."""
    x = Var(1)
    parts = []
    if iv.lo > 0:
        parts.append(ramp(iv.lo, x))
    if iv.hi < 1:
        parts.append(ramp(1 - iv.hi, Neg(x)))
    if not parts:
        return One()
    return parts[0] if len(parts) == 1 else Meet(parts[0], parts[1])


def synthesize_1d(P: Polyhedron) -> Term:
    """A Wajsberg term t in x1 with one_set(compile(t)) == P."""
    ivs = components(P)
    if not P.pointed:
        raise NotPointedError("not pointed")
    t = hat(ivs[0])
    for iv in ivs[1:]:
        t = Join(t, hat(iv))
    if eval_term(t, (1,)) != 1:
        t = Join(t, Var(1))
    polarity, t = positive_normal_form(t)
    if polarity is not POS:
        raise SynthesisError("normal form of a pointed join is not positive")
    if not same_pointset(one_set(compile(t, 1)), P):
        raise SynthesisError(f"one-set of {t} differs from the requested polyhedron")
    return t
