"""Compilation of terms to exact piecewise-linear functions on [0,1]^n."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact import Point, point
from .polytope import Polyhedron, Polytope, dot
from .terms import (WH, Fuse, Imp, Join, Meet, Neg, One, Term, Var, Zero, desugar, parse)


@dataclass(frozen=True)
class AffinePiece:
    """x -> a.x + b with integer coefficients."""

    a: tuple[int, ...]
    b: int

    def __call__(self, p: Sequence) -> Fraction:
        return dot(self.a, p) + self.b

    @property
    def is_constant_one(self) -> bool:
        return self.b == 1 and not any(self.a)


@dataclass(frozen=True)
class Cell:
    poly: Polytope
    piece: AffinePiece

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self.poly.vertices


class PLFunction:
    """A McNaughton function: a polyhedral cover of [0,1]^n with one affine piece per cell."""

    __slots__ = ("n", "cells")

    def __init__(self, n: int, cells: Iterable[Cell]):
        self.n = n
        self.cells = tuple(sorted(cells, key=lambda c: (c.poly.vertices, c.piece.a, c.piece.b)))

    def __call__(self, p: Sequence) -> Fraction:
        return eval_pl(self, p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PLFunction) and self.n == other.n and self.cells == other.cells

    def __hash__(self) -> int:
        return hash((self.n, self.cells))

    def __repr__(self) -> str:
        return f"PLFunction(n={self.n}, cells={len(self.cells)})"

    def vertices(self) -> list[Point]:
        return sorted({v for c in self.cells for v in c.vertices})

    def graph(self) -> list[tuple[Fraction, Fraction]]:
        """Breakpoints (x, f(x)) of a one-variable function, left to right."""
        if self.n != 1:
            raise ValueError("graph is defined for one-variable functions only")
        return [(v[0], eval_pl(self, v)) for v in self.vertices()]

    def to_json(self) -> dict:
        return {"dim": self.n,
                "cells": [{"vertices": c.poly.to_json(), "a": list(c.piece.a), "b": c.piece.b}
                          for c in self.cells]}

    @classmethod
    def from_json(cls, data: dict) -> "PLFunction":
        n = int(data["dim"])
        cells = []
        for c in data["cells"]:
            a = tuple(int(v) for v in c["a"])
            if len(a) != n:
                raise ValueError("piece length does not match 'dim'")
            cells.append(Cell(Polytope.hull([point(v) for v in c["vertices"]]),
                              AffinePiece(a, int(c["b"]))))
        return cls(n, cells)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# ---------------------------------------------------------------------------
# compilation

_Raw = tuple[Polytope, tuple[int, ...], int]


def _side(poly: Polytope, alpha: tuple[int, ...], beta: int) -> int:
    """-1 / +1 if alpha.x + beta is <= 0 / >= 0 on all of poly, 0 if it changes sign."""
    lo = hi = False
    for v in poly.vertices:
        h = dot(alpha, v) + beta
        if h < 0:
            lo = True
        elif h > 0:
            hi = True
        if lo and hi:
            return 0
    return 1 if hi else -1


def _cut(poly: Polytope, alpha: tuple[int, ...], beta: int, below, above) -> list[_Raw]:
    """Assign piece ``below`` where alpha.x+beta <= 0 and ``above`` where >= 0."""
    side = _side(poly, alpha, beta)
    if side < 0:
        return [(poly, *below)]
    if side > 0:
        return [(poly, *above)]
    lo, hi = poly.split(alpha, beta)
    out = []
    if lo is not None:
        out.append((lo, *below))
    if hi is not None:
        out.append((hi, *above))
    return out


def _bbox(p: Polytope):
    return tuple(min(c) for c in zip(*p.vertices)), tuple(max(c) for c in zip(*p.vertices))


def _refine(F: list[_Raw], G: list[_Raw], n: int):
    """Full-dimensional pairwise intersections of the cells of F and G."""
    if len(F) == 1:
        return [(q, (F[0][1], F[0][2]), (ga, gb)) for q, ga, gb in G]
    if len(G) == 1:
        return [(q, (fa, fb), (G[0][1], G[0][2])) for q, fa, fb in F]
    gboxes = [_bbox(g[0]) for g in G]
    out = []
    for cp, fa, fb in F:
        lo1, hi1 = _bbox(cp)
        for (dp, ga, gb), (lo2, hi2) in zip(G, gboxes):
            if any(h1 <= l2 or h2 <= l1 for l1, h1, l2, h2 in zip(lo1, hi1, lo2, hi2)):
                continue
            if cp.separated_from(dp) or dp.separated_from(cp):
                continue
            q = cp.intersect(dp)
            if q is None or q.dim < n:
                continue
            out.append((q, (fa, fb), (ga, gb)))
    return out


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _compile(t: Term, n: int, memo: dict) -> list[_Raw]:
    hit = memo.get(t)
    if hit is not None:
        return hit
    zero = (0,) * n
    if isinstance(t, Var):
        if t.index > n:
            raise ValueError(f"arity mismatch: x{t.index} used with arity {n}")
        e = tuple(int(i == t.index - 1) for i in range(n))
        out = [(Polytope.cube(n), e, 0)]
    elif isinstance(t, One):
        out = [(Polytope.cube(n), zero, 1)]
    elif isinstance(t, Zero):
        out = [(Polytope.cube(n), zero, 0)]
    elif isinstance(t, Neg):
        out = [(q, tuple(-c for c in a), 1 - b) for q, a, b in _compile(t.arg, n, memo)]
    elif isinstance(t, (Fuse, Imp, Meet, Join)):
        F = _compile(t.left, n, memo)
        G = _compile(t.right, n, memo)
        out = []
        for q, (fa, fb), (ga, gb) in _refine(F, G, n):
            if isinstance(t, Fuse):
                s = (_add(fa, ga), fb + gb - 1)
                out += _cut(q, s[0], s[1], (zero, 0), s)
            elif isinstance(t, Imp):
                r = (_sub(ga, fa), 1 - fb + gb)
                out += _cut(q, _sub(ga, fa), gb - fb, r, (zero, 1))
            elif isinstance(t, Meet):
                out += _cut(q, _sub(fa, ga), fb - gb, (fa, fb), (ga, gb))
            else:
                out += _cut(q, _sub(fa, ga), fb - gb, (ga, gb), (fa, fb))
        if n == 1:
            out = _merge_1d(out)
    else:
        raise TypeError(f"compile expects a desugared term, got {type(t).__name__}")
    memo[t] = out
    return out


def _merge_1d(cells: list[_Raw]) -> list[_Raw]:
    cells = sorted(cells, key=lambda c: c[0].vertices)
    out: list[_Raw] = []
    for q, a, b in cells:
        if out and out[-1][1] == a and out[-1][2] == b and out[-1][0].vertices[-1] == q.vertices[0]:
            prev = out[-1][0]
            out[-1] = (Polytope.hull([prev.vertices[0], q.vertices[-1]]), a, b)
        else:
            out.append((q, a, b))
    return out


@lru_cache(maxsize=4096)
def _compile_cached(t: Term, n: int) -> PLFunction:
    raw = _compile(desugar(t, WH), n, {})
    return PLFunction(n, [Cell(q, AffinePiece(a, b)) for q, a, b in raw])


def compile(t: Term | str, n: int | None = None) -> PLFunction:
    """Exact McNaughton function of ``t`` on [0,1]^n (n defaults to max(1, arity))."""
    if isinstance(t, str):
        t = parse(t, "mv")
    if n is None:
        n = max(1, t.arity)
    if n < 1:
        raise ValueError("arity must be at least 1")
    if t.arity > n:
        raise ValueError(f"arity mismatch: term uses x{t.arity} but arity is {n}")
    return _compile_cached(t, n)


# ---------------------------------------------------------------------------
# queries


def _in_cube(p: Point, n: int) -> Point:
    if len(p) != n:
        raise ValueError(f"point has {len(p)} coordinates, function has arity {n}")
    if not all(0 <= c <= 1 for c in p):
        raise ValueError("point outside the unit cube")
    return p


def eval_pl(F: PLFunction, p: Sequence) -> Fraction:
    p = _in_cube(point(p), F.n)
    for c in F.cells:
        if c.poly.contains(p):
            return c.piece(p)
    raise AssertionError("cells do not cover the cube")


def is_constant_one(F: PLFunction) -> bool:
    return all(c.piece(v) == 1 for c in F.cells for v in c.vertices)


def one_set(F: PLFunction) -> Polyhedron:
    """The polyhedron {F = 1}."""
    polys = []
    for c in F.cells:
        idx = [i for i, v in enumerate(c.vertices) if c.piece(v) == 1]
        if not idx:
            continue
        # the piece is <= 1 on the cell, so {piece = 1} is the face spanned by these vertices
        polys.append(c.poly if len(idx) == len(c.vertices) else c.poly._face(idx))
    return Polyhedron(F.n, polys, conforming=True)


def strictly_separated(q: Polytope, cell: Polytope) -> bool:
    return any(all(dot(a, v) > b for v in q.vertices) for a, b in cell.ineqs)


def _pieces_on(q: Polytope, F: PLFunction):
    for c in F.cells:
        if strictly_separated(q, c.poly):
            continue
        r = q.intersect(c.poly)
        if r is not None:
            yield r, c.piece


def uncovered_point(F: PLFunction, P: Polyhedron) -> Point | None:
    """A vertex of the refinement of P by F's cells where F is not 1, or None."""
    if F.n != P.n:
        raise ValueError(f"dimension mismatch: function on [0,1]^{F.n}, polyhedron in [0,1]^{P.n}")
    for p in P.polytopes:
        for r, piece in _pieces_on(p, F):
            for v in r.vertices:
                if piece(v) != 1:
                    return v
    return None


def covers(F: PLFunction, P: Polyhedron) -> bool:
    """True iff F equals 1 at every point of P."""
    return uncovered_point(F, P) is None


def image(fs: Sequence[PLFunction], P: Polyhedron) -> Polyhedron:
    """The polyhedron (f_1, ..., f_k)(P) in [0,1]^k."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one function")
    for f in fs:
        if f.n != P.n:
            raise ValueError(f"arity mismatch: function on [0,1]^{f.n}, polyhedron in [0,1]^{P.n}")
    out = []
    for p in P.polytopes:
        pieces = [(p, ())]
        for f in fs:
            nxt = []
            for q, acc in pieces:
                for r, piece in _pieces_on(q, f):
                    if r.dim == p.dim:
                        nxt.append((r, acc + (piece,)))
            pieces = nxt
        for q, acc in pieces:
            out.append(Polytope.hull([tuple(pc(v) for pc in acc) for v in q.vertices]))
    return Polyhedron(len(fs), out)
