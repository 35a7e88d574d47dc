"""Triangulations and the polyhedral predicates built on them."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .exact import IntMatrix, Point, affine_hull, integer_solvable, point
from .pl import covers  # noqa: F401  (re-exported: coverage is a polyhedral predicate too)
from .polytope import Polyhedron, Polytope, conforming


class NotPointedError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    vertices: tuple[Point, ...]
    simplices: frozenset  # of sorted vertex-index tuples, closed under faces

    def points(self, s: Sequence[int]) -> tuple[Point, ...]:
        return tuple(self.vertices[i] for i in s)

    def polytope(self, s: Sequence[int]) -> Polytope:
        return Polytope.hull(self.points(s))

    def maximal(self) -> list[tuple[int, ...]]:
        covered = {t[:i] + t[i + 1:] for t in self.simplices if len(t) > 1 for i in range(len(t))}
        return sorted((s for s in self.simplices if s not in covered), key=lambda s: (len(s), s))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, d: int) -> list[tuple[int, ...]]:
        return sorted(s for s in self.simplices if len(s) == d + 1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def union(self, simplices: Iterable[Sequence[int]]) -> Polyhedron:
        return Polyhedron(self.n, [self.polytope(s) for s in simplices], conforming=True)

    def components(self) -> list[set[int]]:
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for s in self.simplices:
            for v in s[1:]:
                a, b = find(s[0]), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, set[int]] = {}
        for i in range(len(self.vertices)):
            groups.setdefault(find(i), set()).add(i)
        return [groups[k] for k in sorted(groups)]


def _closure(maximal: Iterable[tuple[Point, ...]], n: int) -> SimplicialComplex:
    maximal = list(maximal)
    verts = sorted({v for s in maximal for v in s})
    index = {v: i for i, v in enumerate(verts)}
    simp = set()
    for s in maximal:
        idx = tuple(sorted(index[v] for v in s))
        for k in range(1, len(idx) + 1):
            simp.update(combinations(idx, k))
    return SimplicialComplex(n, tuple(verts), frozenset(simp))


def triangulate(P: Polyhedron) -> SimplicialComplex:
    """Pulling triangulation (lexicographically least vertex first) of P."""
    memo: dict = {}
    maximal = []
    for p in conforming(P).polytopes:
        maximal.extend(p.pulling(memo))
    return _closure(maximal, P.n)


def is_anchored(S: Polytope | Iterable[Sequence]) -> bool:
    """True iff the affine hull of S contains an integer point."""
    pts = S.vertices if isinstance(S, Polytope) else [point(p) for p in S]
    aff = affine_hull(pts)
    return integer_solvable(IntMatrix.of(aff.A, aff.n), aff.b) is not None


def anchored_simplices(K: SimplicialComplex) -> list[tuple[int, ...]]:
    return sorted((s for s in K.simplices if is_anchored(K.points(s))), key=lambda s: (len(s), s))


def anchored_part(K: SimplicialComplex) -> Polyhedron:
    """Union of the anchored simplices of K, of every dimension."""
    return K.union(anchored_simplices(K))


def component_containing_one(P: Polyhedron) -> Polyhedron:
    if not P.pointed:
        raise NotPointedError("not pointed")
    K = triangulate(P)
    one = K.vertices.index(tuple(point((1,) * P.n)))
    comp = next(c for c in K.components() if one in c)
    return K.union(s for s in K.maximal() if s[0] in comp)


def is_strongly_regular(P: Polyhedron) -> bool:
    K = triangulate(P)
    return all(is_anchored(K.points(s)) for s in K.maximal())


@dataclass(frozen=True)
class ShapeReport:
    pointed: bool
    connected: bool
    dimension: int
    tree1d: bool
    strongly_regular: bool
    euler_characteristic: int

    def to_json(self) -> dict:
        return {"pointed": self.pointed, "connected": self.connected, "dimension": self.dimension,
                "tree1d": self.tree1d, "stronglyRegular": self.strongly_regular,
                "euler": self.euler_characteristic}


def shape_report(P: Polyhedron) -> ShapeReport:
    K = triangulate(P)
    connected = len(K.components()) == 1
    dim = K.dimension
    tree = (dim <= 1 and connected
            and len(K.of_dim(0)) - len(K.of_dim(1)) == 1)
    regular = all(is_anchored(K.points(s)) for s in K.maximal())
    return ShapeReport(P.pointed, connected, dim, tree, regular, K.euler_characteristic())
