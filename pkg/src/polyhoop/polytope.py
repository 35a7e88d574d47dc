"""Exact rational polytopes and polyhedra inside the unit cube.

A :class:`Polytope` keeps both descriptions: its vertex set (the exact
extreme points) and a complete half-space description made of integer
equations and facet-defining integer inequalities ``a.x <= b``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Iterable, Sequence

from .exact import Point, affine_hull, affine_rank, integer_row, nullspace, point, rank, rref

Constraint = tuple[tuple[int, ...], int]


def dot(a: Sequence, x: Sequence) -> Fraction:
    s = 0
    for ai, xi in zip(a, x):
        if ai:
            s += ai * xi
    return s


def ineq(a: Sequence, b) -> Constraint:
    """Integer-cleared form of ``a.x <= b`` (positive scaling only)."""
    return integer_row(a, b)


def equation(a: Sequence, b) -> Constraint:
    ints, rhs = integer_row(a, b)
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints, rhs = tuple(-v for v in ints), -rhs
    return ints, rhs


def _independent(rows: list[Constraint], n: int) -> tuple[Constraint, ...]:
    kept: list[Constraint] = []
    seen = set()
    for r in rows:
        r = equation(*r)
        if r in seen or not any(r[0]):
            continue
        if rank([k[0] for k in kept] + [r[0]], n) > len(kept):
            kept.append(r)
            seen.add(r)
    return tuple(kept)


class Polytope:
    """Convex hull of finitely many rational points."""

    __slots__ = ("n", "vertices", "eqs", "ineqs", "_dim", "_masks", "_edges")

    def __init__(self, n: int, vertices: tuple[Point, ...], eqs: tuple[Constraint, ...],
                 ineqs: tuple[Constraint, ...]):
        self.n = n
        self.vertices = vertices
        self.eqs = eqs
        self.ineqs = ineqs
        self._dim = None
        self._masks = None
        self._edges = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _build(cls, n: int, vertices: Iterable[Point], eqs: Iterable[Constraint],
               ineqs: Iterable[Constraint]) -> "Polytope":
        """Assemble from exact vertices and a complete (possibly redundant) H-description."""
        verts = tuple(sorted(set(vertices)))
        d = affine_rank(list(verts))
        eq_rows = list(eqs)
        kept: list[Constraint] = []
        seen_sets = set()
        for a, b in ineqs:
            tight = frozenset(i for i, v in enumerate(verts) if dot(a, v) == b)
            if len(tight) == len(verts):
                eq_rows.append((a, b))
                continue
            if len(tight) < d or tight in seen_sets:
                continue
            if affine_rank([verts[i] for i in sorted(tight)]) != d - 1:
                continue
            seen_sets.add(tight)
            kept.append((a, b))
        p = cls(n, verts, _independent(eq_rows, n), tuple(kept))
        p._dim = d
        return p

    @classmethod
    def cube(cls, n: int) -> "Polytope":
        verts = [tuple(Fraction(c) for c in bits) for bits in product((0, 1), repeat=n)]
        ineqs = []
        for i in range(n):
            e = tuple(int(j == i) for j in range(n))
            ineqs.append((e, 1))
            ineqs.append((tuple(-v for v in e), 0))
        return cls._build(n, verts, (), ineqs)

    @classmethod
    def hull(cls, points: Iterable[Sequence]) -> "Polytope":
        """Convex hull of the given rational points (duplicates and interior points allowed)."""
        pts = sorted(set(point(p) for p in points))
        if not pts:
            raise ValueError("empty point set")
        n = len(pts[0])
        aff = affine_hull(pts)
        eqs = list(zip(aff.A, aff.b))
        d = n - len(eqs)
        if d == 0:
            return cls._build(n, pts[:1], eqs, ())
        diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        _, piv = rref(diffs, n)
        proj = [tuple(p[c] for c in piv) for p in pts]
        found: set[Constraint] = set()
        for combo in combinations(range(len(pts)), d):
            base = proj[combo[0]]
            rows = [[proj[i][k] - base[k] for k in range(d)] for i in combo[1:]]
            ns = nullspace(rows, d)
            if len(ns) != 1:
                continue
            c = ns[0]
            h0 = dot(c, base)
            vals = [dot(c, q) for q in proj]
            if all(v <= h0 for v in vals):
                sign = 1
            elif all(v >= h0 for v in vals):
                sign = -1
            else:
                continue
            a = [0] * n
            for k, col in enumerate(piv):
                a[col] = sign * c[k]
            found.add(ineq(a, sign * h0))
        ineqs = sorted(found)
        eq_normals = [e[0] for e in eqs]
        verts = [p for p in pts
                 if rank(eq_normals + [a for a, b in ineqs if dot(a, p) == b], n) == n]
        return cls._build(n, verts, eqs, ineqs)

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = affine_rank(list(self.vertices))
        return self._dim

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and self.n == other.n and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.n, self.vertices))

    def __lt__(self, other: "Polytope") -> bool:
        return self.vertices < other.vertices

    def __repr__(self) -> str:
        vs = ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope[{vs}]"

    def contains(self, p: Sequence) -> bool:
        return (all(dot(a, p) == b for a, b in self.eqs)
                and all(dot(a, p) <= b for a, b in self.ineqs))

    def contains_polytope(self, other: "Polytope") -> bool:
        return all(self.contains(v) for v in other.vertices)

    def centroid(self) -> Point:
        k = len(self.vertices)
        return tuple(sum(c) / k for c in zip(*self.vertices))

    def _tight_masks(self) -> list[int]:
        if self._masks is None:
            self._masks = [sum(1 << j for j, (a, b) in enumerate(self.ineqs) if dot(a, v) == b)
                           for v in self.vertices]
        return self._masks

    def edges(self) -> list[tuple[int, int]]:
        """Index pairs of adjacent vertices."""
        if self._edges is not None:
            return self._edges
        d = self.dim
        V = len(self.vertices)
        if d <= 0:
            out = []
        elif d == 1:
            out = [(0, 1)]
        else:
            masks = self._tight_masks()
            out = []
            for i in range(V):
                for j in range(i + 1, V):
                    J = masks[i] & masks[j]
                    if bin(J).count("1") < d - 1:
                        continue
                    # minimal face through both must have no third vertex
                    if any(k != i and k != j and masks[k] & J == J for k in range(V)):
                        continue
                    out.append((i, j))
        self._edges = out
        return out

    # -- cutting ----------------------------------------------------------

    def halfspace(self, a: Sequence[int], b) -> "Polytope | None":
        """Intersection with ``{x : a.x <= b}``; None when empty."""
        s = [b - dot(a, v) for v in self.vertices]
        if all(x >= 0 for x in s):
            return self
        a, b = ineq(a, b)
        if all(x <= 0 for x in s):
            zero = [v for v, x in zip(self.vertices, s) if x == 0]
            if not zero:
                return None
            return Polytope._build(self.n, zero, self.eqs + ((a, b),), self.ineqs)
        pts = [v for v, x in zip(self.vertices, s) if x >= 0]
        for i, j in self.edges():
            si, sj = s[i], s[j]
            if (si > 0 > sj) or (si < 0 < sj):
                t = si / (si - sj)
                v, w = self.vertices[i], self.vertices[j]
                pts.append(tuple(vi + t * (wi - vi) for vi, wi in zip(v, w)))
        return Polytope._build(self.n, pts, self.eqs, self.ineqs + ((a, b),))

    def split(self, alpha: Sequence[int], beta: int, full: bool = True):
        """Pieces of self where ``alpha.x + beta`` is <= 0 and >= 0.

        With ``full`` set, pieces of lower dimension than self are dropped (None).
        """
        lo = self.halfspace(alpha, -beta)
        hi = self.halfspace(tuple(-c for c in alpha), beta)
        if full:
            d = self.dim
            lo = lo if lo is not None and lo.dim == d else None
            hi = hi if hi is not None and hi.dim == d else None
        return lo, hi

    def intersect(self, other: "Polytope") -> "Polytope | None":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        p: Polytope | None = self
        for a, b in other.eqs:
            p = p.halfspace(a, b)
            if p is None:
                return None
            p = p.halfspace(tuple(-c for c in a), -b)
            if p is None:
                return None
        for a, b in other.ineqs:
            p = p.halfspace(a, b)
            if p is None:
                return None
        return p

    def separated_from(self, other: "Polytope") -> bool:
        """Cheap test: some facet of ``other`` has all of self on its far side (or on it)."""
        for a, b in other.ineqs:
            if all(dot(a, v) >= b for v in self.vertices):
                return True
        return False

    # -- faces and triangulation ------------------------------------------

    def _face(self, idx: Iterable[int]) -> "Polytope":
        idx = sorted(idx)
        if len(idx) == len(self.vertices):
            return self
        verts = [self.vertices[i] for i in idx]
        tight = [(a, b) for a, b in self.ineqs if all(dot(a, v) == b for v in verts)]
        rest = [c for c in self.ineqs if c not in tight]
        return Polytope._build(self.n, verts, self.eqs + tuple(tight), rest)

    def facets(self) -> list["Polytope"]:
        masks = self._tight_masks()
        out = []
        for j in range(len(self.ineqs)):
            idx = [i for i, m in enumerate(masks) if m >> j & 1]
            if idx:
                out.append(self._face(idx))
        return out

    def faces(self) -> list["Polytope"]:
        """All nonempty faces, self included."""
        masks = self._tight_masks()
        V = len(self.vertices)
        fsets = [frozenset(i for i in range(V) if masks[i] >> j & 1) for j in range(len(self.ineqs))]
        whole = frozenset(range(V))
        found = {whole}
        frontier = [whole]
        while frontier:
            nxt = []
            for S in frontier:
                for F in fsets:
                    T = S & F
                    if T and T not in found:
                        found.add(T)
                        nxt.append(T)
            frontier = nxt
        return [self._face(S) for S in sorted(found, key=sorted)]

    def pulling(self, memo: dict | None = None) -> list[tuple[Point, ...]]:
        """Maximal simplices of the pulling triangulation at lexicographically least vertices."""
        if memo is None:
            memo = {}
        key = self.vertices
        if key in memo:
            return memo[key]
        if self.dim == 0:
            out = [self.vertices]
        elif len(self.vertices) == self.dim + 1:
            out = [self.vertices]
        else:
            v0 = self.vertices[0]
            out = []
            for F in self.facets():
                if v0 in F.vertices:
                    continue
                for s in F.pulling(memo):
                    out.append((v0,) + s)
            out = sorted(set(out))
        memo[key] = out
        return out

    def volume(self) -> Fraction:
        """n-dimensional volume (zero unless full-dimensional)."""
        if self.dim < self.n:
            return Fraction(0)
        total = Fraction(0)
        for s in self.pulling():
            rows = [[a - b for a, b in zip(v, s[0])] for v in s[1:]]
            total += abs(_det(rows))
        return total / factorial(self.n)

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in v] for v in self.vertices]


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    k = len(m)
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, k):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def simplex(vertices: Iterable[Sequence]) -> Polytope:
    return Polytope.hull(vertices)


# ---------------------------------------------------------------------------
# polyhedra


def _merge_intervals(polys: Iterable[Polytope]) -> list[Polytope]:
    ivs = sorted((p.vertices[0][0], p.vertices[-1][0]) for p in polys)
    merged: list[list[Fraction]] = []
    for lo, hi in ivs:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [Polytope.hull([(lo,), (hi,)]) for lo, hi in merged]


class Polyhedron:
    """Finite union of rational polytopes in [0,1]^n, kept in canonical order.

    ``conforming`` records that the polytopes are faces of one common
    polyhedral complex, so pairwise intersections are common faces.
    """

    __slots__ = ("n", "polytopes", "conforming")

    def __init__(self, n: int, polytopes: Iterable[Polytope] = (), conforming: bool = False):
        polys = list(polytopes)
        for p in polys:
            if p.n != n:
                raise ValueError("polytope dimension does not match the polyhedron")
            for v in p.vertices:
                if not all(0 <= c <= 1 for c in v):
                    raise ValueError(f"vertex {tuple(str(c) for c in v)} outside the unit cube")
        if n == 1 and polys:
            polys = _merge_intervals(polys)
            conforming = True
        else:
            polys = sorted(set(polys))
            polys = [p for p in polys
                     if not any(q is not p and q.dim >= p.dim and q.contains_polytope(p)
                                for q in polys)]
        self.n = n
        self.polytopes = tuple(polys)
        self.conforming = conforming or len(self.polytopes) <= 1

    @classmethod
    def of(cls, n: int, *vertex_lists: Iterable[Sequence]) -> "Polyhedron":
        return cls(n, [Polytope.hull(vs) for vs in vertex_lists])

    @classmethod
    def interval(cls, lo, hi) -> "Polyhedron":
        return cls(1, [Polytope.hull([(lo,), (hi,)])])

    @classmethod
    def points(cls, *xs) -> "Polyhedron":
        return cls(1, [Polytope.hull([(x,)]) for x in xs])

    @classmethod
    def cube(cls, n: int) -> "Polyhedron":
        return cls(n, [Polytope.cube(n)], conforming=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyhedron) and self.n == other.n and self.polytopes == other.polytopes

    def __hash__(self) -> int:
        return hash((self.n, self.polytopes))

    def __repr__(self) -> str:
        return f"Polyhedron(dim={self.n}, {list(self.polytopes)})"

    def __str__(self) -> str:
        return describe(self)

    @property
    def is_empty(self) -> bool:
        return not self.polytopes

    def contains_point(self, p: Sequence) -> bool:
        p = point(p)
        return any(q.contains(p) for q in self.polytopes)

    @property
    def pointed(self) -> bool:
        return self.contains_point((1,) * self.n)

    @property
    def dimension(self) -> int:
        return max((p.dim for p in self.polytopes), default=-1)

    def to_json(self) -> dict:
        return {"dim": self.n, "polytopes": [p.to_json() for p in self.polytopes]}

    @classmethod
    def from_json(cls, data: dict) -> "Polyhedron":
        n = int(data["dim"])
        polys = []
        for vs in data["polytopes"]:
            pts = [point(v) for v in vs]
            if any(len(v) != n for v in pts):
                raise ValueError("vertex dimension does not match 'dim'")
            polys.append(Polytope.hull(pts))
        return cls(n, polys)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "Polyhedron":
        return cls.from_json(json.loads(text))


def describe(P: Polyhedron) -> str:
    """Short human-readable form; exact for dimension 1."""
    if P.is_empty:
        return "{}"
    if P.n == 1:
        parts = []
        for p in P.polytopes:
            lo, hi = p.vertices[0][0], p.vertices[-1][0]
            parts.append(f"{{{lo}}}" if lo == hi else f"[{lo}, {hi}]")
        return " U ".join(parts)
    parts = []
    for p in P.polytopes:
        parts.append("conv{" + ", ".join("(" + ",".join(str(c) for c in v) + ")"
                                         for v in p.vertices) + "}")
    return " U ".join(parts)


# ---------------------------------------------------------------------------
# conforming refinement through a hyperplane arrangement


def _hyperplanes(polys: Iterable[Polytope]) -> list[Constraint]:
    hs = set()
    for p in polys:
        for a, b in p.eqs + p.ineqs:
            hs.add(equation(a, b))
    return sorted(hs)


def arrangement_faces(n: int, polys: Sequence[Polytope]) -> list[Polytope]:
    """Faces of the cube cut by every hyperplane supporting some input polytope.

    Each input polytope is a union of the returned faces, and the relative
    interior of every face lies either inside or outside each input polytope.
    """
    cells = [Polytope.cube(n)]
    for a, b in _hyperplanes(polys):
        nxt = []
        for c in cells:
            lo, hi = c.split(a, -b)
            nxt.extend(x for x in (lo, hi) if x is not None)
        cells = nxt
    faces = {}
    for c in cells:
        for f in c.faces():
            faces.setdefault(f.vertices, f)
    return [faces[k] for k in sorted(faces)]


def conforming(P: Polyhedron) -> Polyhedron:
    """Same point set, rewritten as faces of a single polyhedral complex."""
    if P.conforming:
        return P
    faces = arrangement_faces(P.n, P.polytopes)
    inside = [f for f in faces if P.contains_point(f.centroid())]
    return Polyhedron(P.n, inside, conforming=True)


def contains(P: Polyhedron, Q: Polyhedron) -> bool:
    """Point-set inclusion Q <= P."""
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    if all(any(p.contains_polytope(q) for p in P.polytopes) for q in Q.polytopes):
        return True
    for f in arrangement_faces(P.n, P.polytopes + Q.polytopes):
        c = f.centroid()
        if Q.contains_point(c) and not P.contains_point(c):
            return False
    return True


def same_pointset(P: Polyhedron, Q: Polyhedron) -> bool:
    return contains(P, Q) and contains(Q, P)
