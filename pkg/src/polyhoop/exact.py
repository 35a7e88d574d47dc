"""Exact rationals and integer linear algebra.

Rationals are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
Point = tuple[Fraction, ...]


def rational(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def point(coords: Iterable) -> Point:
    return tuple(rational(c) for c in coords)


def fmt(q: Fraction) -> str:
    return str(q)


def lcd(p: Sequence) -> int:
    """Least common denominator of the coordinates of ``p``."""
    return lcm(1, *(rational(c).denominator for c in p))


# ---------------------------------------------------------------------------
# dense rational linear algebra


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def affine_rank(points: Sequence[Point]) -> int:
    """Affine dimension of the points (-1 for the empty set)."""
    if not points:
        return -1
    p0 = points[0]
    n = len(p0)
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs, n) if diffs else 0


def integer_row(coeffs: Sequence, rhs) -> tuple[tuple[int, ...], int]:
    """Clear denominators of a rational row and divide by the joint gcd."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = lcm(1, *(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


# ---------------------------------------------------------------------------
# affine hulls


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set of ``A x = b`` with integer rows in canonical form."""

    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    n: int

    @property
    def dimension(self) -> int:
        return self.n - len(self.A)

    def contains(self, p: Sequence) -> bool:
        p = point(p)
        return all(sum(a * x for a, x in zip(row, p)) == rhs for row, rhs in zip(self.A, self.b))

    def __str__(self) -> str:
        if not self.A:
            return f"R^{self.n}"
        eqs = []
        for row, rhs in zip(self.A, self.b):
            terms = []
            for i, a in enumerate(row):
                if a == 0:
                    continue
                sign = "-" if a < 0 else "+"
                mag = "" if abs(a) == 1 else str(abs(a))
                terms.append(f"{sign}{mag}x{i + 1}")
            lhs = "".join(terms).lstrip("+")
            eqs.append(f"{lhs}={rhs}")
        return "{" + ", ".join(eqs) + "}"


def affine_hull(points: Iterable[Sequence]) -> AffineSubspace:
    """Smallest affine subspace containing ``points``, as integer equations.

    Rows come from the reduced echelon basis of the normal space, so the
    result depends only on the hull, never on the order of the points.
    """
    pts = [point(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points of mixed dimension")
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    normals = nullspace(diffs, n) if diffs else [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, _ = rref(normals, n)
    A, b = [], []
    for row in red:
        ints, rhs = integer_row(row, sum(a * x for a, x in zip(row, p0)))
        A.append(ints)
        b.append(rhs)
    return AffineSubspace(tuple(A), tuple(b), n)


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("matrix rows must have equal length")
        return cls(rows, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.entries)) if other.entries else [()] * other.cols
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols)
                               for r in self.entries), other.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.entries)


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular U, V and diagonal D with U @ A @ V == D.

    The diagonal entries are nonnegative and each divides the next.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.entries]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row dst += f * row src
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for M in (D, V):
            for r in M:
                r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return IntMatrix.of(U, m), IntMatrix.of(D, n), IntMatrix.of(V, n)


def integer_solvable(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution of ``A x = b``, or None when there is none."""
    if not isinstance(A, IntMatrix):
        A = IntMatrix.of(A)
    b = tuple(int(v) for v in b)
    if len(b) != A.rows:
        raise ValueError(f"dimension mismatch: {A.rows} rows but {len(b)} right-hand sides")
    U, D, V = smith_normal_form(A)
    c = U.apply(b)
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = D.entries[i][i] if i < A.cols else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return V.apply(y)
