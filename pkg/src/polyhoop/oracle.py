"""Brute-force cross-checks, independent of the polyhedral decision path.

Every oracle here can only refute: a counterexample is definitive, while a
pass is evidence up to the search bound.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .exact import IntMatrix
from .terms import (MV, WH, Fuse, Imp, Join, Meet, One, Term, Var, eval_term, is_wajsberg,
                    substitute)

DEFAULT_CAPS = {"grid": 10**6, "subst": 10**5, "box": 10**6}


class CapExceeded(RuntimeError):
    pass


def caps() -> dict[str, int]:
    """Search caps, overridable as POLYHOOP_CAPS="grid=N,subst=M,box=K"."""
    out = dict(DEFAULT_CAPS)
    raw = os.environ.get("POLYHOOP_CAPS", "").strip()
    for item in filter(None, (s.strip() for s in raw.split(","))):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or key not in out:
            raise ValueError(f"bad POLYHOOP_CAPS entry {item!r}")
        out[key] = int(val)
    return out


@dataclass(frozen=True)
class GridSpec:
    D: int
    n: int

    def __post_init__(self):
        if self.D < 1 or self.n < 1:
            raise ValueError("grid needs D >= 1 and n >= 1")

    @property
    def size(self) -> int:
        return (self.D + 1) ** self.n

    def points(self) -> Iterator[tuple[Fraction, ...]]:
        """Grid points in lexicographic order."""
        if self.size > caps()["grid"]:
            raise CapExceeded(f"grid cap exceeded: {self.size} points")
        axis = [Fraction(i, self.D) for i in range(self.D + 1)]
        return product(axis, repeat=self.n)


IDENTITY = "identity"
QUASIEQ = "quasieq"


def grid_check(kind: str, t: Term, u: Term, grid: GridSpec) -> tuple[Fraction, ...] | None:
    """First grid point refuting t = u (identity) or t = 1 => u = 1 (quasieq); None on pass."""
    if kind not in (IDENTITY, QUASIEQ):
        raise ValueError(f"unknown check {kind!r}")
    if max(t.arity, u.arity) > grid.n:
        raise ValueError(f"arity mismatch: terms need {max(t.arity, u.arity)} variables, grid has {grid.n}")
    for p in grid.points():
        a, b = eval_term(t, p, grid.n), eval_term(u, p, grid.n)
        if kind == IDENTITY and a != b:
            return p
        if kind == QUASIEQ and a == 1 and b != 1:
            return p
    return None


# ---------------------------------------------------------------------------
# admissibility by one-variable substitutions

_PROBE = GridSpec(12, 1)


def _signature(s: Term) -> tuple:
    from .pl import compile  # canonical 1D breakpoints identify the function
    return tuple(compile(s, 1).graph())


def one_variable_terms(depth: int, cap: int | None = None) -> list[Term]:
    """Wajsberg terms in x1 up to AST depth ``depth``, one per function.

    Order: by depth, then Var before One, then Fuse, Imp, Meet, Join over
    earlier terms in enumeration order.
    """
    return list(_one_variable_terms(depth, caps()["subst"] if cap is None else cap))


@lru_cache(maxsize=16)
def _one_variable_terms(depth: int, cap: int) -> tuple[Term, ...]:
    seen: dict[tuple, Term] = {}
    levels: list[list[Term]] = [[]]
    for s in (Var(1), One()):
        seen.setdefault(_signature(s), s)
    levels[0] = list(seen.values())
    allterms = list(levels[0])
    for _ in range(depth):
        fresh = []
        old = len(allterms) - len(levels[-1])
        for i, a in enumerate(allterms):
            for j, b in enumerate(allterms):
                if i < old and j < old:
                    continue  # both operands shallower: already tried
                for op in (Fuse, Imp, Meet, Join):
                    s = op(a, b)
                    key = _signature(s)
                    if key not in seen:
                        seen[key] = s
                        fresh.append(s)
                        if len(seen) > cap:
                            raise CapExceeded(f"substitution cap exceeded: {cap} terms")
        levels.append(fresh)
        allterms.extend(fresh)
    return tuple(allterms)


def _probe_values(s: Term, cache: dict) -> tuple[Fraction, ...]:
    if s not in cache:
        cache[s] = tuple(eval_term(s, p) for p in _PROBE.points())
    return cache[s]


def _fails_somewhere(t: Term, sigma: Sequence[Term], cache: dict) -> bool:
    cols = [_probe_values(s, cache) for s in sigma]
    return any(eval_term(t, row) != 1 for row in zip(*cols))


def refute_admissibility(rule, depth: int) -> tuple[Term, ...] | None:
    """A one-variable substitution unifying every premise but no conclusion, or None.

    Premises must be Wajsberg terms; conclusions may use 0 and negation.
    Substitution tuples are tried in lexicographic enumeration order.
    """
    from .decide import valid_identity

    if not all(is_wajsberg(t) for t in rule.premises):
        raise ValueError("premises must be Wajsberg terms")
    n = rule.arity
    terms = one_variable_terms(depth)
    if len(terms) ** n > caps()["subst"]:
        raise CapExceeded(f"substitution cap exceeded: {len(terms)}^{n} tuples")
    cache: dict = {}
    for sigma in product(terms, repeat=n):
        # cheap probe first: a premise failing at a probe point is not unified
        if any(_fails_somewhere(t, sigma, cache) for t in rule.premises):
            continue
        if not all(valid_identity(substitute(t, sigma), One(), WH, 1) for t in rule.premises):
            continue
        if any(not _fails_somewhere(u, sigma, cache)
               and valid_identity(substitute(u, sigma), One(), MV, 1) for u in rule.conclusions):
            continue
        return sigma
    return None


# ---------------------------------------------------------------------------
# integer systems

def integer_search_bruteforce(A, b: Sequence[int], r: int) -> tuple[int, ...] | None:
    """A solution of A.x = b in [-r, r]^n, or None.

    Searched shell by shell in max-norm, lexicographically within a shell,
    so the reported witness is a smallest one.
    """
    A = IntMatrix.of(A) if not isinstance(A, IntMatrix) else A
    rows = A.entries
    b = tuple(int(v) for v in b)
    if len(rows) != len(b):
        raise ValueError(f"dimension mismatch: {len(rows)} rows, {len(b)} right-hand sides")
    n = A.cols
    if (2 * r + 1) ** n > caps()["box"]:
        raise CapExceeded(f"search-space cap exceeded: {(2 * r + 1) ** n} points")
    for k in range(r + 1):
        for x in product(range(-k, k + 1), repeat=n):
            if max(map(abs, x), default=0) != k:
                continue
            if all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(rows, b)):
                return x
    return None
