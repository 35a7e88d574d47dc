"""Wajsberg / MV terms: syntax tree, parser, printer, evaluation, normal form."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import point

WH = "wh"
MV = "mv"
MODES = (WH, MV)


class Term:
    """Base class of all term nodes."""

    __slots__ = ("_hash",)

    def __str__(self) -> str:
        return render(self)

    # Terms are DAGs after desugaring; structural hash/eq must not re-walk shared subterms.
    def _cached_hash(self) -> int:
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
            return h

    def _fast_eq(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return all(getattr(self, f) == getattr(other, f) for f in self.__dataclass_fields__)

    @property
    def arity(self) -> int:
        return max_var(self)


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True, slots=True)
class One(Term):
    pass


@dataclass(frozen=True, slots=True)
class Zero(Term):
    pass


@dataclass(frozen=True, slots=True)
class Fuse(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Imp(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Join(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Oplus(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Power(Term):
    arg: Term
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("power exponent must be >= 1")


@dataclass(frozen=True, slots=True)
class Scale(Term):
    k: int
    arg: Term

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("scale factor must be >= 1")


BINARY = (Fuse, Imp, Meet, Join, Oplus)

for _cls in (Var, One, Zero, Fuse, Imp, Meet, Join, Oplus, Neg, Power, Scale):
    _cls.__hash__ = Term._cached_hash
    _cls.__eq__ = Term._fast_eq


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, BINARY):
        return (t.left, t.right)
    if isinstance(t, (Neg, Power, Scale)):
        return (t.arg,)
    return ()


def _walk(t: Term):
    seen = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if id(s) in seen:
            continue
        seen.add(id(s))
        yield s
        stack.extend(children(s))


def max_var(t: Term) -> int:
    return max((s.index for s in _walk(t) if isinstance(s, Var)), default=0)


def is_wajsberg(t: Term) -> bool:
    """True when ``t`` contains neither 0 nor negation."""
    return not any(isinstance(s, (Zero, Neg)) for s in _walk(t))


class ModeError(ValueError):
    pass


def check_mode(t: Term, mode: str) -> Term:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == WH and not is_wajsberg(t):
        raise ModeError("negation/zero not allowed in wh mode")
    return t


# ---------------------------------------------------------------------------
# parsing

class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(->)|(\\/)|(/\\)|(x\d+|[xyz])|(\d+)|([*~^.()]))")
_ALIAS = {"x": 1, "y": 2, "z": 3}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise TermSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastindex
        start = m.start(kind)
        val = m.group(kind)
        out.append((("IMP", "JOIN", "MEET", "VAR", "INT", val)[kind - 1], val, start))
        pos = m.end()
    out.append(("EOF", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, mode: str):
        self.text = text
        self.mode = mode
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            want = {"EOF": "end of input", "INT": "an integer"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise TermSyntaxError(f"expected {want}, found {got}", tok[2], self.text)
        self.i += 1
        return tok

    def wh_guard(self, tok):
        if self.mode == WH:
            raise TermSyntaxError("negation/zero not allowed in wh mode", tok[2], self.text)

    def term(self) -> Term:
        left = self.join()
        if self.peek()[0] == "IMP":
            self.i += 1
            return Imp(left, self.term())
        return left

    def _chain(self, kind, node, sub):
        t = sub()
        while self.peek()[0] == kind:
            self.i += 1
            t = node(t, sub())
        return t

    def join(self) -> Term:
        return self._chain("JOIN", Join, self.meet)

    def meet(self) -> Term:
        return self._chain("MEET", Meet, self.fuse)

    def fuse(self) -> Term:
        return self._chain("*", Fuse, self.unary)

    def unary(self) -> Term:
        tok = self.peek()
        if tok[0] == "~":
            self.wh_guard(tok)
            self.i += 1
            return Neg(self.unary())
        if tok[0] == "INT" and self.peek(1)[0] == ".":
            self.i += 2
            k = int(tok[1])
            if k < 1:
                raise TermSyntaxError("scale factor must be >= 1", tok[2], self.text)
            return Scale(k, self.unary())
        return self.power()

    def power(self) -> Term:
        t = self.atom()
        if self.peek()[0] == "^":
            self.i += 1
            tok = self.take("INT")
            k = int(tok[1])
            if k < 1:
                raise TermSyntaxError("power exponent must be >= 1", tok[2], self.text)
            return Power(t, k)
        return t

    def atom(self) -> Term:
        tok = self.peek()
        kind, val, pos = tok
        if kind == "INT":
            self.i += 1
            if val == "1":
                return One()
            if val == "0":
                self.wh_guard(tok)
                return Zero()
            raise TermSyntaxError(f"constant {val} is not a term (only 0 and 1)", pos, self.text)
        if kind == "VAR":
            self.i += 1
            idx = _ALIAS.get(val) or int(val[1:])
            if idx < 1:
                raise TermSyntaxError("variable indices start at 1", pos, self.text)
            return Var(idx)
        if kind == "(":
            self.i += 1
            t = self.term()
            self.take(")")
            return t
        got = "end of input" if kind == "EOF" else repr(val)
        raise TermSyntaxError(f"expected a term, found {got}", pos, self.text)


def parse(text: str, mode: str = WH, arity: int | None = None) -> Term:
    """Parse ``text`` in the concrete term grammar.

    Sugar (``t^k``, ``k.t``) is preserved in the tree.  ``arity``, when
    given, must cover every variable index that occurs.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    p = _Parser(text, mode)
    t = p.term()
    p.take("EOF")
    if arity is not None and t.arity > arity:
        raise ValueError(f"term uses x{t.arity} but arity is {arity}")
    return t


# ---------------------------------------------------------------------------
# printing

# binding levels of the grammar, loosest first
_IMP, _JOIN, _MEET, _FUSE, _UNARY, _ATOM = range(6)


def _level(t: Term) -> int:
    if isinstance(t, (Imp, Oplus)):
        return _IMP
    if isinstance(t, Join):
        return _JOIN
    if isinstance(t, Meet):
        return _MEET
    if isinstance(t, Fuse):
        return _FUSE
    if isinstance(t, (Neg, Scale, Power)):
        return _UNARY
    return _ATOM


def _var_name(i: int) -> str:
    return f"x{i}"


def render(t: Term) -> str:
    """Concrete syntax that parses back to the same tree.

    ``Oplus`` has no concrete syntax; it prints as its Wajsberg unfolding.
    """
    def go(t: Term, need: int) -> str:
        s = body(t)
        return f"({s})" if _level(t) < need else s

    def body(t: Term) -> str:
        if isinstance(t, Var):
            return _var_name(t.index)
        if isinstance(t, One):
            return "1"
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, Imp):
            return f"{go(t.left, _JOIN)} -> {go(t.right, _IMP)}"
        if isinstance(t, Oplus):
            return body(Imp(Imp(t.left, Fuse(t.left, t.right)), t.right))
        if isinstance(t, Join):
            return f"{go(t.left, _JOIN)} \\/ {go(t.right, _MEET)}"
        if isinstance(t, Meet):
            return f"{go(t.left, _MEET)} /\\ {go(t.right, _FUSE)}"
        if isinstance(t, Fuse):
            return f"{go(t.left, _FUSE)} * {go(t.right, _UNARY)}"
        if isinstance(t, Neg):
            return f"~{go(t.arg, _UNARY)}"
        if isinstance(t, Scale):
            return f"{t.k}.{go(t.arg, _UNARY)}"
        if isinstance(t, Power):
            return f"{go(t.arg, _ATOM)}^{t.k}"
        raise TypeError(f"not a term: {t!r}")

    return body(t)


# ---------------------------------------------------------------------------
# desugaring

def desugar(t: Term, mode: str = WH) -> Term:
    """Expand Power, Scale and Oplus into the core signature.

    Shared subterms stay shared, so the result is a DAG of the same size.
    """
    memo: dict[int, Term] = {}

    def go(t: Term) -> Term:
        key = id(t)
        if key in memo:
            return memo[key]
        if isinstance(t, (Var, One, Zero)):
            r = t
        elif isinstance(t, Neg):
            a = go(t.arg)
            r = t if a is t.arg else Neg(a)
        elif isinstance(t, Power):
            a = go(t.arg)
            r = a
            for _ in range(t.k - 1):
                r = Fuse(r, a)
        elif isinstance(t, Scale):
            a = go(t.arg)
            r = a
            for _ in range(t.k - 1):
                r = _oplus(r, a, mode)
        elif isinstance(t, Oplus):
            r = _oplus(go(t.left), go(t.right), mode)
        else:
            l, rr = go(t.left), go(t.right)
            r = t if (l is t.left and rr is t.right) else type(t)(l, rr)
        memo[key] = r
        return r

    return go(t)


def substitute(t: Term, sigma: Sequence[Term]) -> Term:
    """Replace x_i by sigma[i-1] throughout ``t``."""
    memo: dict[int, Term] = {}

    def go(t: Term) -> Term:
        key = id(t)
        if key in memo:
            return memo[key]
        if isinstance(t, Var):
            if t.index > len(sigma):
                raise ValueError(f"no substitute given for x{t.index}")
            r = sigma[t.index - 1]
        elif isinstance(t, (One, Zero)):
            r = t
        elif isinstance(t, Neg):
            r = Neg(go(t.arg))
        elif isinstance(t, Power):
            r = Power(go(t.arg), t.k)
        elif isinstance(t, Scale):
            r = Scale(t.k, go(t.arg))
        else:
            r = type(t)(go(t.left), go(t.right))
        memo[key] = r
        return r

    return go(t)


def _oplus(a: Term, b: Term, mode: str) -> Term:
    if mode == MV:
        return Neg(Fuse(Neg(a), Neg(b)))
    return Imp(Imp(a, Fuse(a, b)), b)


# ---------------------------------------------------------------------------
# evaluation in the standard algebra

_ONE = Fraction(1)
_ZERO = Fraction(0)


def eval_term(t: Term, p: Sequence, arity: int | None = None) -> Fraction:
    """Exact value of ``t`` at the point ``p`` of [0,1]^n."""
    p = point(p)
    n = len(p) if arity is None else arity
    if len(p) != n or t.arity > n:
        raise ValueError(f"arity mismatch: term needs {t.arity} coordinates, point has {len(p)}")
    for c in p:
        if not 0 <= c <= 1:
            raise ValueError(f"coordinate {c} outside [0,1]")
    memo: dict[int, Fraction] = {}

    def ev(t: Term) -> Fraction:
        key = id(t)
        v = memo.get(key)
        if v is not None:
            return v
        if isinstance(t, Var):
            v = p[t.index - 1]
        elif isinstance(t, One):
            v = _ONE
        elif isinstance(t, Zero):
            v = _ZERO
        elif isinstance(t, Neg):
            v = 1 - ev(t.arg)
        elif isinstance(t, Power):
            v = max(_ZERO, t.k * ev(t.arg) - (t.k - 1))
        elif isinstance(t, Scale):
            v = min(_ONE, t.k * ev(t.arg))
        else:
            a, b = ev(t.left), ev(t.right)
            if isinstance(t, Fuse):
                v = max(_ZERO, a + b - 1)
            elif isinstance(t, Imp):
                v = min(_ONE, 1 - a + b)
            elif isinstance(t, Meet):
                v = min(a, b)
            elif isinstance(t, Join):
                v = max(a, b)
            else:
                v = min(_ONE, a + b)
        memo[key] = v
        return v

    return ev(t)


# ---------------------------------------------------------------------------
# positive / negative normal form

class Polarity(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"

    def __str__(self) -> str:
        return self.value


POS, NEG = Polarity.POSITIVE, Polarity.NEGATIVE


def positive_normal_form(t: Term) -> tuple[Polarity, Term]:
    """Rewrite an MV term as ``p`` (Positive) or ``~p`` (Negative), p 0/~-free.

    Subterms that are already 0/~-free are returned unchanged.
    """
    memo: dict[int, tuple[Polarity, Term]] = {}
    clean: dict[int, bool] = {}

    def is_clean(t: Term) -> bool:
        key = id(t)
        if key not in clean:
            clean[key] = not isinstance(t, (Zero, Neg)) and all(is_clean(c) for c in children(t))
        return clean[key]

    def nf(t: Term) -> tuple[Polarity, Term]:
        key = id(t)
        if key in memo:
            return memo[key]
        r = (POS, t) if is_clean(t) else _nf_node(t, nf)
        memo[key] = r
        return r

    return nf(t)


def _nf_node(t: Term, nf) -> tuple[Polarity, Term]:
    if isinstance(t, Zero):
        return NEG, One()
    if isinstance(t, Neg):
        s, p = nf(t.arg)
        return (NEG if s is POS else POS), p
    if isinstance(t, Scale):
        s, p = nf(t.arg)
        # k.~f = ~(f^k)
        return (POS, Scale(t.k, p)) if s is POS else (NEG, Power(p, t.k))
    if isinstance(t, Power):
        s, p = nf(t.arg)
        # (~f)^k = ~(k.f)
        return (POS, Power(p, t.k)) if s is POS else (NEG, Scale(t.k, p))
    if isinstance(t, Oplus):
        return nf(Neg(Fuse(Neg(t.left), Neg(t.right))))
    sf, f = nf(t.left)
    sg, g = nf(t.right)
    pp, pn, np_, nn = sf is POS and sg is POS, sf is POS and sg is NEG, \
        sf is NEG and sg is POS, sf is NEG and sg is NEG
    if isinstance(t, Fuse):
        if pp:
            return POS, Fuse(f, g)
        if pn:  # f * ~g = ~(f -> g)
            return NEG, Imp(f, g)
        if np_:  # ~f * g = ~(g -> f)
            return NEG, Imp(g, f)
        return NEG, Imp(Imp(f, Fuse(f, g)), g)  # ~f * ~g = ~(f (+) g)
    if isinstance(t, Imp):
        if pp:
            return POS, Imp(f, g)
        if pn:  # f -> ~g = ~(f * g)
            return NEG, Fuse(f, g)
        if np_:  # ~f -> g = f (+) g
            return POS, Imp(Imp(f, Fuse(f, g)), g)
        return POS, Imp(g, f)  # ~f -> ~g = g -> f
    if isinstance(t, Meet):
        if pp:
            return POS, Meet(f, g)
        if nn:  # ~f /\ ~g = ~(f \/ g)
            return NEG, Join(f, g)
        if pn:  # f /\ ~g = f * (f -> ~g) = ~(f -> f * g)
            return NEG, Imp(f, Fuse(f, g))
        return NEG, Imp(g, Fuse(g, f))
    if isinstance(t, Join):
        if pp:
            return POS, Join(f, g)
        if nn:  # ~f \/ ~g = ~(f /\ g)
            return NEG, Meet(f, g)
        if np_:  # ~f \/ g = ~(f /\ ~g)
            return POS, Imp(f, Fuse(f, g))
        return POS, Imp(g, Fuse(g, f))
    raise TypeError(f"not a term: {t!r}")


def is_positive(t: Term) -> bool:
    """True iff the value of ``t`` at (1,...,1) is 1."""
    n = t.arity
    return eval_term(t, (1,) * n) == 1
