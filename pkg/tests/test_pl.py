import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from polyhoop.pl import (AffinePiece, PLFunction, compile, covers, eval_pl, image, is_constant_one,
                         one_set)
from polyhoop.polytope import Polyhedron, same_pointset
from polyhoop.terms import MV, Meet, Var, eval_term, parse

from termgen import points, rand_point, rand_term, terms

BORDER = "(((x->x^2)->x)->x) \\/ (((y->y^2)->y)->y)"


def cells_1d(F_):
    return [((c.vertices[0][0], c.vertices[-1][0]), c.piece.a, c.piece.b) for c in F_.cells]


def test_compile_x_imp_x_squared():
    assert cells_1d(compile("x -> x^2")) == [((0, F(1, 2)), (-1,), 1), ((F(1, 2), 1), (1,), 0)]


def test_compile_one():
    G = compile("1", 2)
    assert len(G.cells) == 1 and G.cells[0].piece == AffinePiece((0, 0), 1)


def test_compile_scale_two():
    assert cells_1d(compile("2.x")) == [((0, F(1, 2)), (2,), 0), ((F(1, 2), 1), (0,), 1)]


def test_compile_arity_mismatch():
    with pytest.raises(ValueError, match="arity mismatch"):
        compile(parse("x * y"), 1)


def test_eval_pl_examples():
    G = compile("2.x -> x")
    assert eval_pl(G, (F(1, 4),)) == F(3, 4)
    assert eval_pl(G, (F(1, 2),)) == F(1, 2)
    with pytest.raises(ValueError):
        eval_pl(G, (F(2),))


def test_one_set_examples():
    assert one_set(compile("2.x -> x")) == Polyhedron.points(0, 1)
    assert one_set(compile("2.x")) == Polyhedron.interval(F(1, 2), 1)
    assert one_set(compile("1", 2)) == Polyhedron.cube(2)


def test_one_set_border_is_square_boundary():
    O = one_set(compile(BORDER))
    edges = Polyhedron.of(2, [(0, 0), (1, 0)], [(1, 0), (1, 1)], [(0, 1), (1, 1)], [(0, 0), (0, 1)])
    assert same_pointset(O, edges)
    assert covers(compile(BORDER), edges)


def test_is_constant_one_examples():
    assert is_constant_one(compile("(x -> y) \\/ (y -> x)"))
    assert not is_constant_one(compile("2.x -> x"))
    assert is_constant_one(compile("1"))


def test_image_examples():
    unit = Polyhedron.interval(0, 1)
    assert image([compile("x -> x^3")], unit) == Polyhedron.interval(F(1, 3), 1)
    P = Polyhedron.of(2, [(0, 0), (1, 1)], [(F(1, 2), 1)])
    assert same_pointset(image([compile("x", 2), compile("y", 2)], P), P)
    assert image([compile("1")], unit) == Polyhedron.points(1)


def test_image_arity_mismatch():
    with pytest.raises(ValueError, match="arity mismatch"):
        image([compile("x * y")], Polyhedron.interval(0, 1))


def test_json_round_trip():
    G = compile(BORDER)
    assert PLFunction.from_json(G.to_json()) == G


def test_oracle_equivalence_random():
    rng = random.Random(7)
    for mode in ("wh", MV):
        for _ in range(40):
            n = rng.randint(1, 2)
            t = rand_term(rng, n, 6, mode)
            G = compile(t, n)
            for _ in range(10):
                p = rand_point(rng, n)
                assert eval_pl(G, p) == eval_term(t, p, n), (t, p)


@settings(max_examples=60, deadline=None)
@given(terms(2), points(2))
def test_compile_matches_eval(t, p):
    assert eval_pl(compile(t, 2), p) == eval_term(t, p, 2)


@settings(max_examples=60, deadline=None)
@given(terms(2))
def test_wajsberg_functions_fix_top_and_one_sets_are_pointed(t):
    G = compile(t, 2)
    assert eval_pl(G, (1, 1)) == 1
    assert one_set(G).pointed


@settings(max_examples=40, deadline=None)
@given(terms(2, MV))
def test_cells_continuous_and_tile_the_square(t):
    G = compile(t, 2)
    values = {}
    for c in G.cells:
        for v in c.vertices:
            assert 0 <= c.piece(v) <= 1
            assert values.setdefault(v, c.piece(v)) == c.piece(v)
    assert sum(c.poly.volume() for c in G.cells) == 1


@settings(max_examples=40, deadline=None)
@given(terms(2), terms(2))
def test_one_set_of_meet_is_intersection(t, u):
    Ot, Ou = one_set(compile(t, 2)), one_set(compile(u, 2))
    Om = one_set(compile(Meet(t, u), 2))
    assert covers(compile(t, 2), Om) and covers(compile(u, 2), Om)
    # every point of the intersection is in the meet's one-set, checked on common refinement vertices
    for p in Ot.polytopes:
        for q in Ou.polytopes:
            r = p.intersect(q)
            if r is not None:
                assert all(Om.contains_point(v) for v in r.vertices)
                assert Om.contains_point(r.centroid())


def test_compile_is_cached_and_accepts_strings():
    assert compile("x -> x^2") is compile(parse("x -> x^2"), 1)
    assert compile(Var(1)).n == 1
