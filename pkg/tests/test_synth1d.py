from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhoop.decide import is_exact_presentation, max_coexact_unifier, valid_identity
from polyhoop.pl import compile, one_set
from polyhoop.polygeo import NotPointedError
from polyhoop.polytope import Polyhedron, Polytope, same_pointset
from polyhoop.synth1d import Interval1D, components, ramp, synthesize_1d
from polyhoop.terms import One, Var, eval_term, is_wajsberg, render

GRID12 = sorted({F(a, b) for b in range(1, 13) for a in range(b + 1)})


def test_examples():
    assert synthesize_1d(Polyhedron.points(1)) == Var(1)
    assert render(synthesize_1d(Polyhedron.interval(F(1, 2), 1))) == "2.x1"
    assert synthesize_1d(Polyhedron.interval(0, 1)) == One()
    t = synthesize_1d(Polyhedron.points(0, 1))
    assert valid_identity(t, "2.x -> x") and valid_identity(t, "((x -> x^2) -> x) -> x")


def test_errors():
    with pytest.raises(NotPointedError):
        synthesize_1d(Polyhedron.points(F(1, 2)))
    with pytest.raises(ValueError):
        synthesize_1d(Polyhedron.cube(2))


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval1D(F(1, 2), F(1, 3))
    assert components(Polyhedron.points(0, 1)) == [Interval1D(0, 0), Interval1D(1, 1)]


@pytest.mark.parametrize("p", GRID12[1:])
def test_ramp_threshold(p):
    r = ramp(p, Var(1))
    for q in GRID12:
        assert (eval_term(r, (q,)) == 1) == (q >= p)


pieces = st.lists(st.sampled_from(GRID12), min_size=2, max_size=8, unique=True).map(sorted)


@settings(max_examples=40, deadline=None)
@given(pieces, st.lists(st.booleans(), min_size=4, max_size=4))
def test_one_set_equals_input(cuts, degenerate):
    ivs = [(cuts[i], cuts[i + 1]) for i in range(0, len(cuts) - 1, 2)]
    ivs = [(a, a) if d else (a, b) for (a, b), d in zip(ivs, degenerate)]
    ivs[-1] = (ivs[-1][0], F(1))
    P = Polyhedron(1, [Polytope.hull([(a,), (b,)]) for a, b in ivs])
    t = synthesize_1d(P)
    assert is_wajsberg(t)
    assert same_pointset(one_set(compile(t, 1)), P)


@pytest.mark.parametrize("lo", [F(1, 5), F(2, 3), F(0), F(5, 12)])
def test_round_trip_with_unifier(lo):
    P = Polyhedron.interval(lo, 1)
    assert is_exact_presentation(P)
    t = synthesize_1d(P)
    assert same_pointset(max_coexact_unifier([t], 1), P)
