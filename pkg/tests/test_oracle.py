import random
from fractions import Fraction
from math import lcm

import pytest

from polyhoop.decide import Rule, admissible, equivalence, valid_identity
from polyhoop.pl import compile
from polyhoop.exact import IntMatrix, integer_solvable
from polyhoop.oracle import (CapExceeded, GridSpec, caps, grid_check, integer_search_bruteforce,
                             one_variable_terms, refute_admissibility)
from polyhoop.terms import One, Var, eval_term, parse

from termgen import rand_term


def test_grid_check_examples():
    assert grid_check("identity", parse("(x -> y) \\/ (y -> x)"), One(), GridSpec(5, 2)) is None
    assert grid_check("identity", parse("2.x -> x"), One(), GridSpec(2, 1)) == (pytest.approx(0.5),)
    assert grid_check("identity", One(), One(), GridSpec(1, 1)) is None


def test_grid_check_quasieq():
    assert grid_check("quasieq", parse("2.x -> x"), parse("2.x"), GridSpec(4, 1)) == (0,)
    assert grid_check("quasieq", parse("x * y"), parse("x"), GridSpec(4, 2)) is None


def test_grid_check_arity_and_kind():
    with pytest.raises(ValueError):
        grid_check("identity", parse("x * y"), One(), GridSpec(3, 1))
    with pytest.raises(ValueError):
        grid_check("bogus", One(), One(), GridSpec(3, 1))


def test_grid_cap(monkeypatch):
    monkeypatch.setenv("POLYHOOP_CAPS", "grid=10")
    assert caps()["grid"] == 10
    with pytest.raises(CapExceeded, match="grid cap exceeded"):
        grid_check("identity", One(), One(), GridSpec(10, 1))


def test_bad_caps(monkeypatch):
    monkeypatch.setenv("POLYHOOP_CAPS", "frobs=3")
    with pytest.raises(ValueError):
        caps()


def test_refute_examples():
    assert refute_admissibility(Rule.of("2.x -> x", "2.x"), 4) is None
    assert refute_admissibility(Rule.of("1", "x"), 1) == (Var(1),)
    assert refute_admissibility(Rule.of("x -> x^2", "x -> x^2"), 3) is None


def test_refute_with_mv_conclusions():
    assert refute_admissibility(Rule.of("2.x -> x", "~x", "mv"), 4) == (One(),)
    assert refute_admissibility(Rule.of("2.x -> x", "0", "mv"), 4) == (One(),)


def test_enumeration_is_semantically_deduplicated():
    ts = one_variable_terms(3)
    assert ts[:2] == [Var(1), One()]
    vecs = [tuple(eval_term(t, (Fraction(i, 24),)) for i in range(25)) for t in ts]
    assert len(set(vecs)) == len(vecs)


def test_substitution_cap(monkeypatch):
    monkeypatch.setenv("POLYHOOP_CAPS", "subst=4")
    with pytest.raises(CapExceeded):
        one_variable_terms(3)


def test_refutations_never_contradict_engine():
    rng = random.Random(9)
    for _ in range(25):
        t, u = rand_term(rng, 1, 3), rand_term(rng, 1, 3)
        rule = Rule((t,), (u,))
        sigma = refute_admissibility(rule, 2)
        if sigma is not None:
            assert not admissible(rule, 1).admissible


def test_grid_counterexamples_refute_validity():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 2)
        t = rand_term(rng, n, 4)
        if grid_check("identity", t, One(), GridSpec(6, n)) is not None:
            assert not valid_identity(t, One(), n=n)


@pytest.mark.parametrize("A, b, r, want", [([[2, 2]], [1], 5, None), ([[1]], [3], 5, (3,)),
                                            ([[1, -1]], [0], 1, (0, 0))])
def test_bruteforce_examples(A, b, r, want):
    assert integer_search_bruteforce(A, b, r) == want


def test_bruteforce_cap(monkeypatch):
    monkeypatch.setenv("POLYHOOP_CAPS", "box=100")
    with pytest.raises(CapExceeded):
        integer_search_bruteforce([[1, 1, 1]], [0], 5)


def test_bruteforce_agrees_inside_box():
    rng = random.Random(2)
    for _ in range(100):
        m, n = rng.randint(1, 2), rng.randint(1, 3)
        A = IntMatrix.of([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)], n)
        b = [rng.randint(-4, 4) for _ in range(m)]
        w = integer_solvable(A, b)
        brute = integer_search_bruteforce(A, b, 5)
        if brute is not None:
            assert w is not None and A.apply(brute) == tuple(b)
        if w is not None and max(map(abs, w), default=0) <= 5:
            assert brute is not None


def test_max_denominator_grid_can_miss_a_difference():
    # the functions differ only on (1/2, 3/4); vertex denominators are 2, 3, 4
    t, u = parse("3.(x * x)"), parse("2.(x * x)")
    G = compile(equivalence(t, u), 1)
    dens = {c.denominator for cell in G.cells for v in cell.vertices for c in v}
    assert not valid_identity(t, u)
    assert grid_check("identity", t, u, GridSpec(max(dens), 1)) is None
    assert grid_check("identity", t, u, GridSpec(lcm(*dens), 1)) is not None


def test_lcm_grid_decides_random_identities():
    rng = random.Random(12)
    for _ in range(60):
        n = 1
        t, u = rand_term(rng, n, 4), rand_term(rng, n, 4)
        G = compile(equivalence(t, u), n)
        D = lcm(*{c.denominator for cell in G.cells for v in cell.vertices for c in v})
        assert valid_identity(t, u, n=n) == (grid_check("identity", t, u, GridSpec(D, n)) is None)
