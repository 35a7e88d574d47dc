from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyhoop.exact import (AffineSubspace, IntMatrix, affine_hull, integer_row, integer_solvable,
                            lcd, point, rational, smith_normal_form)
from polyhoop.oracle import integer_search_bruteforce

from termgen import fractions01


def test_rational_lowest_terms():
    q = rational("6/8")
    assert (q.numerator, q.denominator) == (3, 4)
    assert rational("-2/4") == F(-1, 2)
    assert rational(3) == 3


def test_rational_rejects_floats():
    with pytest.raises((TypeError, ValueError)):
        rational(0.5)


@pytest.mark.parametrize("p, d", [((F(1, 2), F(1, 3)), 6), ((1, 1), 1), ((F(2, 4), F(3, 6)), 2)])
def test_lcd(p, d):
    assert lcd(point(p)) == d


def test_affine_hull_singleton():
    h = affine_hull([(1, 1)])
    assert (h.A, h.b) == (((1, 0), (0, 1)), (1, 1))
    assert str(h) == "{x1=1, x2=1}"


def test_affine_hull_antidiagonal():
    h = affine_hull([(F(1, 2), 0), (0, F(1, 2))])
    assert (h.A, h.b) == (((2, 2),), (1,))
    assert h.contains((F(1, 2), 0)) and h.contains((0, F(1, 2)))


def test_affine_hull_diagonal():
    h = affine_hull([(0, 0), (1, 1)])
    assert (h.A, h.b) == (((1, -1),), (0,))


def test_affine_hull_full_space():
    h = affine_hull([(0, 0), (1, 0), (0, 1)])
    assert h.A == () and h.dimension == 2


def test_affine_hull_empty():
    with pytest.raises(ValueError, match="empty point set"):
        affine_hull([])


def test_integer_row_clears_and_reduces_keeping_orientation():
    assert integer_row([F(1, 2), F(1, 2)], F(1, 4)) == ((2, 2), 1)
    assert integer_row([-2, 4], 6) == ((-1, 2), 3)


def test_affine_hull_rows_start_positive():
    h = affine_hull([(0, 1), (1, 0)])
    assert (h.A, h.b) == (((1, 1),), (1,))


@pytest.mark.parametrize("A, b, want", [([[2, 2]], [1], None), ([[1]], [5], (5,)),
                                         ([[1, -1]], [0], (0, 0))])
def test_integer_solvable_examples(A, b, want):
    assert integer_solvable(IntMatrix.of(A), b) == want


def test_integer_solvable_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        integer_solvable(IntMatrix.of([[1, 2]]), [1, 2])


def test_smith_normal_form_divisibility_chain():
    A = IntMatrix.of([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    diag = [D.entries[i][i] for i in range(3)]
    assert [abs(d) for d in diag] == [2, 6, 12]
    assert all(D.entries[i][j] == 0 for i in range(3) for j in range(3) if i != j)


small_int_rows = st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=1, max_size=2)


@settings(max_examples=150, deadline=None)
@given(small_int_rows, st.lists(st.integers(-6, 6), min_size=2, max_size=2))
def test_integer_solvable_matches_bruteforce(rows, b):
    b = b[:len(rows)]
    A = IntMatrix.of(rows)
    w = integer_solvable(A, b)
    if w is not None:
        assert A.apply(w) == tuple(b)
    if integer_search_bruteforce(A, b, 5) is not None:
        assert w is not None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(fractions01(6), fractions01(6), fractions01(6)), min_size=1, max_size=4),
       st.randoms(use_true_random=False))
def test_affine_hull_permutation_invariant_and_idempotent(pts, rnd):
    h = affine_hull(pts)
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert affine_hull(shuffled) == h
    again = AffineSubspace(*[tuple(x) for x in (h.A, h.b)], h.n)
    assert again == h
    assert all(h.contains(p) for p in pts)


@settings(max_examples=100)
@given(fractions01(50), fractions01(50), fractions01(50))
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


def test_int_matrix_product():
    A = IntMatrix.of([[1, 2], [3, 4]])
    B = IntMatrix.of([[0, 1], [1, 0]])
    assert (A @ B).entries == ((2, 1), (4, 3))


def test_bruteforce_exhaustive_small():
    for a, b in product(range(-3, 4), repeat=2):
        w = integer_solvable(IntMatrix.of([[a, b]]), [1])
        assert (w is not None) == (integer_search_bruteforce([[a, b]], [1], 5) is not None)
