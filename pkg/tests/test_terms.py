from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings

from polyhoop.terms import (MV, NEG, POS, WH, Fuse, Imp, Join, Meet, ModeError, Neg, One, Oplus,
                            Power, Scale, TermSyntaxError, Var, Zero, desugar, eval_term,
                            is_positive, is_wajsberg, parse, positive_normal_form, render,
                            substitute)

from termgen import points, terms

x, y = Var(1), Var(2)


def test_parse_implication_of_product():
    assert parse("x1 -> x1*x1") == Imp(x, Fuse(x, x))


def test_parse_keeps_scale_sugar():
    assert parse("2.x1 -> x1") == Imp(Scale(2, x), x)


def test_parse_rejects_negation_in_wh():
    with pytest.raises(TermSyntaxError, match="negation/zero not allowed in wh mode"):
        parse("~x1")
    with pytest.raises(TermSyntaxError, match="position 5"):
        parse("x -> 0")


def test_check_mode_on_built_terms():
    from polyhoop.terms import check_mode
    with pytest.raises(ModeError, match="negation/zero not allowed in wh mode"):
        check_mode(Neg(x), WH)
    assert check_mode(Neg(x), MV) == Neg(x)


def test_parse_accepts_negation_in_mv():
    assert parse("~x1", MV) == Neg(x)
    assert parse("0", MV) == Zero()


def test_aliases():
    assert parse("x /\\ y \\/ z") == Join(Meet(x, y), Var(3))


def test_implication_is_right_associative_and_loosest():
    assert parse("x -> y -> x") == Imp(x, Imp(y, x))
    assert parse("x * y -> x \\/ y") == Imp(Fuse(x, y), Join(x, y))


def test_precedence_chain():
    assert parse("x \\/ y /\\ x * y") == Join(x, Meet(y, Fuse(x, y)))
    assert parse("2.x^3") == Scale(2, Power(x, 3))
    assert parse("~x^2", MV) == Neg(Power(x, 2))


def test_syntax_error_position():
    with pytest.raises(TermSyntaxError) as e:
        parse("x -> (")
    assert e.value.position == 6
    assert "position 6" in str(e.value)


@pytest.mark.parametrize("bad", ["", "x ->", "x y", "(x", "x^0", "0.x", "x )", "x1 -> #"])
def test_syntax_errors(bad):
    with pytest.raises(TermSyntaxError):
        parse(bad, MV)


def test_render():
    assert render(parse("x -> x^2")) == "x1 -> x1^2"
    assert render(parse("(x -> y) -> z")) == "(x1 -> x2) -> x3"
    assert render(parse("2.x -> x")) == "2.x1 -> x1"


def test_eval_examples():
    p = (F(3, 4), F(1, 2))
    assert eval_term(Fuse(x, y), p) == F(1, 4)
    assert eval_term(Imp(x, y), p) == F(3, 4)
    assert eval_term(Scale(2, x), (F(1, 3),)) == F(2, 3)


def test_eval_errors():
    with pytest.raises(ValueError):
        eval_term(x, (F(3, 2),))
    with pytest.raises(ValueError):
        eval_term(y, (F(1, 2),))


def test_oplus_desugars_by_mode():
    t = Oplus(x, y)
    assert desugar(t, WH) == Imp(Imp(x, Fuse(x, y)), y)
    assert desugar(t, MV) == Neg(Fuse(Neg(x), Neg(y)))


def test_power_and_scale_desugar():
    assert desugar(Power(x, 3)) == Fuse(Fuse(x, x), x)
    assert desugar(Scale(2, x)) == Imp(Imp(x, Fuse(x, x)), x)


@pytest.mark.parametrize("text, pol, normal", [
    ("~(x * ~y)", POS, "x -> y"),
    ("~x -> ~y", POS, "y -> x"),
    ("~(~x * ~y)", POS, "(x -> x * y) -> y"),
    ("0", NEG, "1"),
])
def test_normal_form_examples(text, pol, normal):
    assert positive_normal_form(parse(text, MV)) == (pol, parse(normal))


def test_normal_form_leaves_positive_terms_alone():
    t = parse("2.x -> x^3")
    assert positive_normal_form(t) == (POS, t)


@pytest.mark.parametrize("t, want", [(Join(x, Neg(x)), True), (Neg(x), False), (One(), True)])
def test_is_positive(t, want):
    assert is_positive(t) is want


def test_substitute():
    t = parse("x -> x * y")
    assert substitute(t, [One(), Scale(2, x)]) == Imp(One(), Fuse(One(), Scale(2, x)))
    with pytest.raises(ValueError):
        substitute(t, [x])


def test_shared_subterms_hash_fast():
    t = x
    for _ in range(200):
        t = Fuse(t, t)  # 2^200 paths; hashing must not walk them
    assert hash(t) == hash(t) and t == t


@settings(max_examples=150, deadline=None)
@given(terms(2, MV) | terms(3, WH).map(lambda t: Oplus(t, t)))
def test_render_parse_round_trip(t):
    # Oplus is printed as its wh unfolding, so compare wh desugarings
    back = parse(render(t), MV)
    assert desugar(back, WH) == desugar(t, WH)


@settings(max_examples=120, deadline=None)
@given(terms(2, MV, max_leaves=10))
def test_normal_form_sound_on_grid(t):
    pol, p = positive_normal_form(t)
    assert is_wajsberg(p)
    grid = [F(i, 7) for i in range(8)]
    for q in product(grid, repeat=2):
        v, w = eval_term(t, q, 2), eval_term(p, q, 2)
        assert v == (w if pol is POS else 1 - w)


@settings(max_examples=150, deadline=None)
@given(terms(2, MV))
def test_polarity_is_value_at_one(t):
    pol, _ = positive_normal_form(t)
    v = eval_term(t, (1, 1), 2)
    assert v in (0, 1)
    assert (pol is POS) == (v == 1) == is_positive(t)


@settings(max_examples=100, deadline=None)
@given(terms(2, WH), points(2))
def test_wajsberg_terms_in_unit_interval(t, p):
    assert 0 <= eval_term(t, p, 2) <= 1
    assert eval_term(t, (1, 1), 2) == 1
