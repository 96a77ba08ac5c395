import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg.ncalg import (GradeMismatch, NonTerminating, ParseError, StarInconsistent, UnknownGenerator, builtin,
                       check_local_confluence, critical_words, format_terms, normal_words, parse_presentation,
                       print_presentation)
from ncg.scalar import SYMBOLIC

NAMES = ("su2", "qdisk", "qdisk-localized")


@pytest.fixture(scope="module", params=NAMES)
def P(request):
    return builtin(request.param)


def random_words(P, n, max_len, seed=7):
    rng = random.Random(seed)
    k = len(P.gen_names)
    return [tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len))) for _ in range(n)]


def test_su2_normal_forms():
    P = builtin("su2")
    assert str(P.parse("d*a")) == "1 + q*b*c"
    assert str(P.parse("a*d")) == "1 + q^(-1)*b*c"
    assert str(P.parse("c*b")) == "b*c"
    assert str(P.parse("(b*c)^2*a")) == "q^4*a*b*b*c*c"
    assert P.parse("a*d - q^(-1)*b*c") == P.one()


def test_disk_normal_forms():
    P = builtin("qdisk")
    assert str(P.parse("z*zb")) == "1 - q^(-2)*w"
    assert P.parse("w") == P.parse("1 - zb*z")
    assert P.parse("z*w") == P.parse("q^(-2)*w*z")
    L = builtin("qdisk-localized")
    assert L.parse("w*winv") == L.one()
    assert L.parse("winv*w") == L.one()


@pytest.mark.parametrize("name", ["su2", "qdisk"])
def test_local_confluence_to_overlap_three(name):
    P = builtin(name)
    assert critical_words(P, 3)
    assert check_local_confluence(P, 3) == []


def test_normal_form_idempotent_on_500_random_words(P):
    for w in random_words(P, 500, 6):
        x = P.element({w: P.field.one})
        for u in x.terms:
            assert P.is_normal(u)
        assert P.element(x.terms) == x


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=3), st.lists(st.integers(0, 3), max_size=3),
       st.lists(st.integers(0, 3), max_size=3))
def test_su2_multiplication_is_associative(u, v, w):
    P = builtin("su2")
    x, y, z = (P.element({tuple(t): P.field.one}) for t in (u, v, w))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=4), st.lists(st.integers(0, 3), max_size=4))
def test_star_is_antimultiplicative_involution(u, v):
    P = builtin("su2")
    x, y = (P.element({tuple(t): P.field.one}) for t in (u, v))
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x


def test_star_on_products():
    P = builtin("su2")
    assert P.parse("a*b").star() == P.parse("-q^(-1)*c*d")
    D = builtin("qdisk")
    assert D.gen("z").star() == D.gen("zb")
    assert D.gen("w").star() == D.gen("w")


def test_grades_are_preserved_by_rewriting(P):
    for w in random_words(P, 100, 5, seed=3):
        x = P.element({w: P.field.one})
        assert set(x.grade_components()) <= {P.word_grade(w)}


def test_normal_words_enumeration():
    P = builtin("su2")
    ws = normal_words(P, 2)
    assert () in ws
    assert all(P.is_normal(w) for w in ws)
    assert (P.gen_index("a"), P.gen_index("d")) not in ws


def test_presentation_print_parse_round_trip(P):
    text = print_presentation(P)
    Q = parse_presentation(text, P.name)
    assert Q.gen_names == P.gen_names
    assert Q.grades == P.grades
    assert Q.rules == P.rules
    assert Q.star_table == P.star_table


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=5), st.integers(-3, 3))
def test_element_print_parse_round_trip(u, k):
    P = builtin("su2")
    x = P.element({tuple(u): P.field.q(k) + P.field.const(0, 1)})
    assert P.parse(format_terms(x.terms, P)) == x


def test_parse_error_reports_column():
    P = builtin("su2")
    with pytest.raises(ParseError) as e:
        P.parse("a + * b")
    assert e.value.col == 5
    with pytest.raises(UnknownGenerator):
        P.parse("a + x")


def test_presentation_errors():
    with pytest.raises(GradeMismatch):
        parse_presentation("[generators]\nx 1\ny -1\n[rules]\ny*x -> x\n")
    with pytest.raises(ParseError):
        parse_presentation("[bogus]\n")
    with pytest.raises(ParseError):
        parse_presentation("x 1\n")


def test_star_must_be_consistent():
    text = "[generators]\nx 1\ny -1\n[rules]\ny*x -> i*x*y\n[star]\nx -> y\ny -> x\n"
    with pytest.raises(StarInconsistent):
        parse_presentation(text)


def test_non_terminating_rules_are_detected():
    text = "[generators]\nx 0\ny 0\n[rules]\ny*x -> x*y\nx*y -> y*x\n"
    P = parse_presentation(text)
    with pytest.raises(NonTerminating):
        P.parse("y*x")


def test_specialized_presentation_agrees(Fs):
    P = builtin("su2")
    Q = builtin("su2", Fs)
    for w in random_words(P, 40, 4, seed=11):
        x = P.element({w: P.field.one})
        y = Q.element({w: Q.field.one})
        assert {u: Fs.coerce(c) for u, c in x.terms.items()} == y.terms


def test_builtin_field_default():
    assert builtin("su2").field == SYMBOLIC


def test_growing_rules_are_stopped():
    P = parse_presentation("[generators]\nx 0\n[rules]\nx -> x*x\n")
    with pytest.raises(NonTerminating, match="length"):
        P.parse("x")
