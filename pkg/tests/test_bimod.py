import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncg.bimod import (BasisMap, ModElem, NotRightLinear, Sym, apply_at, check_right_linear, conjugate, tensor,
                       unconjugate, upsilon, upsilon_inv)
from ncg.calculus import DZ, DZB
from ncg.models import S_SPIN, SB_SPIN
from ncg.ncalg import builtin

P = builtin("qdisk")
F = P.field
z, zb, w = P.gen("z"), P.gen("zb"), P.gen("w")
words = st.lists(st.integers(0, 2), max_size=3).map(lambda u: P.element({tuple(u): F.one}))
coeffs = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).map(lambda t: F.const(*t))
syms = st.sampled_from([S_SPIN, SB_SPIN, DZ, DZB])


@st.composite
def elems(draw, width=1):
    out = ModElem(P)
    for _ in range(draw(st.integers(1, 3))):
        key = tuple(draw(syms) for _ in range(width))
        out = out + ModElem(P, {key: draw(words).scale(draw(coeffs))})
    return out


def test_spinor_twist_rules():
    s = ModElem.basis(P, S_SPIN)
    assert s.rmul(z) == ModElem(P, {(S_SPIN,): z.scale(F.q(1))})
    assert ModElem.basis(P, DZ).rmul(zb) == ModElem(P, {(DZ,): zb.scale(F.q(-2))})
    assert ModElem.basis(P, DZ, DZ).rmul(z) == ModElem(P, {(DZ, DZ): z.scale(F.q(4))})
    assert s.rmul(w) == ModElem(P, {(S_SPIN,): w})


@settings(max_examples=40, deadline=None)
@given(elems(), words, words)
def test_bimodule_associativity(m, x, y):
    assert m.rmul(x).rmul(y) == m.rmul(x * y)
    assert m.lmul(x).lmul(y) == m.lmul(y * x)
    assert m.lmul(x).rmul(y) == m.rmul(y).lmul(x)


@settings(max_examples=40, deadline=None)
@given(elems(), elems(), words)
def test_tensor_is_balanced(m, n, x):
    assert tensor(m.rmul(x), n) == tensor(m, n.lmul(x))


@settings(max_examples=40, deadline=None)
@given(elems(), coeffs, words)
def test_conjugation_is_antilinear_and_invertible(m, c, x):
    assert conjugate(m.scale(c)) == conjugate(m).scale(c.star())
    assert unconjugate(conjugate(m)) == m
    # bar(x.m) = bar(m).x^*
    assert conjugate(m.lmul(x)) == conjugate(m).rmul(x.star())


@settings(max_examples=30, deadline=None)
@given(elems(2))
def test_upsilon_round_trip(m):
    assert upsilon_inv(upsilon(conjugate(m))) == conjugate(m)


def test_right_linearity_check_rejects_a_bad_map():
    good = {(S_SPIN,): ModElem.basis(P, S_SPIN)}
    check_right_linear(good, list(good), P, [z, zb, w])
    twisted = {(S_SPIN,): ModElem.basis(P, SB_SPIN)}
    check_right_linear(twisted, list(twisted), P, [w])
    bad = {(S_SPIN,): ModElem.basis(P, DZ)}
    with pytest.raises(NotRightLinear):
        check_right_linear(bad, list(bad), P, [z])
    with pytest.raises(NotRightLinear):
        BasisMap(bad, name="bad").verify(P, [z])


def test_apply_at_moves_coefficients_past_twisted_factors():
    T = {(S_SPIN,): ModElem(P, {(S_SPIN,): z})}
    m = ModElem.basis(P, DZ, S_SPIN)
    # dz ⊗ z s = q^2 z dz ⊗ s
    assert apply_at(m, T, 1, 1) == ModElem(P, {(DZ, S_SPIN): z.scale(F.q(2))})


def test_bar_symbols():
    e = Sym("e", 2, 1)
    assert e.bar().bar() == e
    assert e.bar().grade == -2
    assert str(e.bar()) == "bar(e)"
