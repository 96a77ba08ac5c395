import itertools

import pytest

from ncg.bimod import ModElem
from ncg.calculus import (DZ, DZB, E_MINUS, E_PLUS, E_ZERO, Calculus, check_d_consistency, d_free_word,
                          disk_calculus, m2_calculus, sphere_calculus, sphere_product_failures, su2_calculus)
from ncg.ncalg import normal_words, parse_presentation, print_presentation
from ncg.scalar import qint


def gens(C):
    A = C.alg
    return A.basis() if hasattr(A, "basis") else [A.gen(n) for n in A.gen_names]


def elements(C, L, grade=None):
    A = C.alg
    if hasattr(A, "basis"):
        return [A.one()] + A.basis()
    ws = normal_words(A, L)
    return [A.element({w: A.field.one}) for w in ws if grade is None or A.word_grade(w) == grade]


@pytest.fixture(scope="module", params=["su2", "qsphere", "qdisk", "qdisk-localized", "m2"])
def C(request):
    return {"su2": su2_calculus, "qsphere": sphere_calculus, "qdisk": disk_calculus,
            "qdisk-localized": lambda: disk_calculus(localized=True), "m2": m2_calculus}[request.param]()


def test_generator_tables():
    S = su2_calculus()
    P = S.alg
    a, b, c, d = (P.gen(x) for x in "abcd")
    q = P.field.q
    assert S.d(a) == ModElem(P, {(E_ZERO,): a}) + ModElem(P, {(E_PLUS,): b.scale(q(1))})
    assert S.partial_components(d) == (P.zero(), c, d.scale(-q(-2)))
    H = sphere_calculus()
    assert H.partial_components(d) == (P.zero(), c, P.zero())
    assert H.partial_components(a)[0] == b.scale(q(1))
    assert H.partial_components(P.one()) == (P.zero(), P.zero(), P.zero())


def test_m2_d_is_graded_commutator():
    C = m2_calculus()
    M = C.alg
    assert C.d(M.E(1, 1)) == ModElem(M, {(C.s,): -M.E(1, 2), (C.t,): M.E(2, 1)})
    assert C.d1(C.d(M.E(1, 2))).is_zero()
    assert C.d(M.one()).is_zero()


def test_disk_d_of_w():
    C = disk_calculus()
    P = C.alg
    want = ModElem(P, {(DZ,): -P.gen("zb"), (DZB,): P.gen("z").scale(-P.field.q(2))})
    assert C.d(P.gen("w")) == want


def test_disk_d_of_powers_of_w():
    """d p(w) via the q-difference quotients, for p(w) = w^n, n ≤ 6."""
    C = disk_calculus()
    P = C.alg
    q = P.field.q
    w, z, zb = P.gen("w"), P.gen("z"), P.gen("zb")
    wk = P.one()
    for n in range(1, 7):
        want = (ModElem(P, {(DZB,): (wk * z).scale(-q(2) * qint(n, -2))})
                + ModElem(P, {(DZ,): (wk * zb).scale(-qint(n, 2))}))
        wk = wk * w
        assert C.d(wk) == want


def test_wedge_relations():
    D = disk_calculus()
    P = D.alg
    dz, dzb = ModElem.basis(P, DZ), ModElem.basis(P, DZB)
    assert D.wedge(dz, dz).is_zero()
    assert D.wedge(dzb, dzb).is_zero()
    assert D.wedge(dzb, dz) == D.wedge(dz, dzb).scale(-P.field.q(2))
    M = m2_calculus()
    s, t = ModElem.basis(M.alg, M.s), ModElem.basis(M.alg, M.t)
    assert M.wedge(s, t) == M.wedge(t, s)
    assert M.wedge(s, s).is_zero()


def test_star_on_forms():
    H = sphere_calculus()
    P = H.alg
    assert H.star_form(ModElem.basis(P, E_PLUS)) == ModElem(P, {(E_MINUS,): P.scalar(-P.field.q(-1))})
    M = m2_calculus()
    assert M.star_form(ModElem.basis(M.alg, M.s)) == ModElem(M.alg, {(M.t,): -M.alg.one()})
    D = disk_calculus()
    Q = D.alg
    x = Q.parse("z*w")
    # (x dz)^* = dzb x^* = q^(2|x^*|) x^* dzb
    assert D.star_form(ModElem(Q, {(DZ,): x})) == ModElem(Q, {(DZB,): x.star().scale(Q.field.q(-2))})
    assert D.star_form(D.star_form(ModElem(Q, {(DZ,): x}))) == ModElem(Q, {(DZ,): x})


def test_pq_projection():
    H = sphere_calculus()
    P = H.alg
    x, y = P.gen("a"), P.gen("b")
    m = ModElem(P, {(E_PLUS,): x, (E_MINUS,): y})
    assert H.pq_project(m, 1, 0) == ModElem(P, {(E_PLUS,): x})
    D = disk_calculus()
    assert D.pq_project(ModElem.basis(D.alg, DZB), 1, 0).is_zero()
    M = m2_calculus()
    st = ModElem.basis(M.alg, M.s) + ModElem.basis(M.alg, M.t)
    assert M.pq_project(st, 0, 1) == ModElem.basis(M.alg, M.t)


def test_d_respects_relations_and_star(C):
    if hasattr(C.alg, "rules"):
        assert check_d_consistency(C) == []
    for x in gens(C):
        assert C.d(x.star()) == C.star_form(C.d(x))


def test_leibniz_on_generator_pairs_and_words(C):
    xs = gens(C) + elements(C, 2)
    for x, y in itertools.product(xs, repeat=2):
        assert C.d(x * y) == C.d(x).rmul(y) + C.d(y).lmul(x)


def test_d_on_unit_relations():
    S = su2_calculus()
    P = S.alg
    assert d_free_word(S, tuple(P.gen_index(g) for g in "ad")) == S.d(P.parse("q^(-1)*b*c"))
    D = disk_calculus()
    Q = D.alg
    assert D.d(Q.parse("z*zb - q^(-2)*zb*z")).is_zero()


def test_d_squared_vanishes():
    H = sphere_calculus()
    for x in elements(H, 4, grade=0):
        assert H.d1(H.d(x)).is_zero()
    for C in (disk_calculus(), disk_calculus(localized=True), m2_calculus()):
        for x in elements(C, 3):
            assert C.d1(C.d(x)).is_zero()


def test_sphere_product_identity():
    H = sphere_calculus()
    P = H.alg
    xs = [P.parse(t) for t in ("b", "d", "b*d*a", "b*c*d", "d*d*c")]
    ys = [P.parse(t) for t in ("a", "c", "a*c*b", "c*c*d")]
    pairs = list(itertools.product(xs, ys))
    assert len(pairs) >= 10
    assert sphere_product_failures(H, pairs) == []


def test_sphere_two_form_relation():
    H = sphere_calculus()
    P = H.alg
    ep, em = ModElem.basis(P, E_PLUS), ModElem.basis(P, E_MINUS)
    assert H.wedge(em, ep) == H.wedge(ep, em).scale(-P.field.q(2))


def _alt_star_calculus():
    """The SU(2) calculus over a presentation with b^* = -q c, c^* = -q^-1 b."""
    S = su2_calculus()
    text = print_presentation(S.alg)
    text = text.replace("b -> -q^(-1)*c", "b -> -q*c").replace("c -> -q*b", "c -> -q^(-1)*b")
    P = parse_presentation(text, "su2-alt")
    dgen = {}
    for g in "abcd":
        m = ModElem(P)
        for k, y in S.d(S.alg.gen(g)).terms.items():
            m = m + ModElem(P, {k: P.element(y.terms)})
        dgen[g] = m
    star = {e: ModElem(P, {k: P.element(y.terms) for k, y in v.terms.items()}) for e, v in S.form_star.items()}
    return Calculus(P, S.forms, dgen, star, S.bidegree, "su2-alt")


def test_alternative_star_table_breaks_d_star():
    C = _alt_star_calculus()
    P = C.alg
    assert P.gen("b").star().star() == P.gen("b")
    fails = check_d_consistency(C)
    assert fails
    assert all("d(x*)" in f for f in fails)
