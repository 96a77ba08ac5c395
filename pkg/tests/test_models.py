import itertools

import pytest
import sympy

from ncg.bimod import ModElem, tensor
from ncg.errors import ParameterNotRepresentable, UnknownModel
from ncg.models import (E1, E2, MODEL_NAMES, F_MINUS, F_PLUS, S_SPIN, SB_SPIN, build_model, m2_clifford_form,
                        test_basis as basis_of)
from ncg.scalar import SYMBOLIC

F = SYMBOLIC


def test_sphere_parameters_resolve():
    m = build_model("qsphere", {"beta": "q"})
    assert m.params["delta"] == F.s(3)
    assert m.params["mu"] == F.q(-2)
    d = build_model("qsphere")
    assert d.describe_params() == {"alpha": "1", "beta": "1", "delta": "q", "mu": "q^(-1)"}


def test_unrepresentable_parameters():
    with pytest.raises(ParameterNotRepresentable):
        build_model("qsphere", {"beta": "2"})


def test_unknown_model():
    with pytest.raises(UnknownModel):
        build_model("torus")


def test_disk_defaults():
    m = build_model("qdisk")
    assert m.params["beta"] == -F.q(1)
    assert m.params["delta"] == F.one
    assert m.params["mu"] == F.q(-1)


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_sign_table(name):
    m = build_model(name)
    assert m.check_sign_table() is None
    assert m.data.signs == (-1, 1, -1)


def test_basis_examples():
    _, sph = basis_of(build_model("qsphere"), 2)
    P = build_model("qsphere").ring
    for x, e in (("d", F_PLUS), ("b", F_PLUS), ("a", F_MINUS), ("c", F_MINUS)):
        assert ModElem(P, {(e,): P.gen(x)}) in sph
    dm = build_model("qdisk")
    _, dsk = basis_of(dm, 2)
    Q = dm.ring
    for x, e in (("zb", S_SPIN), ("z", SB_SPIN), ("w", S_SPIN)):
        assert ModElem(Q, {(e,): Q.gen(x)}) in dsk
    _, mat = basis_of(build_model("m2"), 1)
    assert len(mat) == 8


def test_m2_clifford_form(m2):
    assert m2_clifford_form(m2) == []


def test_m2_dirac_against_sympy_pauli_matrices(m2):
    """Independent route: D = -1/2 (g1 ⊗ [g1, ] - g2 ⊗ [g2, ]) with sympy's Pauli matrices."""
    from sympy.physics.matrices import msigma
    I = sympy.I
    g1, g2 = I * msigma(1), I * msigma(2)
    assert g1 * g2 + g2 * g1 == sympy.zeros(2)
    assert g1 * g1 == -sympy.eye(2)
    assert I ** 3 * g1 * g2 == -msigma(3)
    M = m2.ring

    def to_sym(x):
        return sympy.Matrix(2, 2, [_num(c) for c in x.e])

    for comp, (i, j) in itertools.product((0, 1), itertools.product((1, 2), repeat=2)):
        v = [sympy.zeros(2), sympy.zeros(2)]
        v[comp] = to_sym(M.E(i, j))
        out = []
        for k in (0, 1):
            acc = sympy.zeros(2)
            for G, sign in ((g1, 1), (g2, -1)):
                for l in (0, 1):
                    acc += sign * G[k, l] * (G * v[l] - v[l] * G)
            out.append(-acc / 2)
        phi = ModElem(M, {((E1, E2)[comp],): M.E(i, j)})
        got = m2.data.dirac(phi)
        assert [to_sym(got.coeff(E1)), to_sym(got.coeff(E2))] == out


def _num(c):
    """Constant scalar to sympy; q does not occur in the M_2 model."""
    g = c.specialize(1)
    return sympy.Rational(g.re.numerator, g.re.denominator) + sympy.I * sympy.Rational(g.im.numerator,
                                                                                       g.im.denominator)


def test_sphere_literal_formulas(qsphere):
    S = qsphere.data
    for phi in qsphere.test_spinors(3):
        assert qsphere.literal_nabla(phi) == S.conn.apply(phi)
        for xi in qsphere.test_forms(2):
            assert qsphere.literal_sigma(phi, xi) == S.conn.sigma(tensor(phi, xi))

