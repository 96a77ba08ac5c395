"""The built-in geometries: M_2, the standard q-sphere and the quantum disk."""
from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .bimod import ModElem, Sym, tensor
from .calculus import (DZ, DZB, E_MINUS, E_PLUS, disk_calculus, m2_calculus, sphere_calculus)
from .connect import (ChernConnection, Connection, HermMetric, Holomorphic, chern_apply_free, chern_braiding_failures,
                      chern_connection, holomorphic_part_failures, metric_preservation_failures, perturbed,
                      projector_identity_failures)
from .errors import NcgError, ParameterNotRepresentable, UnknownModel
from .ncalg import AlgElem, normal_words, parse_scalar
from .scalar import SYMBOLIC, Field, qint
from .spectral import (SIGN_TABLE, CheckFailed, CheckResult, DiskIntegral, HaarState, SpectralData, TraceState,
                       run_check)


class ConstraintViolated(NcgError):
    pass


F_PLUS = Sym("f+", 1, 0)
F_MINUS = Sym("f-", -1, 0)
S_SPIN = Sym("s", 0, 1)
SB_SPIN = Sym("sb", 0, 1)
E1 = Sym("e1", 0, 0)
E2 = Sym("e2", 0, 0)

MODEL_NAMES = ("m2", "qsphere", "qdisk", "qdisk-localized")


def _elem(R, key, c):
    return ModElem(R, {} if c.is_zero() else {key: c})


def _sqrt(x, what):
    try:
        return x.sqrt()
    except ValueError:
        raise ParameterNotRepresentable(f"{what} = {x} has no square root in the scalar field") from None


def _resolve(raw: Dict[str, object], defaults: Dict[str, object], field: Field):
    unknown = set(raw) - set(defaults)
    if unknown:
        raise NcgError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    out = {}
    for k, dflt in defaults.items():
        v = raw.get(k, dflt)
        if isinstance(v, str):
            v = parse_scalar(v, field)
        out[k] = field.coerce(v)
    return out


class Model:
    """A fully wired geometry: calculus, spinors, connection, Clifford action, J, gamma, state."""

    name = "model"
    sigma_anchor = "twisted-isometry"

    def __init__(self, data: SpectralData, params: Dict[str, object]):
        self.data = data
        self.params = params

    @property
    def calc(self):
        return self.data.calc

    @property
    def ring(self):
        return self.data.ring

    @property
    def field(self):
        return self.data.field

    # declared by subclasses
    strict_isometry_expected = True
    declares_sufficient = False

    def test_algebra(self, N: int) -> List:
        raise NotImplementedError

    def algebra_generators(self) -> List:
        raise NotImplementedError

    def test_spinors(self, N: int) -> List[ModElem]:
        raise NotImplementedError

    def test_forms(self, N: int) -> List[ModElem]:
        raise NotImplementedError

    def bimodule_scalars(self, N: int) -> List:
        """Algebra elements over which the spinor bundle is a bimodule (for right linearity)."""
        return self.test_algebra(N)

    def herm_pairs(self, N: int):
        sp = self.test_spinors(N)
        return [(a, b) for a in sp for b in sp]

    def herm_boundary_pairs(self):
        return []

    def isometry_pairs(self, N: int):
        """Pairs (x, y, e) for the twisted isometry identity on x.e, y.e."""
        return []

    def kappas(self) -> List[ModElem]:
        return self.test_forms(3)[:5]

    def check_sign_table(self) -> Optional[str]:
        want = SIGN_TABLE[self.data.n % 8]
        if tuple(self.data.signs) != want:
            return f"declared signs {self.data.signs} differ from {want} at n = {self.data.n}"
        return None

    def describe_params(self) -> Dict[str, str]:
        return {k: str(v) for k, v in self.params.items()}


# M_2 ---------------------------------------------------------------------------------

class M2Model(Model):
    name = "m2"
    declares_sufficient = True

    def __init__(self, params=None, field: Field = SYMBOLIC):
        params = _resolve(params or {}, {}, field)
        C = m2_calculus(field)
        M = C.alg
        one = M.one()
        s, t = C.s, C.t
        conn = Connection(C, [E1, E2], {E1: ModElem(M), E2: ModElem(M)},
                          sigma={(e, f): ModElem(M, {(f, e): one}) for e in (E1, E2) for f in (s, t)},
                          sigma_inv={(f, e): ModElem(M, {(e, f): one}) for e in (E1, E2) for f in (s, t)},
                          name="nabla_S")
        cl = {(s, E2): ModElem(M, {(E1,): one}), (t, E1): ModElem(M, {(E2,): one}),
              (s, E1): ModElem(M), (t, E2): ModElem(M)}
        j = {E1: ModElem(M, {(E2.bar(),): one}), E2: ModElem(M, {(E1.bar(),): -one})}
        pairing = {(E1, E1): one, (E2, E2): one}
        data = SpectralData("m2", conn, [E1, E2], cl, j, {E1: -1, E2: 1}, pairing, TraceState(),
                            n=2, signs=(-1, 1, -1), params=params)
        super().__init__(data, params)

    def test_algebra(self, N):
        M = self.ring
        return [M.one()] + M.basis() + [M.element(((1, 2), (3, 4))), M.element(((0, self.field.const(0, 1)), (1, 0)))]

    def algebra_generators(self):
        return self.ring.basis()

    def test_spinors(self, N):
        M = self.ring
        return [ModElem(M, {(e,): x}) for e in (E1, E2) for x in M.basis()]

    def test_forms(self, N):
        C = self.calc
        M = self.ring
        out = []
        for x in M.basis():
            out.append(ModElem(M, {(C.s,): x}))
            out.append(ModElem(M, {(C.t,): x}))
        return out

    def kappas(self):
        C = self.calc
        M = self.ring
        i = self.field.const(0, 1)
        return [ModElem(M, {(C.s,): M.E(1, 2), (C.t,): -M.E(2, 1)}),
                ModElem(M, {(C.s,): M.E(1, 1)}),
                ModElem(M, {(C.t,): M.E(2, 2).scale(i)}),
                ModElem(M, {(C.s,): M.E(2, 1), (C.t,): M.E(1, 2)}),
                ModElem(M, {(C.s,): M.element(((1, 2), (3, 4))), (C.t,): M.one()})]

    def isometry_pairs(self, N):
        return []


def _pauli_gammas(M):
    """gamma^1 = i sigma^1, gamma^2 = i sigma^2 and the grading -sigma^3."""
    i = M.field.const(0, 1)
    g1 = M.element(((0, i), (i, 0)))
    g2 = M.element(((0, 1), (-1, 0)))
    return g1, g2, M.element(((-1, 0), (0, 1)))


def _vec_op(G, comps, inner):
    """(G ⊗ inner) on C^2 ⊗ M_2 written as a pair of matrices."""
    a, b, c, d = G.e
    x, u = inner(comps[0]), inner(comps[1])
    return (x.scale(a) + u.scale(b), x.scale(c) + u.scale(d))


def m2_clifford_form(model: M2Model) -> List[str]:
    """Compare the model with the Pauli-matrix presentation on the 8 basis spinors.

    D = -1/2 (gamma^1 ⊗ [gamma^1, ] - gamma^2 ⊗ [gamma^2, ]),  gamma = i^3 gamma^1 gamma^2 = -sigma^3,
    J = C ⊗ ( )^*  with  C(v1, v2) = (-conj v2, conj v1)."""
    M = model.ring
    F = M.field
    g1, g2, g = _pauli_gammas(M)
    one, zero = M.one(), M.zero()
    fails = []
    i = F.const(0, 1)
    for a, b in ((g1, g1), (g2, g2), (g1, g2)):
        want = one.scale(-2) if a is b else zero
        if a * b + b * a != want:
            fails.append("Clifford relation {gamma^i, gamma^j} = -2 delta fails")
    if g1 * g2 * (i * i * i) != g:
        fails.append("i^3 gamma^1 gamma^2 != -sigma^3")

    def C(v):
        return (-v[1].star(), v[0].star())

    def comm(G):
        return lambda m: G * m - m * G

    half = F.coerce(-1) / F.coerce(2)
    for phi in model.test_spinors(0):
        v = (phi.coeff(E1), phi.coeff(E2))
        p1 = _vec_op(g1, v, comm(g1))
        p2 = _vec_op(g2, v, comm(g2))
        D = tuple((p1[k] - p2[k]).scale(half) for k in (0, 1))
        got = model.data.dirac(phi)
        if (got.coeff(E1), got.coeff(E2)) != D:
            fails.append(f"D differs from the Clifford form on {phi}")
        got = model.data.J(phi)
        if (got.coeff(E1), got.coeff(E2)) != C(v):
            fails.append(f"J differs from C ⊗ ( )^* on {phi}")
        got = model.data.gamma(phi)
        if (got.coeff(E1), got.coeff(E2)) != _vec_op(g, v, lambda m: m):
            fails.append(f"gamma differs from -sigma^3 on {phi}")
        if C(C(v)) != (-v[0], -v[1]):
            fails.append("C^2 != -1")
    return fails


# q-sphere -------------------------------------------------------------------------------

class SphereModel(Model):
    """Spinors x.f+ and y.f- with |x| = -1, |y| = 1 inside the free C_q[SU2]-module on f+, f-."""

    name = "qsphere"
    strict_isometry_expected = False

    def __init__(self, params=None, field: Field = SYMBOLIC):
        p = _resolve(params or {}, {"alpha": 1, "beta": 1}, field)
        q = field.q
        alpha, beta = p["alpha"], p["beta"]
        if alpha.is_zero() or beta.is_zero():
            raise ConstraintViolated("alpha and beta must be nonzero")
        ratio = beta * q(2) / alpha.star()
        if not ratio.is_real():
            raise ConstraintViolated("beta / alpha* must be real")
        delta = _sqrt(ratio, "delta^2")
        mu = q(1) / (delta * delta)
        # the parameter equations, verified exactly
        if delta * delta * alpha.star() != beta * q(2):
            raise ConstraintViolated("delta^2 alpha* = beta q^2 fails")
        if beta.star() * q(1) * mu != alpha:
            raise ConstraintViolated("beta* q mu = alpha fails")
        p.update(delta=delta, mu=mu)
        C = sphere_calculus(field)
        P = C.alg
        one = P.one()
        zero = ModElem(P)
        forms = [E_PLUS, E_MINUS]
        conn = Connection(C, [F_PLUS, F_MINUS], {F_PLUS: zero, F_MINUS: zero},
                          sigma={(f, e): ModElem(P, {(e, f): one}) for f in (F_PLUS, F_MINUS) for e in forms},
                          sigma_inv={(e, f): ModElem(P, {(f, e): one}) for f in (F_PLUS, F_MINUS) for e in forms},
                          name="nabla_S")
        cl = {(E_MINUS, F_PLUS): ModElem(P, {(F_MINUS,): P.scalar(beta * q(1))}),
              (E_PLUS, F_MINUS): ModElem(P, {(F_PLUS,): P.scalar(alpha * q(-1))}),
              (E_PLUS, F_PLUS): zero, (E_MINUS, F_MINUS): zero}
        j = {F_PLUS: ModElem(P, {(F_MINUS.bar(),): P.scalar(delta)}),
             F_MINUS: ModElem(P, {(F_PLUS.bar(),): P.scalar(-delta.inverse())})}
        pairing = {(F_PLUS, F_PLUS): one, (F_MINUS, F_MINUS): P.scalar(mu)}
        data = SpectralData("qsphere", conn, [F_PLUS, F_MINUS], cl, j, {F_PLUS: 1, F_MINUS: -1}, pairing,
                            HaarState(P), n=2, signs=(-1, 1, -1), params=p,
                            iso_factor={F_PLUS: q(1), F_MINUS: q(-1)})
        super().__init__(data, p)

    def _words(self, N, grade):
        P = self.ring
        return [P.element({w: self.field.one}) for w in normal_words(P, N) if P.word_grade(w) == grade]

    def test_algebra(self, N):
        return self._words(N, 0)

    def algebra_generators(self):
        return [self.ring.parse(t) for t in ("a*b", "b*c", "d*c")]

    def test_spinors(self, N):
        out = []
        for e, g in ((F_PLUS, -1), (F_MINUS, 1)):
            out += [self.data.spinor(x, e) for x in self._words(max(N - 1, 1), g)]
        return out

    def test_forms(self, N):
        out = []
        for e, g in ((E_PLUS, -2), (E_MINUS, 2)):
            out += [ModElem(self.ring, {(e,): x}) for x in self._words(max(N - 1, 2), g)]
        return out

    def kappas(self):
        P = self.ring
        return [ModElem(P, {(E_PLUS,): P.parse(t)}) for t in ("b^2", "d*b")] + \
               [ModElem(P, {(E_MINUS,): P.parse(t)}) for t in ("a^2", "a*c")] + \
               [ModElem(P, {(E_PLUS,): P.parse("d^2"), (E_MINUS,): P.parse("c^2")})]

    def isometry_pairs(self, N):
        out = []
        for e, g in ((F_PLUS, -1), (F_MINUS, 1)):
            ws = self._words(max(N - 1, 1), g)
            out += [(x, y, e) for x in ws for y in ws]
        return out

    def strict_counterexample_pair(self):
        b = self.ring.gen("b")
        return (self.data.spinor(b, F_PLUS), self.data.spinor(b, F_PLUS))

    # the monopole formulas written with k = a ⊗ d - q^-1 c ⊗ b and k~ = d ⊗ a - q b ⊗ c
    def literal_nabla(self, phi: ModElem) -> ModElem:
        C = self.calc
        P = self.ring
        q = self.field.q
        a, b, c, d = (P.gen(g) for g in "abcd")
        out = ModElem(P)
        for (e,), x in phi.terms.items():
            dx = C.d(x)
            if e == F_PLUS:
                pairs = [(a, d, 1), (c, b, -q(-1))]
            else:
                pairs = [(d, a, 1), (b, c, -q(1))]
            for k1, k2, co in pairs:
                out = out + tensor(dx.rmul(k1), ModElem(P, {(e,): k2})).scale(co)
        return out

    def literal_sigma(self, phi: ModElem, xi: ModElem) -> ModElem:
        """sigma_S(x f± ⊗ f e) = x f e (k or k~) f±, for phi = x f± and xi = f e."""
        P = self.ring
        q = self.field.q
        a, b, c, d = (P.gen(g) for g in "abcd")
        out = ModElem(P)
        for (e,), x in phi.terms.items():
            pairs = [(a, d, 1), (c, b, -q(-1))] if e == F_PLUS else [(d, a, 1), (b, c, -q(1))]
            for k1, k2, co in pairs:
                out = out + tensor(xi.lmul(x).rmul(k1), ModElem(P, {(e,): k2})).scale(co)
        return out


# quantum disk ------------------------------------------------------------------------------

class DiskModel(Model):
    name = "qdisk"
    strict_isometry_expected = False

    def __init__(self, params=None, field: Field = SYMBOLIC, localized: bool = False):
        p = _resolve(params or {}, {"alpha": 1, "beta": -field.q(1)}, field)
        q = field.q
        alpha, beta = p["alpha"], p["beta"]
        if alpha.is_zero() or beta.is_zero():
            raise ConstraintViolated("alpha and beta must be nonzero")
        ratio = -beta.star() / (q(1) * alpha)
        if not ratio.is_real():
            raise ConstraintViolated("-beta* / (q alpha) must be real")
        delta = _sqrt(ratio, "delta^2")
        mu = q(-1) / (delta * delta)
        if delta * delta * q(1) * alpha != -beta.star():
            raise ConstraintViolated("delta^2 q alpha = -beta* fails")
        if mu * beta != -alpha.star():
            raise ConstraintViolated("mu beta = -alpha* fails")
        p.update(delta=delta, mu=mu)
        C = disk_calculus(field, localized=localized)
        P = C.alg
        one = P.one()
        zero = ModElem(P)
        w = P.gen("w")
        sig, sig_inv = {}, {}
        for s_ in (S_SPIN, SB_SPIN):
            for f, k in ((DZ, 1), (DZB, -1)):
                sig[(s_, f)] = ModElem(P, {(f, s_): P.scalar(q(k))})
                sig_inv[(f, s_)] = ModElem(P, {(s_, f): P.scalar(q(-k))})
        conn = Connection(C, [S_SPIN, SB_SPIN], {S_SPIN: zero, SB_SPIN: zero}, sig, sig_inv, "nabla_S")
        cl = {(DZ, SB_SPIN): ModElem(P, {(S_SPIN,): w.scale(alpha)}),
              (DZB, S_SPIN): ModElem(P, {(SB_SPIN,): w.scale(beta)}),
              (DZ, S_SPIN): zero, (DZB, SB_SPIN): zero}
        j = {S_SPIN: ModElem(P, {(SB_SPIN.bar(),): P.scalar(delta)}),
             SB_SPIN: ModElem(P, {(S_SPIN.bar(),): P.scalar(-delta.inverse())})}
        pairing = {(S_SPIN, S_SPIN): w, (SB_SPIN, SB_SPIN): w.scale(mu)}
        data = SpectralData("qdisk-localized" if localized else "qdisk", conn, [S_SPIN, SB_SPIN], cl, j,
                            {S_SPIN: 1, SB_SPIN: -1}, pairing, DiskIntegral(P), n=2, signs=(-1, 1, -1),
                            params=p, iso_factor={S_SPIN: q(-1), SB_SPIN: q(1)})
        super().__init__(data, p)
        self.localized = localized
        if localized:
            self.name = "qdisk-localized"

    def _words(self, N, grade=None):
        P = self.ring
        winv = P.gen_index("winv") if "winv" in P.index else None
        return [P.element({w: self.field.one}) for w in normal_words(P, N)
                if (grade is None or P.word_grade(w) == grade) and (winv is None or winv not in w)]

    def test_algebra(self, N):
        return self._words(N)

    def algebra_generators(self):
        return [self.ring.gen("z"), self.ring.gen("zb")]

    def test_spinors(self, N):
        return [self.data.spinor(x, e) for e in (S_SPIN, SB_SPIN) for x in self._words(max(N - 1, 1))]

    def test_forms(self, N):
        return [ModElem(self.ring, {(f,): x}) for f in (DZ, DZB) for x in self._words(max(N - 2, 1))]

    def kappas(self):
        P = self.ring
        return [ModElem(P, {(DZ,): P.parse(t)}) for t in ("1", "zb", "w")] + \
               [ModElem(P, {(DZB,): P.parse("z")}), ModElem(P, {(DZ,): P.parse("w*zb"), (DZB,): P.parse("w*z")})]

    def _bare_zb(self, x: AlgElem) -> bool:
        return not x.coeff((self.ring.gen_index("zb"),)).is_zero()

    def herm_pairs(self, N):
        """Pairs whose hermiticity defect avoids the boundary term: no bare zb in a* b."""
        sp = self.test_spinors(N)
        out = []
        for phi in sp:
            for psi in sp:
                (e1,), x = next(iter(phi.terms.items()))
                (e2,), y = next(iter(psi.terms.items()))
                if e1 == e2:
                    out.append((phi, psi))
                    continue
                # the defect only involves the product of the sb-coefficient's star with the s-coefficient
                prod = x.star() * y if e1 == SB_SPIN else y.star() * x
                if not self._bare_zb(prod):
                    out.append((phi, psi))
        P = self.ring
        zb, w = P.gen("zb"), P.gen("w")
        for m in range(1, 6):
            a = zb * w ** m
            out.append((self.data.spinor(P.one(), SB_SPIN), self.data.spinor(a, S_SPIN)))
            out.append((self.data.spinor(a.star(), SB_SPIN), self.data.spinor(P.one(), S_SPIN)))
        return out

    def herm_boundary_pairs(self):
        P = self.ring
        return [(self.data.spinor(P.one(), SB_SPIN), self.data.spinor(P.gen("zb"), S_SPIN))]

    def isometry_pairs(self, N):
        out = []
        ws = self._words(max(N - 1, 1))
        for e in (S_SPIN, SB_SPIN):
            out += [(x, y, e) for x in ws for y in ws]
        return out

    def strict_counterexample_pair(self):
        P = self.ring
        w = P.gen("w")
        return (self.data.spinor(w, S_SPIN), self.data.spinor(w, S_SPIN))


# holomorphic bundles for the Chern construction ----------------------------------------------

CHERN_BUNDLES = ("m2-omega10", "qsphere-splus", "qsphere-omega10", "qdisk-omega10", "qdisk-splus")


@dataclass
class ChernBundle:
    name: str
    hol: Holomorphic
    metric: HermMetric
    samples: List[ModElem]
    algebra: List
    expected: Dict[str, object] = dc_field(default_factory=dict)
    note: str = ""

    @property
    def calc(self):
        return self.metric.calc

    def connection(self) -> ChernConnection:
        return chern_connection(self.hol, self.metric, self.name)


def _su2_uv(P, q):
    """u = (d, b) and v = (a, -q^-1 c):  sum_k v_k u_k = 1 and u^* = v, so P = u v is a hermitian projector."""
    a, b, c, d = (P.gen(g) for g in "abcd")
    return [d, b], [a, c.scale(-q(-1))]


def _m2_omega10(field_):
    C = m2_calculus(field_)
    M = C.alg
    s, t = C.s, C.t
    one = M.one()
    hol = Holomorphic(C, {s: ModElem(M, {(t, s): M.E(2, 1).scale(2)})},
                      sigma01={(s, t): ModElem(M, {(t, s): -one})})
    g = HermMetric(C, [s], {(s, s): one}, [ModElem(M, {(s,): one})], [{s: one}], [[one]], "Omega^{1,0}")
    samples = [ModElem(M, {(s,): x}) for x in M.basis() + [M.element(((1, 2), (3, 4)))]]
    expected = {
        "nabla(s)": ModElem(M, {(s, s): M.E(1, 2).scale(2), (t, s): M.E(2, 1).scale(2)}),
        "gamma_plus": [[ModElem(M, {(s,): M.E(1, 2).scale(-2)})]],
    }
    return ChernBundle("m2-omega10", hol, g, samples, M.basis(), expected)


def _sphere_words(P, N, grade):
    return [P.element({w: P.field.one}) for w in normal_words(P, N) if P.word_grade(w) == grade]


def _qsphere_splus(field_):
    C = sphere_calculus(field_)
    P = C.alg
    q = field_.q
    u, v = _su2_uv(P, q)
    one = P.one()
    hol = Holomorphic(C, {}, sigma01={(F_PLUS, E_MINUS): ModElem(P, {(E_MINUS, F_PLUS): one})})
    gens = [ModElem(P, {(F_PLUS,): x}) for x in u]
    Pm = [[ui * vk for vk in v] for ui in u]
    g = HermMetric(C, [F_PLUS], {(F_PLUS, F_PLUS): one}, gens, [{F_PLUS: vk} for vk in v], Pm, "S+",
                   note="<x f+, bar(y f+)> = x y^*, with the q factor of the side switch absorbed")
    samples = [ModElem(P, {(F_PLUS,): x}) for x in _sphere_words(P, 3, -1)]
    monopole = build_model("qsphere", field=field_)
    return ChernBundle("qsphere-splus", hol, g, samples, _sphere_words(P, 2, 0),
                       {"monopole": monopole}, g.note)


def _qsphere_omega10(field_):
    C = sphere_calculus(field_)
    P = C.alg
    q = field_.q
    u, v = _su2_uv(P, q)
    one = P.one()
    hol = Holomorphic(C, {})
    idx = [(i, j) for i in range(2) for j in range(2)]
    gens = [ModElem(P, {(E_PLUS,): u[j] * u[i]}) for i, j in idx]
    duals = [{E_PLUS: v[i] * v[j]} for i, j in idx]
    Pm = [[u[j] * u[i] * v[k] * v[l] for k, l in idx] for i, j in idx]
    g = HermMetric(C, [E_PLUS], {(E_PLUS, E_PLUS): one}, gens, duals, Pm, "Omega^{1,0}",
                   note="<x e+, bar(y e+)> = x y^*")
    samples = [ModElem(P, {(E_PLUS,): x}) for x in _sphere_words(P, 4, -2)]
    return ChernBundle("qsphere-omega10", hol, g, samples, _sphere_words(P, 2, 0), {}, g.note)


def _qdisk_omega10(field_):
    C = disk_calculus(field_, localized=True)
    P = C.alg
    w, winv, zb = P.gen("w"), P.gen("winv"), P.gen("zb")
    one = P.one()
    hol = Holomorphic(C, {})
    g = HermMetric(C, [DZ], {(DZ, DZ): w * w}, [ModElem(P, {(DZ,): one})], [{DZ: one}], [[winv * winv]],
                   "Omega^{1,0}")
    two = qint(2, -2, field_)
    expected = {"gamma_plus": [[ModElem(P, {(DZ,): (zb * winv).scale(two)})]]}
    return ChernBundle("qdisk-omega10", hol, g, _disk_samples(P, DZ), _disk_algebra(P), expected)


def _qdisk_splus(field_):
    model = DiskModel(None, field_, localized=True)
    C = model.calc
    P = C.alg
    w, winv, zb = P.gen("w"), P.gen("winv"), P.gen("zb")
    one = P.one()
    c = model.params["delta"] * model.params["delta"] * model.params["mu"]
    hol = Holomorphic(C, {})
    g = HermMetric(C, [S_SPIN], {(S_SPIN, S_SPIN): w.scale(c)}, [ModElem(P, {(S_SPIN,): one})],
                   [{S_SPIN: one}], [[winv.scale(c.inverse())]], "S+",
                   note="<a s, bar(b s)> = delta^2 mu a w b^*")
    expected = {"gamma_plus": [[ModElem(P, {(DZ,): zb * winv})]]}
    return ChernBundle("qdisk-splus", hol, g, _disk_samples(P, S_SPIN), _disk_algebra(P), expected, g.note)


def _disk_algebra(P):
    return [P.parse(t) for t in ("z", "zb", "w", "winv", "z*w")]


def _disk_samples(P, sym):
    xs = [P.parse(t) for t in ("1", "z", "zb", "w", "winv", "z^2", "zb*w", "z*winv", "w^2")]
    return [ModElem(P, {(sym,): x}) for x in xs]


_BUNDLES = {"m2-omega10": _m2_omega10, "qsphere-splus": _qsphere_splus, "qsphere-omega10": _qsphere_omega10,
            "qdisk-omega10": _qdisk_omega10, "qdisk-splus": _qdisk_splus}


def chern_bundle(name: str, field_: Field = SYMBOLIC) -> ChernBundle:
    if name not in _BUNDLES:
        raise UnknownModel(f"unknown bundle {name!r}; known: {', '.join(CHERN_BUNDLES)}")
    return _BUNDLES[name](field_)


def literal_omega10_nabla(C, x) -> ModElem:
    """pi dx . k1 k1' ⊗ k2' k2 e+  with two copies of k = a ⊗ d - q^-1 c ⊗ b."""
    P = C.alg
    u, v = _su2_uv(P, P.field.q)
    dx = C.d(x)
    out = ModElem(P)
    for i in range(2):
        for j in range(2):
            out = out + tensor(dx.rmul(v[i] * v[j]), ModElem(P, {(E_PLUS,): u[j] * u[i]}))
    return out


def _first_fail(fails):
    if fails:
        raise CheckFailed(fails[0] + (f" (and {len(fails) - 1} more)" if len(fails) > 1 else ""))


def _reference_check(B: ChernBundle, conn: ChernConnection):
    R = conn.ring
    if "gamma_plus" in B.expected:
        want = B.expected["gamma_plus"]
        if not all(x == y for r, s in zip(conn.gamma_plus, want) for x, y in zip(r, s)):
            raise CheckFailed(f"Gamma_+ = {conn.gamma_plus}, expected {want}")
    if "nabla(s)" in B.expected:
        got = conn.on_generator(0)
        if got != B.expected["nabla(s)"]:
            raise CheckFailed(f"nabla(s) = {got}, expected {B.expected['nabla(s)']}")
        C = B.calc
        for e in B.samples:
            for x in R.basis():
                xi = ModElem(R, {(C.s,): x})
                got = conn.sigma(tensor(e, xi))
                want = -tensor(xi.lmul(e.coeff(C.s)), ModElem(R, {(C.s,): R.one()}))
                if got != want:
                    raise CheckFailed(f"sigma_E({e} ⊗ {xi}) = {got}, expected {want}")
    if "monopole" in B.expected:
        mono = B.expected["monopole"]
        for e in B.samples:
            got = conn.apply(e)
            if got != mono.data.conn.apply(e) or got != mono.literal_nabla(e):
                raise CheckFailed(f"Chern connection differs from the monopole on {e}: {got}")
            for xi in mono.test_forms(3):
                if xi.restrict(lambda k: B.calc.bidegree.get(k[0]) == (1, 0)).is_zero():
                    continue
                if conn.sigma(tensor(e, xi)) != mono.data.conn.sigma(tensor(e, xi)):
                    raise CheckFailed(f"Chern braiding differs from sigma_S on {e} ⊗ {xi}")
    if B.name == "qsphere-omega10":
        for e in B.samples:
            got = conn.apply(e)
            want = literal_omega10_nabla(B.calc, e.coeff(E_PLUS))
            if got != want:
                raise CheckFailed(f"nabla({e}) = {got}, expected pi dx.k1k1' ⊗ k2'k2 e+ = {want}")
    return "reference values reproduced"


def _control(conn: ChernConnection) -> ChernConnection:
    """Gamma_+ doubled, or shifted by a (1,0) basis form when Gamma_+ vanishes."""
    if any(not x.is_zero() for r in conn.gamma_plus for x in r):
        return ChernConnection(conn.hol, conn.metric, [[x.scale(2) for x in r] for r in conn.gamma_plus],
                               conn.gamma_minus, conn.name + " (Gamma_+ doubled)")
    w = next(f for f in conn.calc.forms if conn.calc.bidegree.get(f) == (1, 0))
    return perturbed(conn, 0, 0, ModElem(conn.ring, {(w,): conn.ring.one()}))


def chern_suite(B: ChernBundle) -> List[CheckResult]:
    g = B.metric
    conn = B.connection()
    out: List[CheckResult] = []

    def add(cid, fn, expect_fail=False):
        out.append(run_check(cid, "chern", fn, expect_fail))

    add("metric-identities", lambda: _first_fail(g.failures(B.samples[:3])))

    def free():
        for e in B.samples:
            a, b = conn.apply(e), chern_apply_free(B.hol, g, e)
            if a != b:
                raise CheckFailed(f"matrix and coordinate-free Chern connections differ on {e}: {a} vs {b}")
        return f"{len(B.samples)} elements"
    add("matrix-vs-free", free)
    add("metric-preservation", lambda: _first_fail(metric_preservation_failures(conn.apply, g, g.gens + B.samples[:4])))
    add("holomorphic-part", lambda: _first_fail(holomorphic_part_failures(conn, g.gens + B.samples)))

    def curv():
        parts = conn.curvature_parts()
        for bd in ((2, 0), (0, 2)):
            if bd in parts and not parts[bd].is_zero():
                raise CheckFailed(f"curvature has a {bd} part: {parts[bd]}")
        for i, (a, b) in enumerate(zip(conn.curvature(), conn.curvature_direct())):
            if a != b:
                raise CheckFailed(f"matrix curvature differs from (d ⊗ id - id ∧ nabla) nabla on e^{i}")
    add("curvature", curv)
    add("projector-Q", lambda: _first_fail(projector_identity_failures(g)))
    if B.hol.sigma01 is not None:
        add("braiding-law", lambda: _first_fail(chern_braiding_failures(conn, g.gens + B.samples[:4], B.algebra)))
    add("reference", lambda: _reference_check(B, conn))
    bad = _control(conn)
    add("control-not-preserved", lambda: _first_fail(metric_preservation_failures(bad.apply, g)), expect_fail=True)
    return out


_REGISTRY = {"m2": M2Model, "qsphere": SphereModel, "qdisk": DiskModel}


def build_model(name: str, params: Optional[Dict[str, object]] = None, field: Field = SYMBOLIC) -> Model:
    if name == "qdisk-localized":
        return DiskModel(params, field, localized=True)
    if name not in _REGISTRY:
        raise UnknownModel(f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)}")
    return _REGISTRY[name](params, field)


def test_basis(model: Model, N: int):
    """(algebra test elements, spinor test elements) at cutoff N."""
    if N < 1:
        raise NcgError("cutoff must be at least 1")
    return model.test_algebra(N), model.test_spinors(N)
