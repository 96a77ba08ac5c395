"""Bimodule connections, their conjugates and tensor products, and the Chern construction."""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .bimod import (BarKey, ModElem, NcgError, Sym, apply_at, conjugate, key_twist, move_left, tensor,
                    unconjugate, upsilon)
from .calculus import Calculus


class NotInvertible(NcgError):
    pass


class SingularMetric(NcgError):
    pass


class Connection:
    """Left connection on a twisted free bimodule, given by its values on basis symbols.

    nabla(x.e) = dx ⊗ e + x.nabla(e); sigma and its inverse are bimodule maps given on
    basis pairs (e, omega) and (omega, e) respectively.
    """

    def __init__(self, calculus: Calculus, basis: Sequence[Sym], table: Dict[Sym, ModElem],
                 sigma: Optional[Dict[tuple, ModElem]] = None,
                 sigma_inv: Optional[Dict[tuple, ModElem]] = None, name: str = "nabla"):
        self.calc = calculus
        self.basis = list(basis)
        self.table = table
        self.sigma_table = sigma
        self.sigma_inv_table = sigma_inv
        self.name = name

    @property
    def ring(self):
        return self.calc.alg

    def apply(self, m: ModElem) -> ModElem:
        out = ModElem(m.ring)
        for k, c in m.terms.items():
            if len(k) != 1:
                raise NcgError(f"{self.name} acts on single basis symbols, got key {k}")
            e = k[0]
            out = out + tensor(self.calc.d(c), ModElem(m.ring, {k: m.ring.one()}))
            out = out + self.table[e].lmul(c)
        return out

    __call__ = apply

    def sigma(self, m: ModElem, pos: int = 0) -> ModElem:
        if self.sigma_table is None:
            raise NcgError(f"{self.name} has no braiding")
        return apply_at(m, self.sigma_table, pos, 2)

    def sigma_inv(self, m: ModElem, pos: int = 0) -> ModElem:
        if self.sigma_inv_table is None:
            raise NotInvertible(f"{self.name} has no inverse braiding")
        return apply_at(m, self.sigma_inv_table, pos, 2)

    # validation -----------------------------------------------------------
    def leibniz_failures(self, elements) -> List[str]:
        fails = []
        R = self.ring
        for e in self.basis:
            be = ModElem(R, {(e,): R.one()})
            for x in elements:
                lhs = self.apply(be.lmul(x))
                rhs = tensor(self.calc.d(x), be) + self.table[e].lmul(x)
                if lhs != rhs:
                    fails.append(f"left Leibniz fails on {x}.{e}")
        return fails

    def braiding_failures(self, elements) -> List[str]:
        """sigma(e ⊗ dx) = nabla(e.x) - nabla(e).x"""
        fails = []
        R = self.ring
        for e in self.basis:
            be = ModElem(R, {(e,): R.one()})
            for x in elements:
                lhs = self.sigma(tensor(be, self.calc.d(x)))
                rhs = self.apply(be.rmul(x)) - self.table[e].rmul(x)
                if lhs != rhs:
                    fails.append(f"braiding law fails on {e} with x = {x}: {lhs - rhs}")
        return fails

    def inverse_failures(self) -> List[str]:
        fails = []
        R = self.ring
        for e in self.basis:
            for w in self.calc.forms:
                m = ModElem(R, {(e, w): R.one()})
                if self.sigma_inv(self.sigma(m)) != m:
                    fails.append(f"sigma^-1 sigma != id on {e}⊗{w}")
                n = ModElem(R, {(w, e): R.one()})
                if self.sigma(self.sigma_inv(n)) != n:
                    fails.append(f"sigma sigma^-1 != id on {w}⊗{e}")
        return fails


def star_inv_table(calc: Calculus) -> Dict[tuple, ModElem]:
    """The inverse of omega -> bar(omega^*) on basis symbols: bar(omega) -> omega^*."""
    return {(w.bar(),): calc.form_star[w] for w in calc.forms}


def conjugate_connection_apply(conn: Connection, mbar: ModElem) -> ModElem:
    """nabla on conj(E):  bar(phi) -> (star^-1 ⊗ id) upsilon bar(sigma^-1 nabla phi)."""
    phi = unconjugate(mbar)
    t = conn.sigma_inv(conn.apply(phi))
    u = upsilon(conjugate(t))
    return apply_at(u, star_inv_table(conn.calc), 0, 1)


class ConjugateConnection:
    def __init__(self, conn: Connection):
        self.base = conn
        self.calc = conn.calc
        self.basis = [e.bar() for e in conn.basis]

    def apply(self, mbar: ModElem) -> ModElem:
        return conjugate_connection_apply(self.base, mbar)

    __call__ = apply

    def table(self):
        R = self.calc.alg
        return {e: self.apply(ModElem(R, {(e,): R.one()})) for e in self.basis}


def conjugate_connection(conn: Connection) -> ConjugateConnection:
    if conn.sigma_inv_table is None:
        raise NotInvertible(f"{conn.name} has no inverse braiding")
    return ConjugateConnection(conn)


class TensorConnection:
    """nabla_{E⊗F} = nabla_E ⊗ id + (sigma_E ⊗ id)(id ⊗ nabla_F) on keys (e, f)."""

    def __init__(self, CE: Connection, CF: Connection):
        self.CE, self.CF = CE, CF
        self.calc = CE.calc

    def apply(self, m: ModElem) -> ModElem:
        R = m.ring
        out = ModElem(R)
        for k, c in m.terms.items():
            if len(k) != 2:
                raise NcgError("tensor connection expects keys (e, f)")
            e, f = k
            basis = ModElem(R, {k: R.one()})
            out = out + tensor(self.calc.d(c), basis)
            first = tensor(self.CE.table[e], ModElem(R, {(f,): R.one()}))
            second = self.CE.sigma(tensor(ModElem(R, {(e,): R.one()}), self.CF.table[f]))
            out = out + (first + second).lmul(c)
        return out

    __call__ = apply


def tensor_connection(CE: Connection, CF: Connection) -> TensorConnection:
    return TensorConnection(CE, CF)


# holomorphic structures and the Chern construction ------------------------------
#
# A bundle E is presented inside an ambient twisted free module with basis
# symbols E_a.  It is generated by elements e^i with a dual basis e_k given on
# ambient symbols, e_k(x.E_a) = x.dual[k][E_a], so that  m = sum_k e_k(m).e^k
# for m in E and P_ik = e_k(e^i).  One-forms with coefficients sit on the left.

def mat_mul(A, B):
    """Product of matrices whose entries are algebra elements or one-forms.

    A form times a form is not allowed here; use mat_wedge.
    """
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                x, y = A[i][k], B[k][j]
                if isinstance(x, ModElem):
                    t = x.rmul(y)
                elif isinstance(y, ModElem):
                    t = y.lmul(x)
                else:
                    t = x * y
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(row)
    return out


def mat_wedge(calc, A, B):
    n, m, p = len(A), len(B), len(B[0])
    R = calc.alg
    return [[sum((calc.wedge(A[i][k], B[k][j]) for k in range(m)), ModElem(R)) for j in range(p)]
            for i in range(n)]


def mat_add(A, B):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_neg(A):
    return [[-x for x in r] for r in A]


def mat_star(calc, A):
    """Conjugate transpose; one-form entries use the calculus star."""
    n = len(A)
    return [[calc.star_form(A[j][i]) if isinstance(A[j][i], ModElem) else A[j][i].star()
             for j in range(n)] for i in range(n)]


def mat_map(f, A):
    return [[f(x) for x in r] for r in A]


def mat_eq(A, B):
    return all(x == y for r, s in zip(A, B) for x, y in zip(r, s))


class Holomorphic:
    """A left dbar-connection on the ambient module: dbar_E(x.E_a) = dbar x ⊗ E_a + x.table[E_a].

    sigma01 optionally gives the (0,1) braiding on pairs (E_a, omega) of ambient symbols
    and (0,1) basis forms.
    """

    def __init__(self, calc: Calculus, table: Dict[Sym, ModElem], sigma01: Optional[Dict[tuple, ModElem]] = None):
        self.calc = calc
        self.table = table
        self.sigma01 = sigma01

    def apply(self, m: ModElem) -> ModElem:
        R = m.ring
        out = ModElem(R)
        for k, c in m.terms.items():
            e = k[0]
            out = out + tensor(self.calc.partialbar(c), ModElem(R, {k: R.one()}))
            t = self.table.get(e)
            if t is not None:
                out = out + t.lmul(c)
        return out

    __call__ = apply

    def sigma(self, m: ModElem) -> ModElem:
        if self.sigma01 is None:
            raise NcgError("no (0,1) braiding given")
        return apply_at(m, self.sigma01, 0, 2)


class HermMetric:
    """Hermitian metric <,>: E ⊗ conj(E) -> A on a bundle presented in an ambient module.

    <x.E_a, bar(y.E_b)> = x h[a, b] y^*.  The matrix g_• (gdown) is supplied; g^• and P
    are computed from the generators and the dual basis.
    """

    def __init__(self, calc: Calculus, ambient: Sequence[Sym], h: Dict[Tuple[Sym, Sym], object],
                 gens: Sequence[ModElem], duals: Sequence[Dict[Sym, object]], gdown, name: str = "E",
                 note: str = ""):
        self.calc = calc
        self.ambient = list(ambient)
        self.h = h
        self.gens = list(gens)
        self.duals = list(duals)
        self.gdown = gdown
        self.name = name
        self.note = note
        n = len(self.gens)
        self.n = n
        self.P = [[self.dual(k, self.gens[i]) for k in range(n)] for i in range(n)]
        self.gup = [[self.pair(self.gens[i], self.gens[j]) for j in range(n)] for i in range(n)]
        if gdown is None or not mat_eq(mat_mul(self.gup, gdown), self.P):
            raise SingularMetric(f"metric on {name}: no g_• with g^• g_• = P")

    @property
    def ring(self):
        return self.calc.alg

    def basis_elem(self, a: Sym) -> ModElem:
        return ModElem(self.ring, {(a,): self.ring.one()})

    def pair(self, m: ModElem, n: ModElem):
        R = self.ring
        out = R.zero()
        for (a,), x in m.terms.items():
            for (b,), y in n.terms.items():
                hab = self.h.get((a, b))
                if hab is not None:
                    out = out + x * hab * y.star()
        return out

    def dual(self, k: int, m: ModElem):
        R = self.ring
        out = R.zero()
        for key, x in m.terms.items():
            v = self.duals[k].get(key[-1])
            if v is not None:
                out = out + x * v
        return out

    def dual_table(self, k: int) -> Dict[tuple, ModElem]:
        R = self.ring
        return {(a,): ModElem.from_alg(self.duals[k].get(a, R.zero())) for a in self.ambient}

    def coords(self, m: ModElem) -> list:
        return [self.dual(k, m) for k in range(self.n)]

    def inverse(self) -> List[Tuple[ModElem, ModElem]]:
        """<,>^{-1} = sum_i bar(c_i) ⊗ e^i with c_i = g_ij e^j, returned as pairs (c_i, e^i)."""
        n = self.n
        out = []
        for i in range(n):
            c = ModElem(self.ring)
            for j in range(n):
                c = c + self.gens[j].lmul(self.gdown[i][j])
            out.append((c, self.gens[i]))
        return out

    def failures(self, samples: Sequence[ModElem] = ()) -> List[str]:
        fails = []
        n = self.n
        for i in range(n):
            for j in range(n):
                if self.gup[i][j].star() != self.gup[j][i]:
                    fails.append(f"g^{i}{j}* != g^{j}{i}")
        checks = [("g^• g_• = P", mat_mul(self.gup, self.gdown), self.P),
                  ("g_• P = g_•", mat_mul(self.gdown, self.P), self.gdown),
                  ("P g^• = g^•", mat_mul(self.P, self.gup), self.gup),
                  ("g_•* = g_•", mat_star(self.calc, self.gdown), self.gdown)]
        for label, A, B in checks:
            if not mat_eq(A, B):
                fails.append(f"metric identity fails: {label}")
        inv = self.inverse()
        for e in list(self.gens) + list(samples):
            lhs = sum((g.lmul(self.pair(e, c)) for c, g in inv), ModElem(self.ring))
            if lhs != e:
                fails.append(f"(<,> ⊗ id)(e ⊗ <,>^-1) != e for e = {e}")
            rhs = sum((c.lmul(self.pair(g, e).star()) for c, g in inv), ModElem(self.ring))
            if rhs != e:
                fails.append(f"(id ⊗ <,>)(<,>^-1 ⊗ bar e) != bar e for e = {e}")
        return fails


def christoffel_minus(hol: Holomorphic, g: HermMetric):
    """Gamma_-, read off from dbar_E(e^i) = -Gamma_-^i_k ⊗ e^k."""
    out = []
    for e in g.gens:
        t = hol.apply(e)
        out.append([-apply_at(t, g.dual_table(k), 1, 1) for k in range(g.n)])
    return out


class ChernConnection:
    """nabla(e^i) = -Gamma^i_k ⊗ e^k, extended to E through the dual basis."""

    def __init__(self, hol: Holomorphic, g: HermMetric, gamma_plus, gamma_minus, name="chern"):
        self.hol = hol
        self.metric = g
        self.calc = g.calc
        self.gamma_plus = gamma_plus
        self.gamma_minus = gamma_minus
        self.gamma = mat_add(gamma_plus, gamma_minus)
        self.name = name
        self.sigma10_fn = None

    @property
    def ring(self):
        return self.calc.alg

    def on_generator(self, i: int) -> ModElem:
        g = self.metric
        return -sum((tensor(self.gamma[i][k], g.gens[k]) for k in range(g.n)), ModElem(self.ring))

    def apply(self, m: ModElem) -> ModElem:
        g = self.metric
        out = ModElem(self.ring)
        for i, x in enumerate(g.coords(m)):
            if x.is_zero():
                continue
            out = out + tensor(self.calc.d(x), g.gens[i]) + self.on_generator(i).lmul(x)
        return out

    __call__ = apply

    def table(self) -> List[ModElem]:
        return [self.on_generator(i) for i in range(self.metric.n)]

    def sigma(self, m: ModElem) -> ModElem:
        """Full braiding on E ⊗ Omega^1: (1,0) part from the Chern formula, (0,1) part given."""
        if self.hol.sigma01 is None:
            raise NotInvertible(f"{self.name}: no (0,1) braiding")
        out = ModElem(self.ring)
        for k, c in m.terms.items():
            a, w = k[:-1], k[-1]
            e = ModElem(self.ring, {a: c})
            eta = ModElem(self.ring, {(w,): self.ring.one()})
            if self.calc.bidegree.get(w) == (1, 0):
                out = out + chern_sigma(self.hol, self.metric, e, eta)
            else:
                out = out + self.hol.sigma(tensor(e, eta))
        return out

    def curvature(self):
        """R(e^i) = -((dGamma + Gamma∧Gamma) P)_ik ⊗ e^k, as a list over generators."""
        calc, g = self.calc, self.metric
        dG = mat_map(calc.d1, self.gamma)
        F = mat_mul(mat_add(dG, mat_wedge(calc, self.gamma, self.gamma)), g.P)
        return [-sum((tensor(F[i][k], g.gens[k]) for k in range(g.n)), ModElem(self.ring))
                for i in range(g.n)]

    def curvature_parts(self):
        bd = self.calc.bidegree
        out = {}
        for R in self.curvature():
            for k, c in R.terms.items():
                part = bd.get(k[0])
                out[part] = out.get(part, ModElem(self.ring)) + ModElem(self.ring, {k: c})
        return out

    def curvature_direct(self):
        """(d ⊗ id - id ∧ nabla) nabla on the generators, nabla extended to ambient symbols."""
        calc = self.calc
        R = self.ring
        out = []
        for i in range(self.metric.n):
            acc = ModElem(R)
            for k, c in self.on_generator(i).terms.items():
                w, rest = k[0], k[1:]
                form = ModElem(R, {(w,): c})
                acc = acc + tensor(calc.d1(form), ModElem(R, {rest: R.one()}))
                acc = acc - calc.wedge_tensor(tensor(form, self.apply(ModElem(R, {rest: R.one()}))), 0)
            out.append(acc)
        return out


def chern_gamma_plus(g: HermMetric, gamma_minus):
    """-Gamma_+ = ∂g^•.g_• + g^• (Gamma_-)^* g_•"""
    calc = g.calc
    dg = mat_map(calc.partial, g.gup)
    t1 = mat_mul(dg, g.gdown)
    t2 = mat_mul(mat_mul(g.gup, mat_star(calc, gamma_minus)), g.gdown)
    return mat_neg(mat_add(t1, t2))


def chern_connection(hol: Holomorphic, g: HermMetric, name: str = "chern") -> ChernConnection:
    """Matrix (Christoffel) form of the Chern connection."""
    gm = christoffel_minus(hol, g)
    return ChernConnection(hol, g, chern_gamma_plus(g, gm), gm, name)


def chern_partial_free(hol: Holomorphic, g: HermMetric, e: ModElem) -> ModElem:
    """Coordinate-free (1,0) part:
    ∂_E(e) = ∂<e, bar c_i> ⊗ e^i - (<,> ⊗ id ⊗ id)(e ⊗ dbar~(bar c_i) ⊗ e^i),
    with dbar~(bar c) = bar(f) ⊗ kappa^* where dbar_E(c) = kappa ⊗ f.
    """
    calc = g.calc
    R = g.ring
    out = ModElem(R)
    for c, gi in g.inverse():
        out = out + tensor(calc.partial(g.pair(e, c)), gi)
        for k, x in hol.apply(c).terms.items():
            w, a = k
            kappa = ModElem(R, {(w,): x})
            term = calc.star_form(kappa).lmul(g.pair(e, g.basis_elem(a)))
            out = out - tensor(term, gi)
    return out


def chern_apply_free(hol: Holomorphic, g: HermMetric, e: ModElem) -> ModElem:
    return chern_partial_free(hol, g, e) + hol.apply(e)


def chern_sigma(hol: Holomorphic, g: HermMetric, e: ModElem, eta: ModElem) -> ModElem:
    """sigma_E(e ⊗ eta) = <e, bar k> xi^* ⊗ g_i for eta of type (1,0),
    where xi ⊗ k = sigma01(c_i ⊗ eta^*) and <,>^{-1} = bar(c_i) ⊗ g_i."""
    if hol.sigma01 is None:
        raise NcgError("chern_sigma needs the (0,1) braiding")
    calc = g.calc
    R = g.ring
    out = ModElem(R)
    es = calc.star_form(eta)
    for c, gi in g.inverse():
        for k, x in hol.sigma(tensor(c, es)).terms.items():
            w, a = k
            xi = calc.star_form(ModElem(R, {(w,): x}))
            out = out + tensor(xi.lmul(g.pair(e, g.basis_elem(a))), gi)
    return out


def right_conjugate_apply(calc, nabla_c: ModElem):
    """nabla~(bar c) = bar(f) ⊗ kappa^*, returned as a list of (ambient symbol, kappa^*)."""
    R = calc.alg
    out = []
    for k, x in nabla_c.terms.items():
        w, a = k
        out.append((a, calc.star_form(ModElem(R, {(w,): x}))))
    return out


def metric_preservation_failures(apply_fn, g: HermMetric, elements: Optional[Sequence[ModElem]] = None) -> List[str]:
    """d<e, bar c> = (id ⊗ <,>)(nabla e ⊗ bar c) + (<,> ⊗ id)(e ⊗ nabla~(bar c))."""
    calc = g.calc
    R = g.ring
    elements = list(g.gens) if elements is None else list(elements)
    nab = [apply_fn(e) for e in elements]
    fails = []
    for e, ne in zip(elements, nab):
        for c, nc in zip(elements, nab):
            lhs = calc.d(g.pair(e, c))
            rhs = ModElem(R)
            for k, x in ne.terms.items():
                w, a = k
                rhs = rhs + ModElem(R, {(w,): x}).rmul(g.pair(g.basis_elem(a), c))
            for a, ks in right_conjugate_apply(calc, nc):
                rhs = rhs + ks.lmul(g.pair(e, g.basis_elem(a)))
            if lhs != rhs:
                fails.append(f"metric not preserved on ({e}, {c}): d<,> = {lhs}, rhs = {rhs}")
    return fails


def holomorphic_part_failures(conn: ChernConnection, elements: Sequence[ModElem]) -> List[str]:
    """(pi^{0,1} ⊗ id) nabla = dbar_E"""
    calc = conn.calc
    fails = []
    for e in elements:
        got = conn.apply(e).restrict(lambda k: calc.bidegree.get(k[0]) == (0, 1))
        want = conn.hol.apply(e)
        if got != want:
            fails.append(f"(0,1) part differs from dbar_E on {e}: {got - want}")
    return fails


def chern_braiding_failures(conn: ChernConnection, elements: Sequence[ModElem], algebra: Sequence) -> List[str]:
    """nabla(e.a) - nabla(e).a = sigma(e ⊗ da)"""
    calc = conn.calc
    fails = []
    for e in elements:
        ne = conn.apply(e)
        for x in algebra:
            lhs = conn.apply(e.rmul(x)) - ne.rmul(x)
            rhs = conn.sigma(tensor(e, calc.d(x)))
            if lhs != rhs:
                fails.append(f"braiding law fails on e = {e}, a = {x}: {lhs - rhs}")
    return fails


def projector_identity_failures(g: HermMetric) -> List[str]:
    """Q = g_• g^• obeys Q^2 = Q and ∂Q.Q = (1 - Q).∂Q."""
    calc = g.calc
    Q = mat_mul(g.gdown, g.gup)
    fails = []
    if not mat_eq(mat_mul(Q, Q), Q):
        fails.append("Q^2 != Q")
    dQ = mat_map(calc.partial, Q)
    n = g.n
    R = g.ring
    one_minus = [[(R.one() if i == j else R.zero()) - Q[i][j] for j in range(n)] for i in range(n)]
    if not mat_eq(mat_mul(dQ, Q), mat_mul(one_minus, dQ)):
        fails.append("∂Q.Q != (1 - Q).∂Q")
    return fails


def perturbed(conn: ChernConnection, i: int, k: int, form: ModElem) -> ChernConnection:
    """The same data with Gamma_+^i_k shifted by a (1,0)-form."""
    gp = [list(r) for r in conn.gamma_plus]
    gp[i][k] = gp[i][k] + form
    return ChernConnection(conn.hol, conn.metric, gp, conn.gamma_minus, conn.name + "'")
