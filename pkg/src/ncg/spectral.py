"""Spinor data, states and the algebraic axiom suite for spectral triples."""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .bimod import ModElem, NotRightLinear, Sym, apply_at, check_right_linear, conjugate, tensor, unconjugate
from .connect import Connection, TensorConnection, conjugate_connection
from .errors import NcgError
from .ncalg import AlgElem, Presentation, normal_words


class IntegralUndefined(NcgError):
    pass


class UnresolvedParameters(NcgError):
    pass


# sign table (epsilon, epsilon', epsilon'') for KO-dimension n mod 8; None where undefined
SIGN_TABLE = {
    0: (1, 1, 1),
    1: (1, -1, None),
    2: (-1, 1, -1),
    3: (-1, 1, None),
    4: (-1, 1, 1),
    5: (-1, -1, None),
    6: (1, 1, -1),
    7: (1, 1, None),
}


# linear algebra over the scalar field -----------------------------------------

def solve_linear(rows: List[Dict[object, object]], rhs: List[object], unknowns: Sequence, field):
    """Exact Gauss-Jordan elimination; returns {unknown: value}.

    Raises NcgError if the system is inconsistent or does not determine every unknown.
    """
    idx = {u: k for k, u in enumerate(unknowns)}
    n = len(unknowns)
    mat = []
    for r, b in zip(rows, rhs):
        row = [field.zero] * (n + 1)
        for u, c in r.items():
            row[idx[u]] = row[idx[u]] + c
        row[n] = field.coerce(b)
        mat.append(row)
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(mat)) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(mat)):
        if not mat[i][n].is_zero():
            raise NcgError("inconsistent linear system")
    if len(pivots) < n:
        free = [unknowns[c] for c in range(n) if c not in pivots]
        raise NcgError(f"linear system leaves {len(free)} unknowns free")
    return {unknowns[c]: mat[i][n] for i, c in enumerate(pivots)}


# states --------------------------------------------------------------------------

class State:
    kind = "state"

    def __call__(self, x):
        raise NotImplementedError

    def varsigma(self, x):
        return x

    def varsigma_inv(self, x):
        return x


class TraceState(State):
    kind = "matrix-trace"

    def __call__(self, x):
        return x.trace()


def _coproduct_table(P: Presentation):
    """Delta on generators of the quantum group of a 2x2 matrix (a b; c d)."""
    g = {n: (P.gen_index(n),) for n in "abcd"}
    pairs = {"a": [("a", "a"), ("b", "c")], "b": [("a", "b"), ("b", "d")],
             "c": [("c", "a"), ("d", "c")], "d": [("c", "b"), ("d", "d")]}
    return {P.gen_index(k): [(g[x], g[y]) for x, y in v] for k, v in pairs.items()}


class HaarState(State):
    """The Haar state of C_q[SU2], solved from left invariance (id ⊗ h)Delta(x) = h(x)1.

    Unknowns are h on grade-zero normal words up to a length; the system is
    closed under the coproduct, so it is solved exactly length block by block.
    """

    kind = "haar-su2"

    def __init__(self, P: Presentation):
        self.P = P
        self.values: Dict[tuple, object] = {}
        self.solved_len = -1
        self._delta: Dict[tuple, Dict[tuple, object]] = {(): {((), ()): P.field.one}}
        self._dgen = _coproduct_table(P)
        self._a = P.gen_index("a")
        self._d = P.gen_index("d")

    def coproduct(self, w) -> Dict[tuple, object]:
        """Delta(w) as {(u, v): coeff} with u, v normal words."""
        w = tuple(w)
        hit = self._delta.get(w)
        if hit is not None:
            return hit
        P = self.P
        prev = self.coproduct(w[:-1])
        out: Dict[tuple, object] = {}
        for (u, v), c in prev.items():
            for x, y in self._dgen[w[-1]]:
                for u2, c1 in P.normal_form_word(u + x).items():
                    for v2, c2 in P.normal_form_word(v + y).items():
                        k = (u2, v2)
                        val = out.get(k)
                        t = c * c1 * c2
                        out[k] = t if val is None else val + t
        out = {k: c for k, c in out.items() if not c.is_zero()}
        self._delta[w] = out
        return out

    def solve(self, L: int):
        if L <= self.solved_len:
            return
        P = self.P
        F = P.field
        words = [w for w in normal_words(P, L) if P.word_grade(w) == 0]
        rows, rhs = [], []
        for x in words:
            groups: Dict[tuple, Dict[tuple, object]] = {}
            for (u, v), c in self.coproduct(x).items():
                if P.word_grade(v) != 0:
                    continue
                g = groups.setdefault(u, {})
                g[v] = g.get(v, F.zero) + c
            # (id ⊗ h)Delta(x) - h(x) 1 = 0, coefficient by coefficient in the first factor
            groups.setdefault((), {})
            for u, g in groups.items():
                row = dict(g)
                if u == ():
                    row[x] = row.get(x, F.zero) - F.one
                rows.append(row)
                rhs.append(0)
        rows.append({(): F.one})
        rhs.append(1)
        sol = solve_linear(rows, rhs, words, F)
        self.values.update(sol)
        self.solved_len = L

    def word_value(self, w):
        P = self.P
        if P.word_grade(w) != 0:
            return P.field.zero
        if w not in self.values:
            L = max(len(w), 2)
            self.solve(L + (L % 2))
        return self.values[w]

    def __call__(self, x: AlgElem):
        F = self.P.field
        out = F.zero
        for w, c in x.terms.items():
            v = self.word_value(w)
            if not v.is_zero():
                out = out + c * v
        return out

    def _twist(self, x: AlgElem, sign: int):
        P = self.P
        out = {}
        for w, c in x.terms.items():
            k = 2 * sign * (w.count(self._d) - w.count(self._a))
            out[w] = c * P.field.q(k) if k else c
        return AlgElem(P, out)

    def varsigma(self, x):
        """a -> q^-2 a, d -> q^2 d, b and c fixed."""
        return self._twist(x, 1)

    def varsigma_inv(self, x):
        return self._twist(x, -1)


class DiskIntegral(State):
    """Partially defined invariant integral on C_q[D]: w^{n+1} -> 1/[n]_{q^-2} for n >= 1."""

    kind = "disk-integral"

    def __init__(self, P: Presentation):
        self.P = P
        self._w = P.gen_index("w")

    def word_value(self, w):
        from .scalar import qint
        P = self.P
        F = P.field
        if P.word_grade(w) != 0:
            return F.zero
        if any(g != self._w for g in w):
            raise IntegralUndefined(f"integral not defined on {P.fmt_word(w)}")
        m = len(w)
        if m < 2:
            raise IntegralUndefined(f"integral not defined on {P.fmt_word(w) if w else '1'}")
        return qint(m - 1, -2, F).inverse()

    def __call__(self, x: AlgElem):
        F = self.P.field
        out = F.zero
        for w, c in x.terms.items():
            out = out + c * self.word_value(w)
        return out

    def in_domain(self, x: AlgElem) -> bool:
        try:
            self(x)
            return True
        except IntegralUndefined:
            return False

    def varsigma(self, x):
        P = self.P
        return AlgElem(P, {w: (c * P.field.q(2 * P.word_grade(w)) if P.word_grade(w) else c)
                           for w, c in x.terms.items()})

    def varsigma_inv(self, x):
        P = self.P
        return AlgElem(P, {w: (c * P.field.q(-2 * P.word_grade(w)) if P.word_grade(w) else c)
                           for w, c in x.terms.items()})


# spinor data ----------------------------------------------------------------------

@dataclass
class SpectralData:
    """A spinor bimodule with connection, Clifford action, real structure and grading."""

    name: str
    conn: Connection
    spinors: List[Sym]
    clifford_table: Dict[tuple, ModElem]
    j_table: Dict[Sym, ModElem]
    gamma_signs: Dict[Sym, int]
    pairing_table: Dict[tuple, object]
    state: State
    n: int = 2
    signs: Tuple[int, int, int] = (-1, 1, -1)
    params: Dict[str, object] = dc_field(default_factory=dict)
    iso_factor: Optional[Dict[Sym, object]] = None

    @property
    def calc(self):
        return self.conn.calc

    @property
    def ring(self):
        return self.conn.calc.alg

    @property
    def field(self):
        return self.ring.field

    def spinor(self, x, e: Sym) -> ModElem:
        return ModElem(self.ring, {} if x.is_zero() else {(e,): x})

    # operators
    def clifford(self, xi: ModElem, phi: ModElem) -> ModElem:
        return apply_at(tensor(xi, phi), self.clifford_table, 0, 2)

    def clifford_tensor(self, m: ModElem, pos: int = 0) -> ModElem:
        return apply_at(m, self.clifford_table, pos, 2)

    def dirac(self, phi: ModElem) -> ModElem:
        return self.clifford_tensor(self.conn.apply(phi))

    def j(self, phi: ModElem) -> ModElem:
        return apply_at(phi, {(e,): v for e, v in self.j_table.items()}, 0, 1)

    def j_inv_table(self):
        out = {}
        R = self.ring
        for e, v in self.j_table.items():
            if len(v.terms) != 1:
                raise NcgError("j must send each basis spinor to a multiple of a conjugate basis spinor")
            (k, c), = v.terms.items()
            if not c.is_scalar():
                raise NcgError("j coefficients must be scalars")
            out[k] = ModElem(R, {(e,): R.scalar(c.scalar_part().inverse())})
        return out

    def J(self, phi: ModElem) -> ModElem:
        return unconjugate(self.j(phi))

    def J_inv(self, psi: ModElem) -> ModElem:
        if not hasattr(self, "_jinv"):
            self._jinv = self.j_inv_table()
        return apply_at(conjugate(psi), self._jinv, 0, 1)

    def gamma(self, phi: ModElem) -> ModElem:
        return ModElem(phi.ring, {k: (c if self.gamma_signs[k[0]] == 1 else -c) for k, c in phi.terms.items()})

    def pairing(self, phi: ModElem, psi: ModElem):
        """The algebra-valued <bar(phi), psi>."""
        R = self.ring
        tab = {}
        for a in self.spinors:
            for b in self.spinors:
                v = self.pairing_table.get((a, b))
                tab[(a.bar(), b)] = ModElem(R) if v is None or v.is_zero() else ModElem(R, {(): v})
        return apply_at(tensor(conjugate(phi), psi), tab, 0, 2).to_alg()

    def inner(self, phi: ModElem, psi: ModElem):
        """<<bar(phi), psi>>, antilinear in phi."""
        return self.state(self.pairing(phi, psi))

    def bilinear(self, psi: ModElem, phi: ModElem):
        """((psi, phi)) = <<j(psi), phi>> = <<bar(J psi), phi>>."""
        return self.inner(self.J(psi), phi)

    def bilinear_tensor(self, m: ModElem):
        """(( , )) on S ⊗ S given as keys (e, f) with left coefficients."""
        F = self.field
        out = F.zero
        R = self.ring
        for (e, f), c in m.terms.items():
            out = out + self.bilinear(ModElem(R, {(e,): c}), ModElem(R, {(f,): R.one()}))
        return out

    def fluctuation(self, kappa: ModElem, phi: ModElem) -> ModElem:
        """kappa-hat(phi) = (▷)sigma(phi ⊗ kappa) - kappa ▷ phi."""
        return self.clifford_tensor(self.conn.sigma(tensor(phi, kappa))) - self.clifford(kappa, phi)

    def fluctuation_via_J(self, kappa: ModElem, phi: ModElem) -> ModElem:
        eps1 = self.signs[1]
        t = self.J(self.clifford(self.calc.star_form(kappa), self.J_inv(phi)))
        return (t if eps1 == 1 else -t) - self.clifford(kappa, phi)


# check records ----------------------------------------------------------------------

@dataclass
class CheckResult:
    id: str
    anchor: str
    status: str
    counterexample: Optional[str] = None
    elapsed: float = 0.0
    detail: Optional[str] = None

    def to_dict(self):
        d = {"id": self.id, "anchor": self.anchor, "status": self.status,
             "counterexample": self.counterexample, "elapsed": round(self.elapsed, 6)}
        if self.detail:
            d["detail"] = self.detail
        return d


class CheckFailed(Exception):
    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


def _expect(cond, msg):
    if not cond:
        raise CheckFailed(msg)


def run_check(cid: str, anchor: str, fn: Callable[[], Optional[str]], expect_fail: bool = False) -> CheckResult:
    """Run fn; it raises CheckFailed with a counterexample or returns an optional detail."""
    t0 = time.perf_counter()
    try:
        detail = fn()
        ok, cex = True, None
    except CheckFailed as e:
        ok, cex, detail = False, e.msg, None
    except NcgError as e:
        ok, cex, detail = False, f"{type(e).__name__}: {e}", None
    dt = time.perf_counter() - t0
    if expect_fail:
        if ok:
            return CheckResult(cid, anchor, "fail", "expected failure did not occur", dt, detail)
        return CheckResult(cid, anchor, "xfail-pass", cex, dt, "expected failure")
    return CheckResult(cid, anchor, "pass" if ok else "fail", cex, dt, detail)


def skipped(cid: str, anchor: str, why: str) -> CheckResult:
    return CheckResult(cid, anchor, "skip", None, 0.0, why)


# the axiom suite ----------------------------------------------------------------------

def _first(items, pred):
    for it in items:
        r = pred(*it) if isinstance(it, tuple) else pred(it)
        if r:
            return r
    return None


def axiom_suite(model, N: int = 4) -> List[CheckResult]:
    """Every algebraic axiom, hermiticity and isometry check for a model at cutoff N."""
    S: SpectralData = model.data
    C = S.calc
    R = S.ring
    eps, eps1, eps2 = S.signs
    alg = model.test_algebra(N)
    gens = model.algebra_generators()
    spinors = model.test_spinors(N)
    forms = model.test_forms(N)
    results: List[CheckResult] = []

    def add(cid, anchor, fn, expect_fail=False):
        results.append(run_check(cid, anchor, fn, expect_fail))

    def sgn(m, k):
        return m if k == 1 else -m

    def c_signs():
        msg = model.check_sign_table()
        _expect(msg is None, msg or "")

    def c_connection():
        fails = S.conn.leibniz_failures(gens) + S.conn.braiding_failures(model.bimodule_scalars(2)) \
            + S.conn.inverse_failures()
        _expect(not fails, fails[0] if fails else "")

    def c_clifford_bimodule():
        blocks = list(S.clifford_table)
        try:
            check_right_linear(S.clifford_table, blocks, R, model.bimodule_scalars(2), "clifford action")
        except NotRightLinear as e:
            raise CheckFailed(str(e))

    def c_J2():
        for phi in spinors:
            _expect(S.J(S.J(phi)) == sgn(phi, eps), f"J^2 phi != {eps} phi for phi = {phi}: J^2 phi = {S.J(S.J(phi))}")

    def c_Jgamma():
        for phi in spinors:
            lhs, rhs = S.J(S.gamma(phi)), sgn(S.gamma(S.J(phi)), eps2)
            _expect(lhs == rhs, f"J gamma phi = {lhs}, {eps2} gamma J phi = {rhs} for phi = {phi}")

    def c_gamma2():
        for phi in spinors:
            _expect(S.gamma(S.gamma(phi)) == phi, f"gamma^2 phi != phi for phi = {phi}")

    def c_gamma_a():
        for a in alg:
            for phi in spinors:
                lhs, rhs = S.gamma(phi.lmul(a)), S.gamma(phi).lmul(a)
                _expect(lhs == rhs, f"[gamma, a] != 0 for a = {a}, phi = {phi}")

    def c_Dgamma():
        k = (-1) ** (S.n - 1)
        for phi in spinors:
            lhs, rhs = S.dirac(S.gamma(phi)), sgn(S.gamma(S.dirac(phi)), k)
            _expect(lhs == rhs, f"D gamma phi = {lhs}, {k} gamma D phi = {rhs} for phi = {phi}")

    def JbJ(b, phi):
        return S.J(S.J_inv(phi).lmul(b))

    def c_order_zero():
        for a in alg:
            for b in gens:
                for phi in spinors:
                    lhs = JbJ(b, phi).lmul(a)
                    rhs = JbJ(b, phi.lmul(a))
                    _expect(lhs == rhs, f"[a, J b J^-1] != 0 for a = {a}, b = {b}, phi = {phi}: {lhs - rhs}")

    def c_JD():
        for phi in spinors:
            lhs, rhs = S.J(S.dirac(phi)), sgn(S.dirac(S.J(phi)), eps1)
            _expect(lhs == rhs, f"J D phi = {lhs}, {eps1} D J phi = {rhs} for phi = {phi}")

    def c_lapreserves():
        for xi in forms:
            for phi in spinors:
                lhs = S.J(S.clifford(xi, phi))
                rhs = sgn(S.clifford_tensor(S.conn.sigma(tensor(S.J(phi), C.star_form(xi)))), eps1)
                _expect(lhs == rhs, f"J(xi ▷ phi) = {lhs} but eps' ▷ sigma(J phi ⊗ xi*) = {rhs} "
                                    f"for xi = {xi}, phi = {phi}")

    def Da(a, phi):
        return S.dirac(phi.lmul(a)) - S.dirac(phi).lmul(a)

    def c_first_order():
        for a in gens:
            for b in gens:
                for phi in spinors:
                    lhs = Da(a, JbJ(b, phi))
                    rhs = JbJ(b, Da(a, phi))
                    _expect(lhs == rhs, f"[[D, a], J b J^-1] phi != 0 for a = {a}, b = {b}, phi = {phi}")

    def c_commutator():
        for a in alg:
            for phi in spinors:
                lhs, rhs = Da(a, phi), S.clifford(C.d(a), phi)
                _expect(lhs == rhs, f"[D, a] phi = {lhs} but da ▷ phi = {rhs} for a = {a}, phi = {phi}")

    def c_jpreserves():
        from .connect import conjugate_connection
        cc = conjugate_connection(S.conn)
        jt = {(e,): v for e, v in S.j_table.items()}
        for phi in [ModElem(R, {(e,): R.one()}) for e in S.spinors] + spinors:
            lhs = apply_at(S.conn.apply(phi), jt, 1, 1)
            rhs = cc.apply(S.j(phi))
            _expect(lhs == rhs, f"(id ⊗ j) nabla phi = {lhs} but nabla_bar j phi = {rhs} for phi = {phi}")

    def c_right_action():
        for b in alg:
            for psi in spinors:
                lhs = psi.rmul(b)
                rhs = S.J(S.J_inv(psi).lmul(b.star()))
                _expect(lhs == rhs, f"psi.b = {lhs} but J b* J^-1 psi = {rhs} for b = {b}, psi = {psi}")

    def herm_defect(phi, psi):
        lhs = S.inner(S.dirac(phi), psi)
        rhs = S.inner(phi, S.dirac(psi))
        return lhs, rhs

    def c_hermitian():
        for phi, psi in model.herm_pairs(N):
            lhs, rhs = herm_defect(phi, psi)
            _expect(lhs == rhs, f"<<D phi, psi>> = {lhs} but <<phi, D psi>> = {rhs} for phi = {phi}, psi = {psi}")
        return f"{len(model.herm_pairs(N))} pairs"

    def c_herm_boundary():
        for phi, psi in model.herm_boundary_pairs():
            lhs, rhs = herm_defect(phi, psi)
            _expect(lhs == rhs, f"<<D phi, psi>> = {lhs} but <<phi, D psi>> = {rhs} for phi = {phi}, psi = {psi}")

    def c_strict_isometry():
        pairs = [(a, b) for a in spinors for b in spinors]
        if hasattr(model, "strict_counterexample_pair"):
            pairs.insert(0, model.strict_counterexample_pair())
        for phi, psi in pairs:
            try:
                lhs = S.inner(S.J(psi), S.J(phi))
                rhs = S.inner(phi, psi)
            except IntegralUndefined:
                continue
            _expect(lhs == rhs, f"<<J psi, J phi>> = {lhs} but <<phi, psi>> = {rhs} for phi = {phi}, psi = {psi}")

    def c_twisted_isometry():
        st = S.state
        n_ok = 0
        for x, y, e in model.isometry_pairs(N):
            phi, psi = S.spinor(x, e), S.spinor(y, e)
            try:
                lhs = S.inner(S.J(phi), S.J(psi))
                rhs = S.iso_factor[e] * S.inner(S.spinor(st.varsigma_inv(y), e), phi)
            except IntegralUndefined:
                continue
            n_ok += 1
            _expect(lhs == rhs, f"<<J(x.{e}), J(y.{e})>> = {lhs} but factor * <<sigma^-1(y).{e}, x.{e}>> = {rhs} "
                                f"for x = {x}, y = {y}")
        return f"{n_ok} pairs in the domain"

    def c_twisted_trace():
        st = S.state
        xs = [x for x in alg if x.grade() is not None]
        if hasattr(model, "_words") and model.name == "qsphere":
            P = R
            xs = [P.element({w: S.field.one}) for w in normal_words(P, N)]
        count = 0
        for x in xs:
            for y in xs:
                if x.grade() + y.grade() != 0:
                    continue
                try:
                    lhs = st(x * y)
                    rhs = st(st.varsigma(y) * x)
                except IntegralUndefined:
                    continue
                count += 1
                _expect(lhs == rhs, f"state(xy) = {lhs} but state(sigma(y)x) = {rhs} for x = {x}, y = {y}")
        return f"{count} pairs"

    def c_sufficient():
        TC = TensorConnection(S.conn, S.conn)
        basis = [ModElem(R, {(e,): R.one()}) for e in S.spinors]
        pool = spinors
        for u in pool:
            for v in basis:
                m = tensor(u, v)
                val = S.bilinear_tensor(S.clifford_tensor(TC.apply(m)))
                _expect(val.is_zero(), f"(( , ))(▷ ⊗ id) nabla_(S⊗S) = {val} on {m}")
        for u in pool:
            for xi in forms:
                for v in basis:
                    m = tensor(tensor(u, xi), v)
                    lhs = S.bilinear_tensor(S.clifford_tensor(S.conn.sigma(m)))
                    rhs = S.bilinear_tensor(S.clifford_tensor(m, 1))
                    _expect(lhs == sgn(-rhs, eps1), f"second sufficient condition fails on {m}: {lhs} vs {-rhs}")

    add("sign-table", "sign-table", c_signs)
    add("connection-laws", "bimodule-connection", c_connection)
    add("clifford-bimodule", "clifford-bimodule-map", c_clifford_bimodule)
    add("J2", "real-structure", c_J2)
    add("J-gamma", "real-structure-grading", c_Jgamma)
    add("gamma2", "grading", c_gamma2)
    add("gamma-a", "grading-even", c_gamma_a)
    add("D-gamma", "grading-odd-dirac", c_Dgamma)
    add("order-zero", "order-zero", c_order_zero)
    add("JD", "real-structure-dirac", c_JD)
    add("lapreserves", "clifford-real-structure", c_lapreserves)
    add("first-order", "first-order", c_first_order)
    add("commutator-clifford", "dirac-commutator", c_commutator)
    add("j-preserves", "connection-preserves-j", c_jpreserves)
    add("right-action", "right-action-consistency", c_right_action)
    add("hermitian", "dirac-hermitian", c_hermitian)
    if model.herm_boundary_pairs():
        add("hermitian-boundary", "dirac-hermitian-boundary", c_herm_boundary, expect_fail=True)
    else:
        results.append(skipped("hermitian-boundary", "dirac-hermitian-boundary", "no boundary for this model"))
    add("isometry-strict", "J-isometry", c_strict_isometry, expect_fail=not model.strict_isometry_expected)
    if S.iso_factor is not None:
        add("isometry-twisted", "J-twisted-isometry", c_twisted_isometry)
    else:
        results.append(skipped("isometry-twisted", "J-twisted-isometry", "J is a strict isometry"))
    if S.state.kind == "matrix-trace":
        results.append(skipped("twisted-trace", "state-twisted-trace", "the trace is tracial"))
    else:
        add("twisted-trace", "state-twisted-trace", c_twisted_trace)
    if model.declares_sufficient:
        add("sufficient-hermitian", "sufficient-hermiticity", c_sufficient)
    else:
        results.append(skipped("sufficient-hermitian", "sufficient-hermiticity", "not declared for this model"))
    return results


CHECK_IDS = ("sign-table", "connection-laws", "clifford-bimodule", "J2", "J-gamma", "gamma2", "gamma-a", "D-gamma",
             "order-zero", "JD", "lapreserves", "first-order", "commutator-clifford", "j-preserves",
             "right-action", "hermitian", "hermitian-boundary", "isometry-strict", "isometry-twisted",
             "twisted-trace", "sufficient-hermitian")
