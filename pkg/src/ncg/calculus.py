"""First order differential calculi on the presented algebras.

d is fixed on generators and extended by the Leibniz rule; one-forms are twisted
free bimodules, so  omega.x = q^{t|x|} x.omega  on basis forms.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .bimod import ModElem, Sym, apply_at, move_left, tensor
from .errors import NcgError
from .ncalg import AlgElem, MatAlg, Presentation, builtin
from .scalar import SYMBOLIC, Field


class Calculus:
    def __init__(self, alg, forms: List[Sym], dgen: Dict[str, ModElem], form_star: Dict[Sym, ModElem],
                 bidegree: Dict[Sym, Optional[Tuple[int, int]]], name: str = "calculus",
                 keep: Optional[Iterable[Sym]] = None):
        self.alg = alg
        self.forms = list(forms)
        self.name = name
        self.form_star = form_star
        self.bidegree = dict(bidegree)
        self.keep = set(keep) if keep is not None else None
        self._dgen: Dict[int, ModElem] = {}
        for g, v in dgen.items():
            self._dgen[alg.gen_index(g)] = v
        self._dcache: Dict[tuple, ModElem] = {}
        # exterior degree two: wedge table on pairs of basis forms, d on basis forms
        self.two_forms: List[Sym] = []
        self.wedge_table: Dict[tuple, ModElem] = {}
        self.d1_table: Dict[tuple, ModElem] = {}

    def set_generator_d(self, gen: str, value: ModElem):
        self._dgen[self.alg.gen_index(gen)] = value
        self._dcache.clear()

    def _project(self, m: ModElem) -> ModElem:
        if self.keep is None:
            return m
        return m.restrict(lambda k: all(s in self.keep for s in k))

    def horizontal(self, keep: Iterable[Sym], name: str) -> "Calculus":
        """The same d followed by projection onto the span of `keep`."""
        c = Calculus(self.alg, [f for f in self.forms if f in set(keep)], {}, self.form_star,
                     self.bidegree, name, keep)
        c._dgen = dict(self._dgen)
        return c

    # d on the algebra -----------------------------------------------------
    def d_word(self, w) -> ModElem:
        w = tuple(w)
        hit = self._dcache.get(w)
        if hit is not None:
            return hit
        alg = self.alg
        one = alg.field.one
        out = ModElem(alg)
        for k, g in enumerate(w):
            if g not in self._dgen:
                raise NcgError(f"d is not defined on generator {alg.gen_names[g]}")
            pre = alg.element({w[:k]: one}) if k else None
            rest = alg.element({w[k + 1:]: one})
            for key, y in self._dgen[g].terms.items():
                coeff = y * move_left(alg, key[0].twist, rest)
                if pre is not None:
                    coeff = pre * coeff
                out = out + ModElem(alg, {key: coeff})
        out = self._project(out)
        self._dcache[w] = out
        return out

    def d(self, x) -> ModElem:
        out = ModElem(self.alg)
        for w, c in x.terms.items():
            out = out + self.d_word(w).scale(c)
        return out

    def component(self, x, sym: Sym):
        return self.d(x).coeff(sym)

    def partial(self, x) -> ModElem:
        return self.d(x).restrict(lambda k: self.bidegree.get(k[0]) == (1, 0))

    def partialbar(self, x) -> ModElem:
        return self.d(x).restrict(lambda k: self.bidegree.get(k[0]) == (0, 1))

    # star on one-forms: (c.omega)^* = omega^* . c^*
    def star_form(self, m: ModElem) -> ModElem:
        out = ModElem(m.ring)
        for k, c in m.terms.items():
            if len(k) != 1:
                raise NcgError("star_form expects one-forms")
            out = out + self.form_star[k[0]].rmul(c.star())
        return out

    # exterior degree two ----------------------------------------------------
    def wedge(self, u: ModElem, v: ModElem) -> ModElem:
        return apply_at(tensor(u, v), self.wedge_table, 0, 2)

    def wedge_tensor(self, m: ModElem, pos: int = 0) -> ModElem:
        return apply_at(m, self.wedge_table, pos, 2)

    def d1(self, m: ModElem) -> ModElem:
        """Exterior derivative of a one-form."""
        out = ModElem(m.ring)
        for k, c in m.terms.items():
            basis = ModElem(m.ring, {k: m.ring.one()})
            out = out + self.wedge(self.d(c), basis)
            out = out + self.d1_table[k].lmul(c)
        return out

    def bidegree_part(self, m: ModElem, bd) -> ModElem:
        return m.restrict(lambda k: self.bidegree.get(k[0]) == bd)

    def pq_project(self, m: ModElem, p: int, q: int) -> ModElem:
        return self.bidegree_part(m, (p, q))

    def partial_components(self, x):
        """(∂+x, ∂-x, ∂0x): coefficients of e+, e-, e0 in dx (e0 absent on the sphere)."""
        dx = self.d(x)
        return tuple(dx.coeff(e) if e in self.forms else self.alg.zero() for e in (E_PLUS, E_MINUS, E_ZERO))

    def __repr__(self):
        return f"Calculus({self.name})"


class MatCalculus(Calculus):
    """Inner calculus on M_2: d = [E12 s + E21 t, -}, with s, t central."""

    def __init__(self, M: MatAlg):
        s = Sym("s", 0, 0)
        t = Sym("t", 0, 0)
        self.s, self.t = s, t
        star = {s: ModElem(M, {(t,): M.scalar(-1)}), t: ModElem(M, {(s,): M.scalar(-1)})}
        super().__init__(M, [s, t], {}, star, {s: (1, 0), t: (0, 1)}, "m2")
        st = Sym("st", 0, 0)
        self.two_forms = [st]
        self.bidegree[st] = (1, 1)
        one = M.one()
        self.wedge_table = {(s, t): ModElem(M, {(st,): one}), (t, s): ModElem(M, {(st,): one}),
                            (s, s): ModElem(M), (t, t): ModElem(M)}
        self.d1_table = {(s,): ModElem(M, {(st,): M.E(2, 1).scale(2)}),
                         (t,): ModElem(M, {(st,): M.E(1, 2).scale(2)})}
        self.theta = ModElem(M, {(s,): M.E(1, 2), (t,): M.E(2, 1)})

    def d(self, x) -> ModElem:
        M = self.alg
        e12, e21 = M.E(1, 2), M.E(2, 1)
        return ModElem(M, {k: v for k, v in (((self.s,), e12 * x - x * e12), ((self.t,), e21 * x - x * e21))
                           if not v.is_zero()})

    def d_word(self, w):
        raise NcgError("M2 is not a word algebra")


# concrete calculi -------------------------------------------------------------

E_PLUS = Sym("e+", 2, 1)
E_MINUS = Sym("e-", -2, 1)
E_ZERO = Sym("e0", 0, 2)
E_PM = Sym("e+^e-", 0, 2)
DZ = Sym("dz", 1, 2)
DZB = Sym("dzb", -1, 2)
DZ_DZB = Sym("dz^dzb", 0, 4)

_CACHE: Dict[tuple, Calculus] = {}


def su2_calculus(field: Field = SYMBOLIC) -> Calculus:
    """Three dimensional calculus on quantum SU(2) with basis e+, e-, e0."""
    key = ("su2", field)
    if key in _CACHE:
        return _CACHE[key]
    P = builtin("su2", field)
    q = field.q
    a, b, c, d = (P.gen(x) for x in "abcd")

    def form(**kw):
        m = ModElem(P)
        for nm, coeff in kw.items():
            sym = {"ep": E_PLUS, "em": E_MINUS, "e0": E_ZERO}[nm]
            m = m + ModElem(P, {(sym,): coeff})
        return m

    dgen = {
        "a": form(e0=a, ep=b.scale(q(1))),
        "b": form(em=a, e0=b.scale(-q(-2))),
        "c": form(e0=c, ep=d.scale(q(1))),
        "d": form(em=c, e0=d.scale(-q(-2))),
    }
    star = {
        E_PLUS: ModElem(P, {(E_MINUS,): P.scalar(-q(-1))}),
        E_MINUS: ModElem(P, {(E_PLUS,): P.scalar(-q(1))}),
        E_ZERO: ModElem(P, {(E_ZERO,): P.scalar(-1)}),
    }
    C = Calculus(P, [E_PLUS, E_MINUS, E_ZERO], dgen, star,
                 {E_PLUS: (1, 0), E_MINUS: (0, 1), E_ZERO: None}, "su2-3d")
    _CACHE[key] = C
    return C


def sphere_calculus(field: Field = SYMBOLIC) -> Calculus:
    """Horizontal part (e+, e-) of the SU(2) calculus: the calculus of the q-sphere,
    with coefficients carried in the ambient SU(2) algebra."""
    key = ("sphere", field)
    if key in _CACHE:
        return _CACHE[key]
    full = su2_calculus(field)
    C = full.horizontal([E_PLUS, E_MINUS], "qsphere")
    P = C.alg
    one = P.one()
    C.two_forms = [E_PM]
    C.bidegree[E_PM] = (1, 1)
    C.wedge_table = {
        (E_PLUS, E_MINUS): ModElem(P, {(E_PM,): one}),
        (E_MINUS, E_PLUS): ModElem(P, {(E_PM,): P.scalar(-field.q(2))}),
        (E_PLUS, E_PLUS): ModElem(P),
        (E_MINUS, E_MINUS): ModElem(P),
    }
    # the derivatives of e+ and e- are vertical, so horizontally they vanish
    C.d1_table = {(E_PLUS,): ModElem(P), (E_MINUS,): ModElem(P)}
    _CACHE[key] = C
    return C


def disk_calculus(field: Field = SYMBOLIC, localized: bool = False) -> Calculus:
    key = ("disk", localized, field)
    if key in _CACHE:
        return _CACHE[key]
    P = builtin("qdisk-localized" if localized else "qdisk", field)
    q = field.q
    z, zb, w = P.gen("z"), P.gen("zb"), P.gen("w")
    one = P.one()
    dgen = {
        "z": ModElem(P, {(DZ,): one}),
        "zb": ModElem(P, {(DZB,): one}),
        # w = 1 - zb z
        "w": ModElem(P, {(DZ,): -zb, (DZB,): z.scale(-q(2))}),
    }
    star = {DZ: ModElem(P, {(DZB,): one}), DZB: ModElem(P, {(DZ,): one})}
    C = Calculus(P, [DZ, DZB], dgen, star, {DZ: (1, 0), DZB: (0, 1)},
                 "qdisk-localized" if localized else "qdisk")
    if localized:
        winv = P.gen("winv")
        C.set_generator_d("winv", C.d(w).lmul(-winv).rmul(winv))
    C.two_forms = [DZ_DZB]
    C.bidegree[DZ_DZB] = (1, 1)
    C.wedge_table = {
        (DZ, DZB): ModElem(P, {(DZ_DZB,): one}),
        (DZB, DZ): ModElem(P, {(DZ_DZB,): P.scalar(-q(2))}),
        (DZ, DZ): ModElem(P),
        (DZB, DZB): ModElem(P),
    }
    C.d1_table = {(DZ,): ModElem(P), (DZB,): ModElem(P)}
    _CACHE[key] = C
    return C


def m2_calculus(field: Field = SYMBOLIC) -> MatCalculus:
    key = ("m2", field)
    if key not in _CACHE:
        _CACHE[key] = MatCalculus(MatAlg(field))
    return _CACHE[key]


# consistency checks --------------------------------------------------------------

def d_free_word(C: Calculus, w) -> ModElem:
    """Leibniz expansion of d on an arbitrary (not necessarily normal) word."""
    return C.d_word(w) if C.alg.is_normal(w) else _leibniz(C, w)


def _leibniz(C: Calculus, w) -> ModElem:
    alg = C.alg
    one = alg.field.one
    out = ModElem(alg)
    for k, g in enumerate(w):
        pre = alg.element({tuple(w[:k]): one})
        rest = alg.element({tuple(w[k + 1:]): one})
        out = out + C._project(C._dgen[g]).lmul(pre).rmul(rest)
    return out


def check_d_consistency(C: Calculus) -> List[str]:
    """d respects every rewrite rule and commutes with star on generators."""
    fails = []
    alg = C.alg
    for lhs, rhs in alg.rules.items():
        left = _leibniz(C, lhs)
        right = ModElem(alg)
        for u, c in rhs.items():
            right = right + (_leibniz(C, u) if u else ModElem(alg)).scale(c)
        if left != right:
            fails.append(f"d does not respect {alg.fmt_word(lhs)}: {left - right}")
    for k, name in enumerate(alg.gen_names):
        if k not in C._dgen:
            continue
        g = alg.gen(name)
        if C.d(g.star()) != C.star_form(C.d(g)):
            fails.append(f"d(x*) != d(x)* for x = {name}")
    return fails


def sphere_product_failures(C: Calculus, pairs) -> List[str]:
    """For |x| = -1, |y| = 1:
    πd(x*y) = (x*∂+y - q(∂-x)*y) e+ + (x*∂-y - q^3(∂+x)*y) e-,
    and πd(x*y) ∧ e- keeps only the e+ part."""
    q = C.alg.field.q
    P = C.alg
    fails = []
    for x, y in pairs:
        xs = x.star()
        dx, dy = C.d(x), C.d(y)
        px, mx = dx.coeff(E_PLUS), dx.coeff(E_MINUS)
        py, my = dy.coeff(E_PLUS), dy.coeff(E_MINUS)
        plus = xs * py - (mx.star() * y).scale(q(1))
        minus = xs * my - (px.star() * y).scale(q(3))
        want = ModElem(P, {(E_PLUS,): plus}) + ModElem(P, {(E_MINUS,): minus})
        got = C.d(xs * y)
        if got != want:
            fails.append(f"πd(x*y) identity fails for x = {x}, y = {y}: {got} vs {want}")
            continue
        top = C.wedge(got, ModElem(P, {(E_MINUS,): P.one()}))
        if top != ModElem(P, {(E_PM,): plus}) + ModElem(P):
            fails.append(f"πd(x*y)∧e- != (..)e+∧e- for x = {x}, y = {y}")
    return fails
