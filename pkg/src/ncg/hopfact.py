"""The U_q(su_{1,1}) action on the quantum disk, its calculus and tensor powers of forms.

Coproduct  ΔX± = X±⊗K + K⁻¹⊗X±,  ΔK = K⊗K  with K = q^{H/2} acting as q^{-|x|}.
On a product f_1 ... f_n of homogeneous factors this gives

    X▷(f_1...f_n) = Σ_i q^{|f_1...f_{i-1}| - |f_{i+1}...f_n|} f_1...(X▷f_i)...f_n .
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple, Union

from .bimod import ModElem, tensor
from .calculus import DZ, DZB, Calculus
from .errors import NcgError
from .spectral import DiskIntegral

GENERATORS = ("X+", "X-", "K", "K^-1")
_ALIASES = {"Xp": "X+", "Xm": "X-", "Kinv": "K^-1", "K-1": "K^-1"}


def _norm(h: str) -> str:
    h = _ALIASES.get(h, h)
    if h not in GENERATORS:
        raise NcgError(f"unknown Hopf generator {h!r}; use one of {', '.join(GENERATORS)}")
    return h


def counit(h: str) -> int:
    return 0 if _norm(h) in ("X+", "X-") else 1


def star_gen(h: str) -> Tuple[int, str]:
    """h^* as (sign, generator):  X+^* = -X-,  K^* = K."""
    h = _norm(h)
    return {"X+": (-1, "X-"), "X-": (-1, "X+"), "K": (1, "K"), "K^-1": (1, "K^-1")}[h]


def antipode_gen(h: str, field) -> Tuple[object, str]:
    """S(X±) = -K X± K⁻¹ = -q^{±1} X±,  S(K) = K⁻¹, as (scalar, generator)."""
    h = _norm(h)
    q = field.q
    return {"X+": (-q(1), "X+"), "X-": (-q(-1), "X-"), "K": (field.one, "K^-1"),
            "K^-1": (field.one, "K")}[h]


class DiskAction:
    def __init__(self, calc: Calculus):
        self.calc = calc
        P = calc.alg
        self.alg = P
        F = P.field
        self.field = F
        z, zb = P.gen("z"), P.gen("zb")
        half, mhalf = F.s(1), F.s(-1)
        gens: Dict[str, Dict[str, object]] = {
            "X+": {"z": P.scalar(mhalf), "zb": (zb * zb).scale(-mhalf)},
            "X-": {"zb": P.scalar(half), "z": (z * z).scale(-half)},
        }
        self._gen = gens
        self._cache: Dict[tuple, object] = {}
        # w = 1 - zb z, so X▷w follows from the coproduct
        for h in ("X+", "X-"):
            gens[h]["w"] = -self._act_word(h, (P.gen_index("zb"), P.gen_index("z")))
        if "winv" in P.index:
            winv = P.gen("winv")
            for h in ("X+", "X-"):
                gens[h]["winv"] = -(winv * gens[h]["w"] * winv)
        one = P.one()
        self._forms = {
            "X+": {DZ: ModElem(P), DZB: (ModElem(P, {(DZB,): one}).rmul(zb) + ModElem(P, {(DZB,): zb})).scale(-mhalf)},
            "X-": {DZB: ModElem(P), DZ: (ModElem(P, {(DZ,): z}) + ModElem(P, {(DZ,): one}).rmul(z)).scale(-half)},
        }
        self._cache.clear()

    # grading operator -------------------------------------------------------
    def _kpow(self, h: str) -> int:
        return -1 if h == "K" else 1

    def _k_alg(self, h, x):
        e = self._kpow(h)
        out = self.alg.zero()
        for g, xg in x.grade_components().items():
            out = out + xg.scale(self.field.q(e * g))
        return out

    # algebra ------------------------------------------------------------------
    def _act_word(self, h: str, w: tuple):
        P = self.alg
        F = self.field
        key = (h, w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        grades = [P.grades[g] for g in w]
        out = P.zero()
        for i, g in enumerate(w):
            name = P.gen_names[g]
            val = self._gen[h].get(name)
            if val is None or val.is_zero():
                continue
            shift = sum(grades[:i]) - sum(grades[i + 1:])
            pre = P.element({w[:i]: F.one})
            post = P.element({w[i + 1:]: F.one})
            out = out + (pre * val * post).scale(F.q(shift))
        self._cache[key] = out
        return out

    def act_alg(self, h: str, x):
        h = _norm(h)
        if h in ("K", "K^-1"):
            return self._k_alg(h, x)
        out = self.alg.zero()
        for w, c in x.terms.items():
            out = out + self._act_word(h, w).scale(c)
        return out

    # forms and tensor products of forms -----------------------------------------
    def act_module(self, h: str, m: ModElem) -> ModElem:
        h = _norm(h)
        P = self.alg
        q = self.field.q
        out = ModElem(P)
        for k, c in m.terms.items():
            gk = [s.grade for s in k]
            if h in ("K", "K^-1"):
                e = self._kpow(h)
                for g, cg in c.grade_components().items():
                    out = out + ModElem(P, {k: cg.scale(q(e * (g + sum(gk))))})
                continue
            # X acting on the coefficient, then on each tensor factor
            out = out + ModElem(P, {k: self.act_alg(h, c).scale(q(-sum(gk)))})
            for g, cg in c.grade_components().items():
                for i, sym in enumerate(k):
                    val = self._forms[h].get(sym)
                    if val is None or val.is_zero():
                        continue
                    shift = g + sum(gk[:i]) - sum(gk[i + 1:])
                    pre = ModElem(P, {k[:i]: cg.scale(q(shift))})
                    post = ModElem(P, {k[i + 1:]: P.one()})
                    out = out + tensor(tensor(pre, val), post)
        return out

    def act(self, word: Union[str, Sequence[str]], target):
        """(h_1 h_2 ... h_n)▷target, the rightmost generator acting first."""
        hs = [word] if isinstance(word, str) else list(word)
        for h in reversed(hs):
            target = self.act_module(h, target) if isinstance(target, ModElem) else self.act_alg(h, target)
        return target

    __call__ = act


# checks ------------------------------------------------------------------------------

def _free_act(A: DiskAction, h: str, word: tuple):
    """h▷ on a word read letter by letter, without rewriting first."""
    return A._act_word(_norm(h), tuple(word))


def module_algebra_failures(A: DiskAction) -> List[str]:
    """h▷(lhs) = h▷(rhs) for every rewrite rule lhs -> rhs of the presentation."""
    P = A.alg
    fails = []
    for lhs, rhs in P.rules.items():
        r = P.element(rhs)
        for h in GENERATORS:
            h = _norm(h)
            left = A._k_alg(h, P.element({lhs: P.field.one})) if h in ("K", "K^-1") else _free_act(A, h, lhs)
            right = A.act_alg(h, r)
            if left != right:
                fails.append(f"{h}▷({P.fmt_word(lhs)}) = {left} but {h}▷(rhs) = {right}")
    return fails


def relation_failures(A: DiskAction, elements: Sequence) -> List[str]:
    """K X± K⁻¹ = q^{±1} X±  and  [X+, X-] = (K² - K⁻²)/(q - q⁻¹)."""
    q = A.field.q
    fails = []
    denom = (q(1) - q(-1)).inverse()
    for x in elements:
        for h, e in (("X+", 1), ("X-", -1)):
            if A.act(["K", h, "K^-1"], x) != A.act(h, x).scale(q(e)):
                fails.append(f"K {h} K^-1 != q^{e} {h} on {x}")
        lhs = A.act(["X+", "X-"], x) - A.act(["X-", "X+"], x)
        rhs = (A.act(["K", "K"], x) - A.act(["K^-1", "K^-1"], x)).scale(denom)
        if lhs != rhs:
            fails.append(f"[X+, X-] relation fails on {x}: {lhs} vs {rhs}")
    return fails


def d_equivariance_failures(A: DiskAction, elements: Sequence) -> List[str]:
    """h▷dx = d(h▷x): the form table agrees with the algebra action."""
    d = A.calc.d
    fails = []
    for x in elements:
        for h in GENERATORS:
            if A.act(h, d(x)) != d(A.act(h, x)):
                fails.append(f"{h}▷d({x}) != d({h}▷{x})")
    return fails


def invariance_failures(A: DiskAction, target, hs: Sequence[str] = GENERATORS) -> List[str]:
    """h▷target = ε(h) target."""
    fails = []
    for h in hs:
        got = A.act(h, target)
        want = target if counit(h) else (ModElem(A.alg) if isinstance(target, ModElem) else A.alg.zero())
        if got != want:
            fails.append(f"{h}▷({target}) = {got}, expected {want}")
    return fails


def integral_invariance_failures(A: DiskAction, elements: Sequence, hs: Sequence[str] = GENERATORS) -> List[str]:
    """∫(h▷x) = ε(h)∫x"""
    I = DiskIntegral(A.alg)
    fails = []
    for x in elements:
        base = I(x)
        for h in hs:
            got = I(A.act(h, x))
            want = base if counit(h) else A.field.zero
            if got != want:
                fails.append(f"∫({h}▷({x})) = {got}, expected {want}")
    return fails


def unitarity_failures(A: DiskAction, elements: Sequence) -> List[str]:
    """(h▷a)^* = S(h^*)▷a^*"""
    fails = []
    for x in elements:
        for h in GENERATORS:
            sgn, hs = star_gen(h)
            c, sh = antipode_gen(hs, A.field)
            lhs = A.act(h, x).star()
            rhs = A.act(sh, x.star()).scale(c * sgn)
            if lhs != rhs:
                fails.append(f"unitarity fails for {h} on {x}: {lhs} vs {rhs}")
    return fails


def invariant_metric(calc: Calculus) -> ModElem:
    """w^-2 (dz ⊗ dzb + q^-2 dzb ⊗ dz) on the localized disk."""
    P = calc.alg
    winv = P.gen("winv")
    w2 = winv * winv
    return ModElem(P, {(DZ, DZB): w2, (DZB, DZ): w2.scale(P.field.q(-2))})
