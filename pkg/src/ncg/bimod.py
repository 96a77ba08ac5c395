"""Twisted free bimodules and their tensor products.

A basis symbol e carries a twist t with  e.x = q^{t|x|} x.e  for homogeneous x.
Elements are dicts {key: left coefficient}, where a key is a tuple of symbols
read as a tensor product; every coefficient is moved to the far left using the
twists, so the representation is canonical.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

from .errors import NcgError


class NotRightLinear(NcgError):
    pass


class MissingBasisValue(NcgError):
    pass


@dataclass(frozen=True)
class Sym:
    name: str
    grade: int = 0
    twist: int = 0
    barred: bool = False

    def bar(self) -> "Sym":
        return Sym(self.name, -self.grade, self.twist, not self.barred)

    def __str__(self):
        return f"bar({self.name})" if self.barred else self.name

    __repr__ = __str__


@dataclass(frozen=True)
class BarKey:
    """The conjugate of a tensor word, before it is rearranged by upsilon."""
    inner: Tuple[Sym, ...]

    @property
    def twist(self):
        return sum(s.twist for s in self.inner)

    @property
    def grade(self):
        return -sum(s.grade for s in self.inner)

    def bar(self):
        return self.inner

    def __str__(self):
        return "bar(" + "⊗".join(str(s) for s in self.inner) + ")"

    __repr__ = __str__


Key = Tuple[Union[Sym, BarKey], ...]


def key_twist(k: Key) -> int:
    return sum(s.twist for s in k)


def key_grade(k: Key) -> int:
    return sum(s.grade for s in k)


def _acc(d, k, c):
    v = d.get(k)
    if v is None:
        if not c.is_zero():
            d[k] = c
    else:
        v = v + c
        if v.is_zero():
            del d[k]
        else:
            d[k] = v


def move_left(ring, twist: int, y):
    """The element y' with  e.y = y'.e  for a symbol (or word) of the given twist."""
    if twist == 0:
        return y
    out = None
    for g, yg in y.grade_components().items():
        t = yg if g == 0 else yg.scale(ring.field.q(twist * g))
        out = t if out is None else out + t
    return out if out is not None else ring.zero()


class ModElem:
    """Element of a twisted free bimodule (or a tensor product of them)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms: Optional[Dict[Key, object]] = None):
        self.ring = ring
        if terms and any(c.is_zero() for c in terms.values()):
            terms = {k: c for k, c in terms.items() if not c.is_zero()}
        self.terms = terms if terms is not None else {}

    @classmethod
    def basis(cls, ring, *syms) -> "ModElem":
        return cls(ring, {tuple(syms): ring.one()})

    @classmethod
    def from_alg(cls, x) -> "ModElem":
        return cls(x.alg, {} if x.is_zero() else {(): x})

    def copy_with(self, terms):
        return ModElem(self.ring, terms)

    # linear structure
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return ModElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ModElem(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ModElem":
        c = self.ring.field.coerce(c)
        if c.is_zero():
            return ModElem(self.ring)
        return ModElem(self.ring, {k: v.scale(c) for k, v in self.terms.items()})

    def lmul(self, x) -> "ModElem":
        """x . self"""
        out = {}
        for k, c in self.terms.items():
            _acc(out, k, x * c)
        return ModElem(self.ring, out)

    def rmul(self, x) -> "ModElem":
        """self . x, moving x to the left through every symbol of the key."""
        out = {}
        for k, c in self.terms.items():
            _acc(out, k, c * move_left(self.ring, key_twist(k), x))
        return ModElem(self.ring, out)

    def is_zero(self) -> bool:
        return not self.terms

    def keys(self):
        return self.terms.keys()

    def coeff(self, *key):
        return self.terms.get(tuple(key), self.ring.zero())

    def to_alg(self):
        """Read an element with only the empty key as an algebra element."""
        bad = [k for k in self.terms if k != ()]
        if bad:
            raise NcgError(f"not an algebra element: has keys {bad}")
        return self.terms.get((), self.ring.zero())

    def map_coeffs(self, f) -> "ModElem":
        out = {}
        for k, c in self.terms.items():
            _acc(out, k, f(c))
        return ModElem(self.ring, out)

    def restrict(self, pred) -> "ModElem":
        return ModElem(self.ring, {k: c for k, c in self.terms.items() if pred(k)})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ModElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=str):
            ks = "⊗".join(str(s) for s in k)
            c = str(self.terms[k])
            parts.append(f"({c})" + (f"·{ks}" if ks else ""))
        return " + ".join(parts)

    __repr__ = __str__


def tensor(m: ModElem, n: ModElem) -> ModElem:
    """m ⊗ n with the coefficients of n moved left across the keys of m."""
    out = {}
    ring = m.ring
    for k, c in m.terms.items():
        tw = key_twist(k)
        for l, d in n.terms.items():
            _acc(out, k + l, c * move_left(ring, tw, d))
    return ModElem(ring, out)


def tensor_all(*ms: ModElem) -> ModElem:
    out = ms[0]
    for m in ms[1:]:
        out = tensor(out, m)
    return out


Table = Union[Dict[Key, ModElem], Callable[[Key], ModElem]]


def _lookup(T: Table, block: Key) -> ModElem:
    if callable(T):
        return T(block)
    try:
        return T[block]
    except KeyError:
        raise MissingBasisValue(f"map has no value on basis element {'⊗'.join(map(str, block))}") from None


def apply_at(m: ModElem, T: Table, pos: int = 0, width: int = 1) -> ModElem:
    """Apply a left-linear map given on basis blocks to the factors pos..pos+width-1.

    The value on a block may carry algebra coefficients; these are moved left
    across the untouched factors in front of the block.
    """
    out = {}
    ring = m.ring
    for k, c in m.terms.items():
        if len(k) < pos + width:
            raise NcgError(f"key {k} too short for a map at position {pos}")
        pre, block, post = k[:pos], k[pos:pos + width], k[pos + width:]
        tw = key_twist(pre)
        for r, y in _lookup(T, block).terms.items():
            _acc(out, pre + r + post, c * move_left(ring, tw, y))
    return ModElem(ring, out)


def apply_basis_map(T: Table, m: ModElem, width: Optional[int] = None) -> ModElem:
    """Apply a map defined on basis keys to the leading factors of every key."""
    if width is None:
        width = len(next(iter(m.terms))) if m.terms else 0
    return apply_at(m, T, 0, width)


def check_right_linear(T: Table, blocks: Iterable[Key], ring, elements: Sequence, name="map"):
    """Raise NotRightLinear unless T(b.x) = T(b).x on the given blocks and algebra elements."""
    for b in blocks:
        tb = _lookup(T, b)
        for x in elements:
            lhs = apply_at(ModElem(ring, {b: ring.one()}).rmul(x), T, 0, len(b))
            rhs = tb.rmul(x)
            if lhs != rhs:
                raise NotRightLinear(
                    f"{name} is not right-linear on {'⊗'.join(map(str, b))} with x = {x}: "
                    f"T(b.x) = {lhs}, T(b).x = {rhs}")


def bar_key(k: Key) -> Key:
    if len(k) == 1:
        return (k[0].bar(),)
    return (BarKey(tuple(k)),)


def unbar_key(k: Key) -> Key:
    if len(k) != 1:
        raise NcgError(f"{k} is not a conjugate key")
    s = k[0]
    if isinstance(s, BarKey):
        return s.inner
    return (s.bar(),)


def conjugate(m: ModElem) -> ModElem:
    """The antilinear bijection E -> conj(E), written in left-coefficient form.

    c.e = e.(q^{-t|c|} c), so bar(c.e) = (q^{-t|c|} c)^* . bar(e).
    """
    out = {}
    ring = m.ring
    for k, c in m.terms.items():
        tw = key_twist(k)
        bk = bar_key(k)
        for g, cg in c.grade_components().items():
            y = cg if tw * g == 0 else cg.scale(ring.field.q(-tw * g))
            _acc(out, bk, y.star())
    return ModElem(ring, out)


def unconjugate(m: ModElem) -> ModElem:
    """Inverse of conjugate: y.bar(e) = bar(e.y^*) = bar(q^{-t|y|} y^* . e)."""
    out = {}
    ring = m.ring
    for k, y in m.terms.items():
        tw = key_twist(k)
        uk = unbar_key(k)
        for g, yg in y.grade_components().items():
            c = yg.star()
            if tw * g:
                c = c.scale(ring.field.q(-tw * g))
            _acc(out, uk, c)
    return ModElem(ring, out)


def upsilon(m: ModElem) -> ModElem:
    """bar(e ⊗ f) -> bar(f) ⊗ bar(e); left-linear, so only keys are rearranged."""
    out = {}
    for k, c in m.terms.items():
        if len(k) == 1 and isinstance(k[0], BarKey):
            nk = tuple(s.bar() for s in reversed(k[0].inner))
        else:
            nk = k
        _acc(out, nk, c)
    return ModElem(m.ring, out)


def upsilon_inv(m: ModElem) -> ModElem:
    out = {}
    for k, c in m.terms.items():
        if len(k) > 1 and all(isinstance(s, Sym) and s.barred for s in k):
            nk = (BarKey(tuple(s.bar() for s in reversed(k))),)
        else:
            nk = k
        _acc(out, nk, c)
    return ModElem(m.ring, out)


class BasisMap:
    """A left-linear map given on basis blocks; optionally declared a bimodule map."""

    def __init__(self, table: Dict[Key, ModElem], width: int = 1, name: str = "map", bimodule: bool = True):
        self.table = table
        self.width = width
        self.name = name
        self.bimodule = bimodule

    def __call__(self, m: ModElem, pos: int = 0) -> ModElem:
        return apply_at(m, self.table, pos, self.width)

    def verify(self, ring, elements: Sequence):
        if self.bimodule:
            check_right_linear(self.table, list(self.table), ring, elements, self.name)
