"""Exact scalars: the field Q(i)(s) with s = q^(1/2), and its specialisations.

A symbolic scalar is stored as re + i*im with re, im reduced rational functions
of s over Q (monic denominators).  That pair is a canonical form because q is a
real parameter, so star just negates the imaginary part.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from flint import fmpq, fmpq_poly

from .errors import NcgError


class PoleAtEvaluationPoint(NcgError):
    pass


_P0 = fmpq_poly([])
_P1 = fmpq_poly([1])


def _poly_key(p):
    return tuple((int(c.p), int(c.q)) for c in p.coeffs())


def _norm(n, d):
    if n.is_zero():
        return _P0, _P1
    if not d.is_one():
        g = n.gcd(d)
        if not g.is_one():
            n = n // g
            d = d // g
        lc = d.leading_coefficient()
        if lc != 1:
            n = n / lc
            d = d / lc
    return n, d


def _add(a, b):
    an, ad = a
    bn, bd = b
    if ad.is_one() and bd.is_one():
        return an + bn, _P1
    if ad == bd:
        return _norm(an + bn, ad)
    return _norm(an * bd + bn * ad, ad * bd)


def _mul(a, b):
    an, ad = a
    bn, bd = b
    if an.is_zero() or bn.is_zero():
        return _P0, _P1
    if ad.is_one() and bd.is_one():
        return an * bn, _P1
    return _norm(an * bn, ad * bd)


def _neg(a):
    return -a[0], a[1]


_ZERO = (_P0, _P1)


def _coerce_rational(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, fmpq):
        return x
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class Scalar:
    """Element of Q(i)(s)."""

    __slots__ = ("re", "im", "_h")

    def __init__(self, re=None, im=None):
        self.re = re if re is not None else _ZERO
        self.im = im if im is not None else _ZERO
        self._h = None

    # construction
    @classmethod
    def const(cls, re=0, im=0) -> "Scalar":
        r = fmpq_poly([_coerce_rational(re)])
        i = fmpq_poly([_coerce_rational(im)])
        return cls((r, _P1) if not r.is_zero() else _ZERO, (i, _P1) if not i.is_zero() else _ZERO)

    @classmethod
    def s_pow(cls, k: int, coeff=1) -> "Scalar":
        c = _coerce_rational(coeff)
        if k >= 0:
            return cls((fmpq_poly([0] * k + [c]), _P1))
        return cls(_norm(fmpq_poly([c]), fmpq_poly([0] * (-k) + [1])))

    @classmethod
    def q_pow(cls, k) -> "Scalar":
        return cls.s_pow(_half_to_s(k))

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls.const(x)

    # predicates
    def is_zero(self) -> bool:
        return self.re[0].is_zero() and self.im[0].is_zero()

    def is_one(self) -> bool:
        return self.im[0].is_zero() and self.re[0].is_one() and self.re[1].is_one()

    def is_real(self) -> bool:
        return self.im[0].is_zero()

    def is_constant(self) -> bool:
        return all(p.degree() <= 0 for p in (self.re[0], self.re[1], self.im[0], self.im[1]))

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        return Scalar(_add(self.re, other.re), _add(self.im, other.im))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_neg(self.re), _neg(self.im))

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        return Scalar(_add(self.re, _neg(other.re)), _add(self.im, _neg(other.im)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if b[0].is_zero() and d[0].is_zero():
            return Scalar(_mul(a, c))
        re = _add(_mul(a, c), _neg(_mul(b, d)))
        im = _add(_mul(a, d), _mul(b, c))
        return Scalar(re, im)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("scalar inverse of zero")
        a, b = self.re, self.im
        if b[0].is_zero():
            return Scalar(_norm(a[1], a[0]))
        # 1/(a+ib) = (a - ib)/(a^2 + b^2)
        n = _add(_mul(a, a), _mul(b, b))
        ninv = _norm(n[1], n[0])
        return Scalar(_mul(a, ninv), _neg(_mul(b, ninv)))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.const(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = Scalar.const(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def star(self) -> "Scalar":
        return Scalar(self.re, _neg(self.im))

    conj = star

    # comparison
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.const(other)
            except TypeError:
                return NotImplemented
        return (self.re[0] == other.re[0] and self.re[1] == other.re[1]
                and self.im[0] == other.im[0] and self.im[1] == other.im[1])

    def __hash__(self):
        if self._h is None:
            self._h = hash(tuple(_poly_key(p) for p in (*self.re, *self.im)))
        return self._h

    # evaluation
    def specialize(self, s0) -> "GaussRat":
        s0 = _coerce_rational(s0)

        def ev(pair):
            n, d = pair
            dv = d(s0)
            if dv == 0:
                raise PoleAtEvaluationPoint(f"denominator {d} vanishes at s = {s0}")
            v = n(s0) / dv
            return Fraction(int(v.p), int(v.q))

        return GaussRat(ev(self.re), ev(self.im))

    def sqrt(self) -> "Scalar":
        """Exact square root of a real scalar, when one exists in the field."""
        if not self.is_real():
            raise ValueError("square root of a non-real scalar")
        n, d = self.re
        try:
            return Scalar(_norm(n.sqrt(), d.sqrt()))
        except Exception as exc:
            raise ValueError(f"{self} is not a square in Q(s)") from exc

    def laurent(self):
        """{s-exponent: GaussRat coefficient} if self is a Laurent polynomial, else None."""
        out = {}
        for part, unit in ((self.re, (1, 0)), (self.im, (0, 1))):
            n, d = part
            if n.is_zero():
                continue
            if d.degree() != len(d.coeffs()) - 1 or any(c != 0 for c in d.coeffs()[:-1]):
                return None
            shift = d.degree()
            for k, c in enumerate(n.coeffs()):
                if c == 0:
                    continue
                f = Fraction(int(c.p), int(c.q))
                e = k - shift
                out[e] = out.get(e, GaussRat(0)) + GaussRat(f * unit[0], f * unit[1])
        return {k: v for k, v in out.items() if not v.is_zero()}

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)})"


def _half_to_s(k) -> int:
    k = Fraction(k)
    e = 2 * k
    if e.denominator != 1:
        raise ValueError(f"q-exponent {k} is not a half-integer")
    return int(e)


class GaussRat:
    """Gaussian rational: the scalars after specialising s to a rational value."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussRat")

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_one(self):
        return self.re == 1 and self.im == 0

    def is_real(self):
        return self.im == 0

    def __add__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("scalar inverse of zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return GaussRat.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = GaussRat(1)
        for _ in range(n):
            r = r * self
        return r

    def star(self):
        return GaussRat(self.re, -self.im)

    conj = star

    def sqrt(self):
        if self.im != 0 or self.re < 0:
            raise ValueError(f"{self} has no rational square root")
        from math import isqrt
        p, q = self.re.numerator, self.re.denominator
        rp, rq = isqrt(p), isqrt(q)
        if rp * rp != p or rq * rq != q:
            raise ValueError(f"{self} has no rational square root")
        return GaussRat(Fraction(rp, rq))

    def __eq__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        return _fmt_gauss(self)

    __repr__ = __str__


Number = Union[Scalar, GaussRat]


class Field:
    """Factory for the scalars used by one computation."""

    symbolic = True

    def const(self, re=0, im=0):
        return Scalar.const(re, im)

    def q(self, k=1):
        return Scalar.q_pow(k)

    def s(self, k=1):
        return Scalar.s_pow(k)

    def coerce(self, x):
        if isinstance(x, Scalar):
            return x
        return Scalar.const(x)

    @property
    def zero(self):
        return Scalar.const(0)

    @property
    def one(self):
        return Scalar.const(1)

    @property
    def i(self):
        return Scalar.const(0, 1)

    def __eq__(self, other):
        return type(other) is Field

    def __hash__(self):
        return hash("symbolic")

    def __repr__(self):
        return "Field(symbolic)"


class SpecializedField(Field):
    """Scalars of Q(i) with s fixed to a positive rational s0 (so q = s0^2)."""

    symbolic = False

    def __init__(self, s0):
        self.s0 = Fraction(s0)
        if self.s0 <= 0:
            raise ValueError("s0 must be a positive rational")

    def const(self, re=0, im=0):
        return GaussRat(re, im)

    def s(self, k=1):
        return GaussRat(self.s0 ** k)

    def q(self, k=1):
        return GaussRat(self.s0 ** _half_to_s(k))

    def coerce(self, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, Scalar):
            return x.specialize(self.s0)
        return GaussRat(x)

    @property
    def zero(self):
        return GaussRat(0)

    @property
    def one(self):
        return GaussRat(1)

    @property
    def i(self):
        return GaussRat(0, 1)

    def __eq__(self, other):
        return isinstance(other, SpecializedField) and other.s0 == self.s0

    def __hash__(self):
        return hash(("specialized", self.s0))

    def __repr__(self):
        return f"SpecializedField(s={self.s0})"


SYMBOLIC = Field()


def field_of(x) -> Field:
    return SYMBOLIC if isinstance(x, Scalar) else None


def specialize(x, s0):
    """Evaluate a scalar (or anything with .specialize) at s = s0."""
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(x)
    return x.specialize(s0)


def qint(n: int, k=1, field: Field = SYMBOLIC):
    """The q-integer [n]_{q^k} = (1 - q^{kn}) / (1 - q^k)."""
    if n == 0:
        return field.zero
    if n < 0:
        return -field.q(k * n) * qint(-n, k, field)
    total = field.zero
    for j in range(n):
        total = total + field.q(k * j)
    return total


# printing -------------------------------------------------------------------

def _fmt_rat(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _fmt_gauss(c: GaussRat) -> str:
    if c.im == 0:
        return _fmt_rat(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_rat(c.im)}*i"
    sign = "-" if c.im < 0 else "+"
    im = "i" if abs(c.im) == 1 else f"{_fmt_rat(abs(c.im))}*i"
    return f"({_fmt_rat(c.re)} {sign} {im})"


def _fmt_spow(e: int) -> str:
    if e == 0:
        return ""
    if e % 2 == 0:
        k = e // 2
        return "q" if k == 1 else f"q^{k}" if k > 0 else f"q^({k})"
    return f"q^({e}/2)"


def _fmt_laurent(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        mono = _fmt_spow(e)
        neg = c.im == 0 and c.re < 0
        cc = -c if neg else c
        if not mono:
            body = _fmt_gauss(cc)
        elif cc.is_one():
            body = mono
        else:
            body = f"{_fmt_gauss(cc)}*{mono}"
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(x: Scalar) -> str:
    """Print in the presentation-file scalar grammar (s powers written as q^(k/2))."""
    lau = x.laurent()
    if lau is not None:
        return _fmt_laurent(lau)
    out = []
    for part, unit in ((x.re, ""), (x.im, "i*")):
        n, d = part
        if n.is_zero():
            continue
        num = _fmt_laurent({k: GaussRat(Fraction(int(c.p), int(c.q))) for k, c in enumerate(n.coeffs()) if c != 0})
        den = _fmt_laurent({k: GaussRat(Fraction(int(c.p), int(c.q))) for k, c in enumerate(d.coeffs()) if c != 0})
        out.append(f"{unit}({num})/({den})")
    return " + ".join(out)
