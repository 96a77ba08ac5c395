"""Presented *-algebras over the scalar field: normal forms by word rewriting.

A presentation is a list of graded generators, oriented rewrite rules
``word -> linear combination of words`` and a star table on generators.
Elements are stored as dicts {normal word: coefficient}; words are tuples of
generator indices.
"""
from __future__ import annotations

import os
import re
import sys
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import NcgError
from .scalar import SYMBOLIC, Field

Word = Tuple[int, ...]

DEFAULT_BUDGET = 10 ** 6


class UnknownGenerator(NcgError):
    pass


class GradeMismatch(NcgError):
    pass


class StarInconsistent(NcgError):
    pass


class NonTerminating(NcgError):
    pass


class ParseError(NcgError, SyntaxError):
    """Malformed presentation text or expression; carries a line/column position."""

    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f" (line {line}, col {col})" if line is not None else (f" (col {col})" if col is not None else "")
        super().__init__(msg + where)


MAX_DEPTH = 3000


def rewrite_budget() -> int:
    env = os.environ.get("NCG_REWRITE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class Presentation:
    def __init__(self, name: str, generators: Sequence[Tuple[str, int]], field: Field = SYMBOLIC):
        self.name = name
        self.field = field
        self.gen_names: List[str] = [g for g, _ in generators]
        self.grades: List[int] = [int(d) for _, d in generators]
        self.index: Dict[str, int] = {g: k for k, g in enumerate(self.gen_names)}
        if len(self.index) != len(self.gen_names):
            raise NcgError("duplicate generator name")
        for g in self.gen_names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g) or g in ("q", "i", "s"):
                raise NcgError(f"illegal generator name {g!r}")
        self.rules: Dict[Word, Dict[Word, object]] = {}
        self.rule_order: List[Word] = []
        self.star_table: Dict[int, Dict[Word, object]] = {}
        self._lengths: List[int] = []
        self._nf_cache: Dict[Word, Dict[Word, object]] = {}
        self._star_cache: Dict[Word, "AlgElem"] = {}
        self._budget_left = 0
        self._active: set = set()

    # construction ---------------------------------------------------------
    def add_rule(self, lhs: Word, rhs: Dict[Word, object]):
        lhs = tuple(lhs)
        if len(lhs) < 1:
            raise NcgError("empty rule left-hand side")
        g = self.word_grade(lhs)
        for w, c in rhs.items():
            if not c.is_zero() and self.word_grade(w) != g:
                raise GradeMismatch(
                    f"rule {self.fmt_word(lhs)} -> ... has term {self.fmt_word(w)} of grade "
                    f"{self.word_grade(w)}, expected {g}")
        self.rules[lhs] = {w: c for w, c in rhs.items() if not c.is_zero()}
        if lhs not in self.rule_order:
            self.rule_order.append(lhs)
        self._lengths = sorted({len(l) for l in self.rules})
        self._nf_cache.clear()
        self._star_cache.clear()

    def set_star(self, gen: str, rhs: Dict[Word, object]):
        k = self.gen_index(gen)
        for w, c in rhs.items():
            if not c.is_zero() and self.word_grade(w) != -self.grades[k]:
                raise GradeMismatch(f"star({gen}) must have grade {-self.grades[k]}")
        self.star_table[k] = {w: c for w, c in rhs.items() if not c.is_zero()}
        self._star_cache.clear()

    def gen_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r} in presentation {self.name}") from None

    def word_grade(self, w: Word) -> int:
        return sum(self.grades[k] for k in w)

    def fmt_word(self, w: Word) -> str:
        return "*".join(self.gen_names[k] for k in w) if w else "1"

    def _short(self, w: Word) -> str:
        return self.fmt_word(w) if len(w) <= 12 else f"{self.fmt_word(w[:12])}... (length {len(w)})"

    # elements ---------------------------------------------------------------
    def element(self, terms: Dict[Word, object]) -> "AlgElem":
        out: Dict[Word, object] = {}
        for w, c in terms.items():
            if c.is_zero():
                continue
            for u, d in self.normal_form_word(w).items():
                _acc(out, u, c * d)
        return AlgElem(self, out)

    def gen(self, name: str) -> "AlgElem":
        return self.element({(self.gen_index(name),): self.field.one})

    def one(self) -> "AlgElem":
        return AlgElem(self, {(): self.field.one})

    def zero(self) -> "AlgElem":
        return AlgElem(self, {})

    def scalar(self, c) -> "AlgElem":
        c = self.field.coerce(c)
        return AlgElem(self, {} if c.is_zero() else {(): c})

    def word(self, *names: str) -> "AlgElem":
        return self.element({tuple(self.gen_index(n) for n in names): self.field.one})

    def parse(self, text: str) -> "AlgElem":
        return self.element(parse_expression(text, self))

    # rewriting ----------------------------------------------------------
    def _find_redex(self, w: Word):
        n = len(w)
        rules = self.rules
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                sub = w[i:i + L]
                if sub in rules:
                    return i, L, rules[sub]
        return None

    def is_normal(self, w: Word) -> bool:
        return self._find_redex(tuple(w)) is None

    def normal_form_word(self, w: Word) -> Dict[Word, object]:
        """Normal form of one word (memoised); raises NonTerminating past the budget."""
        w = tuple(w)
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        self._budget_left = rewrite_budget()
        self._active = set()
        if sys.getrecursionlimit() < MAX_DEPTH + 500:
            sys.setrecursionlimit(MAX_DEPTH + 500)
        return self._nf(w)

    def _nf(self, w: Word) -> Dict[Word, object]:
        hit = self._nf_cache.get(w)
        if hit is not None:
            return hit
        # a word met again while still being reduced means a rewriting cycle
        if w in self._active:
            raise NonTerminating(f"rewriting of {self._short(w)} in {self.name} cycles")
        if len(self._active) > MAX_DEPTH:
            raise NonTerminating(f"rewriting of {self._short(w)} in {self.name} does not terminate")
        red = self._find_redex(w)
        if red is None:
            res = {w: self.field.one}
        else:
            self._budget_left -= 1
            if self._budget_left < 0:
                raise NonTerminating(
                    f"rewrite budget exhausted while reducing {self._short(w)} in {self.name}")
            i, L, rhs = red
            res = {}
            pre, post = w[:i], w[i + L:]
            self._active.add(w)
            try:
                for u, c in rhs.items():
                    for v, d in self._nf(pre + u + post).items():
                        _acc(res, v, c * d)
            finally:
                self._active.discard(w)
        self._nf_cache[w] = res
        return res

    def one_step(self, w: Word, i: int, L: int) -> Dict[Word, object]:
        rhs = self.rules[tuple(w[i:i + L])]
        return {tuple(w[:i]) + u + tuple(w[i + L:]): c for u, c in rhs.items()}

    # star -------------------------------------------------------------
    def star_word(self, w: Word) -> "AlgElem":
        hit = self._star_cache.get(w)
        if hit is not None:
            return hit
        out = self.one()
        for k in reversed(w):
            if k not in self.star_table:
                raise StarInconsistent(f"no star given for generator {self.gen_names[k]}")
            out = out * self.element(self.star_table[k])
        self._star_cache[w] = out
        return out

    def validate_star(self):
        """Star must be an involution and respect every rule."""
        if not self.star_table:
            return
        for k in range(len(self.gen_names)):
            g = AlgElem(self, {(k,): self.field.one})
            if g.star().star() != g:
                raise StarInconsistent(f"star is not involutive on {self.gen_names[k]}")
        for lhs in self.rule_order:
            left = self.star_word(lhs)
            right = self.zero()
            for u, c in self.rules[lhs].items():
                right = right + self.star_word(u).scale(c.star())
            if left != right:
                raise StarInconsistent(
                    f"star does not preserve rule {self.fmt_word(lhs)} -> {format_terms(self.rules[lhs], self)}")

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.gen_names == other.gen_names and self.grades == other.grades
                and self.rules == other.rules and self.star_table == other.star_table)

    def __hash__(self):
        return hash((self.name, tuple(self.gen_names)))

    def __repr__(self):
        return f"Presentation({self.name}: {len(self.gen_names)} generators, {len(self.rules)} rules)"


def _acc(d: Dict, k, c):
    v = d.get(k)
    if v is None:
        d[k] = c
    else:
        v = v + c
        if v.is_zero():
            del d[k]
        else:
            d[k] = v


class AlgElem:
    """Element of a presented algebra, always in normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Presentation, terms: Dict[Word, object]):
        self.alg = alg
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, AlgElem):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        if not isinstance(other, AlgElem):
            try:
                other = self.alg.scalar(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return AlgElem(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgElem):
            try:
                other = self.alg.scalar(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgElem":
        c = self.alg.field.coerce(c)
        if c.is_zero():
            return AlgElem(self.alg, {})
        return AlgElem(self.alg, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgElem):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        alg = self.alg
        out: Dict[Word, object] = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                cd = c * d
                for w, e in alg.normal_form_word(u + v).items():
                    _acc(out, w, cd * e)
        return AlgElem(alg, out)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def star(self) -> "AlgElem":
        out = AlgElem(self.alg, {})
        for w, c in self.terms.items():
            out = out + self.alg.star_word(w).scale(c.star())
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Word):
        return self.terms.get(tuple(w), self.alg.field.zero)

    def scalar_part(self):
        return self.terms.get((), self.alg.field.zero)

    def is_scalar(self) -> bool:
        return all(w == () for w in self.terms)

    def grade_components(self) -> Dict[int, "AlgElem"]:
        out: Dict[int, Dict[Word, object]] = {}
        for w, c in self.terms.items():
            out.setdefault(self.alg.word_grade(w), {})[w] = c
        return {g: AlgElem(self.alg, t) for g, t in out.items()}

    def grade(self) -> Optional[int]:
        gs = {self.alg.word_grade(w) for w in self.terms}
        if len(gs) > 1:
            raise ValueError("element is not homogeneous")
        return gs.pop() if gs else None

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def map_coeffs(self, f) -> "AlgElem":
        out = {}
        for w, c in self.terms.items():
            v = f(c)
            if not v.is_zero():
                out[w] = v
        return AlgElem(self.alg, out)

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.terms == other.terms
        try:
            return self.terms == self.alg.scalar(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_terms(self.terms, self.alg)

    __repr__ = __str__


# confluence --------------------------------------------------------------

def critical_words(P: Presentation, max_len: int = 3) -> List[Tuple[Word, Tuple[int, int], Tuple[int, int]]]:
    """Overlap and inclusion ambiguities of total length <= max_len."""
    out = []
    rules = P.rule_order
    for l1 in rules:
        for l2 in rules:
            # overlap: proper suffix of l1 equals proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if len(w) <= max_len:
                        out.append((w, (0, len(l1)), (len(l1) - k, len(l2))))
            # inclusion: l2 strictly inside l1
            if l1 != l2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2 and len(l1) <= max_len:
                        out.append((l1, (0, len(l1)), (i, len(l2))))
    return out


def check_local_confluence(P: Presentation, max_len: int = 3):
    """Resolve every critical pair; returns a list of (word, left, right) that fail to join."""
    fails = []
    for w, (i1, L1), (i2, L2) in critical_words(P, max_len):
        left = P.element(P.one_step(w, i1, L1))
        right = P.element(P.one_step(w, i2, L2))
        if left != right:
            fails.append((P.fmt_word(w), str(left), str(right)))
    return fails


# text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))")


def _tokenize(text: str, line=None):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}", line, pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    """Recursive descent over  expr := term (('+'|'-') term)* ;
    term := factor (['*'|'/'] factor)* ; factor := ['-'] atom ['^' exponent]."""

    def __init__(self, text, alg: Optional[Presentation], field: Field, line=None):
        self.toks = _tokenize(text, line)
        self.k = 0
        self.alg = alg
        self.field = field
        self.line = line

    def peek(self):
        return self.toks[self.k]

    def take(self, val=None):
        t = self.toks[self.k]
        if val is not None and t[1] != val:
            raise ParseError(f"expected {val!r}, found {t[1] or 'end of input'!r}", self.line, t[2])
        self.k += 1
        return t

    def error(self, msg):
        raise ParseError(msg, self.line, self.peek()[2])

    # elements are dicts {word: coeff} in the free algebra
    def parse(self):
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        if self.peek()[1] in ("+", "-"):
            acc = {}
        else:
            acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            for w, c in t.items():
                _acc(acc, w, c if op == "+" else -c)
        return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t[1] == "*":
                self.take()
                acc = _free_mul(acc, self.factor())
            elif t[1] == "/":
                self.take()
                d = self.factor()
                if any(w != () for w in d):
                    self.error("division is only allowed by scalars")
                c = d.get((), self.field.zero)
                if c.is_zero():
                    self.error("division by zero")
                acc = {w: v / c for w, v in acc.items()}
            elif t[0] in ("num", "id") or t[1] == "(":
                acc = _free_mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        if self.peek()[1] == "-":
            self.take()
            return {w: -c for w, c in self.factor().items()}
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            e = self.exponent()
            if isinstance(base, str):  # q^e
                return {(): self.field.q(e)}
            if e.denominator != 1 or e < 0:
                if len(base) == 1 and () in base:
                    if e.denominator != 1:
                        self.error("fractional power of a scalar other than q")
                    return {(): base[()] ** int(e)}
                self.error("negative or fractional power of a non-scalar")
            out = {(): self.field.one}
            for _ in range(int(e)):
                out = _free_mul(out, base)
            return out
        if isinstance(base, str):
            return {(): self.field.q(1)}
        return base

    def exponent(self):
        t = self.peek()
        sign = 1
        if t[1] == "-":
            self.take()
            sign = -1
            t = self.peek()
        if t[0] == "num":
            self.take()
            return Fraction(sign * int(t[1]))
        if t[1] == "(":
            self.take()
            s2 = 1
            if self.peek()[1] == "-":
                self.take()
                s2 = -1
            n = self.take()
            if n[0] != "num":
                raise ParseError("expected integer exponent", self.line, n[2])
            val = Fraction(int(n[1]))
            if self.peek()[1] == "/":
                self.take()
                dd = self.take()
                if dd[0] != "num":
                    raise ParseError("expected integer denominator", self.line, dd[2])
                val = val / int(dd[1])
            self.take(")")
            return sign * s2 * val
        self.error("expected exponent")

    def atom(self):
        t = self.take()
        kind, val, col = t
        if kind == "num":
            return {(): self.field.const(int(val))}
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if kind == "id":
            if val == "q":
                return "q"
            if val == "i":
                return {(): self.field.i}
            if self.alg is None:
                raise ParseError(f"generator {val!r} in a scalar expression", self.line, col)
            if val not in self.alg.index:
                raise UnknownGenerator(f"unknown generator {val!r} (line {self.line}, col {col})")
            return {(self.alg.index[val],): self.field.one}
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.line, col)


def _free_mul(a, b):
    out = {}
    for u, c in a.items():
        for v, d in b.items():
            _acc(out, u + v, c * d)
    return out


def parse_expression(text: str, alg: Presentation, line=None) -> Dict[Word, object]:
    """Parse into the free algebra on alg's generators (no rewriting)."""
    return _Parser(text, alg, alg.field, line).parse()


def parse_scalar(text: str, field: Field = SYMBOLIC):
    d = _Parser(text, None, field).parse()
    return d.get((), field.zero)


def parse_presentation(text: str, name: str = "presentation", field: Field = SYMBOLIC) -> Presentation:
    section = None
    gens: List[Tuple[str, int]] = []
    rules: List[Tuple[str, str, int]] = []
    stars: List[Tuple[str, str, int]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            section = m.group(1)
            if section not in ("generators", "rules", "star", "presentation"):
                raise ParseError(f"unknown section [{section}]", ln, 1)
            continue
        if section is None:
            raise ParseError("content before the first section header", ln, 1)
        if section == "presentation":
            m = re.fullmatch(r"name\s*=?\s*(\S+)", line)
            if not m:
                raise ParseError("expected 'name <id>'", ln, 1)
            name = m.group(1)
        elif section == "generators":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s+(-?\d+)", line)
            if not m:
                raise ParseError("expected '<name> <grade>'", ln, 1)
            gens.append((m.group(1), int(m.group(2))))
        else:
            if "->" not in line:
                raise ParseError("expected '<lhs> -> <rhs>'", ln, 1)
            lhs, rhs = line.split("->", 1)
            off = raw.index("->") + 3
            (rules if section == "rules" else stars).append((lhs.strip(), rhs.strip(), ln, off))
    P = Presentation(name, gens, field)
    for lhs, rhs, ln, off in rules:
        lw = parse_expression(lhs, P, ln)
        if len(lw) != 1 or not next(iter(lw.values())).is_one() or next(iter(lw)) == ():
            raise ParseError("rule left-hand side must be a single word", ln, 1)
        P.add_rule(next(iter(lw)), parse_expression(rhs, P, ln))
    for lhs, rhs, ln, off in stars:
        if lhs not in P.index:
            raise UnknownGenerator(f"unknown generator {lhs!r} in [star] (line {ln})")
        P.set_star(lhs, parse_expression(rhs, P, ln))
    P.validate_star()
    return P


def _wrapped(text: str) -> bool:
    """True if text is one parenthesised group, like (1 - 2*i)."""
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for k, ch in enumerate(text):
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth == 0 and k < len(text) - 1:
            return False
    return True


def format_terms(terms: Dict[Word, object], alg: Presentation) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms, key=lambda w: (len(w), w)):
        c = terms[w]
        cs = str(c)
        wtxt = alg.fmt_word(w)
        simple = " " not in cs and ("/" not in cs.replace("^(", "") or re.fullmatch(r"-?\d+/\d+", cs))
        if not simple and _wrapped(cs):
            simple = True
        if not w:
            body = cs if simple else f"({cs})"
        elif c.is_one():
            body = wtxt
        elif (-c).is_one():
            body = "-" + wtxt
        elif simple:
            body = f"{cs}*{wtxt}"
        else:
            body = f"({cs})*{wtxt}"
        parts.append(body)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def print_presentation(P: Presentation) -> str:
    lines = ["[presentation]", f"name {P.name}", "[generators]"]
    lines += [f"{g} {d}" for g, d in zip(P.gen_names, P.grades)]
    lines.append("[rules]")
    for lhs in P.rule_order:
        lines.append(f"{P.fmt_word(lhs)} -> {format_terms(P.rules[lhs], P)}")
    if P.star_table:
        lines.append("[star]")
        for k in sorted(P.star_table):
            lines.append(f"{P.gen_names[k]} -> {format_terms(P.star_table[k], P)}")
    return "\n".join(lines) + "\n"


def normal_words(P: Presentation, max_len: int) -> List[Word]:
    """All irreducible words up to max_len, shortest first."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for k in range(len(P.gen_names)):
                u = w + (k,)
                if P.is_normal(u):
                    nxt.append(u)
        out += nxt
        layer = nxt
    return out


# exact 2x2 matrices ---------------------------------------------------------

class Mat2:
    """Element of M_2 over the scalar field; grade is always 0."""

    __slots__ = ("alg", "e")

    def __init__(self, alg: "MatAlg", entries):
        self.alg = alg
        self.e = tuple(entries)

    def __add__(self, o):
        if not isinstance(o, Mat2):
            o = self.alg.scalar(o)
        return Mat2(self.alg, (a + b for a, b in zip(self.e, o.e)))

    __radd__ = __add__

    def __neg__(self):
        return Mat2(self.alg, (-a for a in self.e))

    def __sub__(self, o):
        if not isinstance(o, Mat2):
            o = self.alg.scalar(o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, c):
        c = self.alg.field.coerce(c)
        return Mat2(self.alg, (c * a for a in self.e))

    def __mul__(self, o):
        if not isinstance(o, Mat2):
            try:
                return self.scale(o)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.e
        p, r, s, t = o.e
        return Mat2(self.alg, (a * p + b * s, a * r + b * t, c * p + d * s, c * r + d * t))

    def __rmul__(self, o):
        return self.scale(o)

    def star(self):
        a, b, c, d = self.e
        return Mat2(self.alg, (a.star(), c.star(), b.star(), d.star()))

    def trace(self):
        return self.e[0] + self.e[3]

    def is_scalar(self):
        a, b, c, d = self.e
        return b.is_zero() and c.is_zero() and a == d

    def scalar_part(self):
        return self.e[0]

    def is_zero(self):
        return all(x.is_zero() for x in self.e)

    def grade_components(self):
        return {} if self.is_zero() else {0: self}

    def map_coeffs(self, f):
        return Mat2(self.alg, (f(x) for x in self.e))

    def __eq__(self, o):
        if not isinstance(o, Mat2):
            try:
                o = self.alg.scalar(o)
            except TypeError:
                return NotImplemented
        return self.e == o.e

    def __hash__(self):
        return hash(self.e)

    def __str__(self):
        a, b, c, d = (str(x) for x in self.e)
        return f"[[{a}, {b}], [{c}, {d}]]"

    __repr__ = __str__


class MatAlg:
    """The algebra M_2 with conjugate-transpose star."""

    name = "m2"

    def __init__(self, field: Field = SYMBOLIC):
        self.field = field

    def element(self, rows):
        (a, b), (c, d) = rows
        f = self.field.coerce
        return Mat2(self, (f(a), f(b), f(c), f(d)))

    def E(self, i: int, j: int) -> Mat2:
        z, o = self.field.zero, self.field.one
        return Mat2(self, tuple(o if (r, c) == (i, j) else z for r in (1, 2) for c in (1, 2)))

    def one(self):
        return self.element(((1, 0), (0, 1)))

    def zero(self):
        return self.element(((0, 0), (0, 0)))

    def scalar(self, c):
        c = self.field.coerce(c)
        z = self.field.zero
        return Mat2(self, (c, z, z, c))

    def basis(self):
        return [self.E(i, j) for i in (1, 2) for j in (1, 2)]

    def __repr__(self):
        return "MatAlg(M2)"


# built-in presentations -----------------------------------------------------

# Quantum SU(2), generators of the matrix (a b; c d).  Normal words are
# a^i b^j c^k and d^l b^j c^k: a and d are moved left of b, c and never meet.
SU2_TEXT = """\
[presentation]
name su2
[generators]
a 1
b -1
c 1
d -1
[rules]
b*a -> q*a*b
c*a -> q*a*c
c*b -> b*c
b*d -> q^(-1)*d*b
c*d -> q^(-1)*d*c
a*d -> 1 + q^(-1)*b*c
d*a -> 1 + q*b*c
[star]
a -> d
b -> -q^(-1)*c
c -> -q*b
d -> a
"""

# Quantum disk with w = 1 - zb*z; normal words are w^m z^i and w^m zb^j.
QDISK_TEXT = """\
[presentation]
name qdisk
[generators]
z 1
zb -1
w 0
[rules]
zb*z -> 1 - w
z*zb -> 1 - q^(-2)*w
z*w -> q^(-2)*w*z
zb*w -> q^2*w*zb
[star]
z -> zb
zb -> z
w -> w
"""

QDISK_LOCALIZED_TEXT = QDISK_TEXT.replace("name qdisk", "name qdisk-localized").replace(
    "w 0\n", "w 0\nwinv 0\n").replace(
    "[star]", "w*winv -> 1\nwinv*w -> 1\nz*winv -> q^2*winv*z\nzb*winv -> q^(-2)*winv*zb\n[star]"
) + "winv -> winv\n"

_BUILTIN = {"su2": SU2_TEXT, "qdisk": QDISK_TEXT, "qdisk-localized": QDISK_LOCALIZED_TEXT}
_BUILT: Dict[Tuple[str, Field], Presentation] = {}


def builtin(name: str, field: Field = SYMBOLIC) -> Presentation:
    key = (name, field)
    if key not in _BUILT:
        _BUILT[key] = parse_presentation(_BUILTIN[name], name, field)
    return _BUILT[key]
