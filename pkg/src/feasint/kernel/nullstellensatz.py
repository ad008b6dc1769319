"""Sparse polynomials over Q or F_p and Nullstellensatz certificates.

Monomials are sorted tuples of (variable, exponent) with variable = atom id.
Text syntax: terms joined by `` + `` or `` - ``, each term ``c`` or
``c * x1^e1 * x2 ...`` (exponent 1 omitted); ``0`` is the zero polynomial.

Certificate file::

    field Q            (or: field F_7)
    g <polynomial>     one per input clause, in order
    h <polynomial>     one per variable x1..xs, in order
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .. import formula as F
from .. import semantics
from ..cnf import Clause, ClauseSet
from ..errors import LanguageError, ParseError, PreconditionError
from .sequent import Verdict

Monomial = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Field:
    p: int | None = None  # None means the rationals

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
                raise PreconditionError(f"{self.p} is not a prime")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    def coerce(self, c) -> "int | Fraction":
        if self.p is None:
            return Fraction(c)
        c = Fraction(c)
        return (c.numerator * pow(c.denominator, -1, self.p)) % self.p

    @staticmethod
    def parse(text: str) -> "Field":
        t = text.strip()
        if t == "Q":
            return Field()
        if t.startswith("F_") and t[2:].isdigit():
            return Field(int(t[2:]))
        raise ParseError(f"unknown field {text!r}")


QQ = Field()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


@dataclass(frozen=True)
class Polynomial:
    terms: tuple[tuple[Monomial, object], ...]
    field: Field = QQ

    @staticmethod
    def make(terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]], field: Field = QQ) -> "Polynomial":
        acc: dict[Monomial, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = tuple(sorted((v, e) for v, e in m if e))
            acc[m] = field.coerce(acc.get(m, 0) + field.coerce(c))
        return Polynomial(tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda t: _mono_key(t[0]))), field)

    @staticmethod
    def const(c, field: Field = QQ) -> "Polynomial":
        return Polynomial.make({(): c}, field)

    @staticmethod
    def var(v: int, field: Field = QQ) -> "Polynomial":
        return Polynomial.make({((v, 1),): 1}, field)

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise PreconditionError(f"field mismatch: {self.field.name} vs {other.field.name}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        return Polynomial.make(list(self.terms) + list(other.terms), self.field)

    def __neg__(self) -> "Polynomial":
        return Polynomial.make([(m, -c) for m, c in self.terms], self.field)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc: dict[Monomial, object] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial.make(acc, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == (((), self.field.coerce(1)),)

    def variables(self) -> set[int]:
        return {v for m, _ in self.terms for v, _ in m}

    def evaluate(self, a: Mapping[int, int]):
        total = self.field.coerce(0)
        for m, c in self.terms:
            t = c
            for v, e in m:
                t = t * (a[v] ** e)
            total = total + t
        return self.field.coerce(total)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m, _ in self.terms), default=0)

    def size(self) -> int:
        return sum(1 + len(m) for m, _ in self.terms)

    @property
    def text(self) -> str:
        return poly_text(self)


def _mono_key(m: Monomial):
    return (sum(e for _, e in m), m)


def _coef_text(c) -> str:
    return str(c)


def poly_text(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.terms:
        neg = c < 0 if p.field.p is None else False
        mag = -c if neg else c
        body = " * ".join([_coef_text(mag)] + [f"x{v + 1}" if e == 1 else f"x{v + 1}^{e}" for v, e in m])
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_COEF = re.compile(r"-?\d+(/\d+)?$")
_VAR = re.compile(r"x(\d+)(\^(\d+))?$")


def parse_polynomial(text: str, field: Field = QQ) -> Polynomial:
    toks = text.replace("*", " * ").split()
    if not toks:
        raise ParseError("empty polynomial")
    terms: list[tuple[Monomial, object]] = []
    sign = 1
    cur: list[str] = []

    def flush():
        nonlocal cur
        if not cur:
            raise ParseError(f"missing term in {text!r}")
        coef = Fraction(1)
        mono: dict[int, int] = {}
        factors = [t for t in cur if t != "*"]
        for j, f in enumerate(factors):
            if _COEF.match(f):
                coef *= Fraction(f)
                continue
            m = _VAR.match(f)
            if not m or int(m.group(1)) < 1:
                raise ParseError(f"cannot read factor {f!r}")
            v = int(m.group(1)) - 1
            mono[v] = mono.get(v, 0) + int(m.group(3) or 1)
        terms.append((tuple(sorted(mono.items())), sign * coef))
        cur = []

    for j, t in enumerate(toks):
        if t in ("+", "-") and cur:
            flush()
            sign = -1 if t == "-" else 1
        elif t in ("+", "-") and j == 0:
            sign = -1 if t == "-" else 1
        else:
            cur.append(t)
    flush()
    return Polynomial.make(terms, field)


# ------------------------------------------------------------ translation

def formula_to_polynomial(f: F.Formula, field: Field = QQ) -> Polynomial:
    """P_f with P(top)=0, P(bot)=1, P(p)=1-x, P(not)=1-P, P(or)=product, P(and)=P+Q-PQ."""
    one = Polynomial.const(1, field)
    memo: dict[int, Polynomial] = {}
    stack = [(f, False)]
    while stack:
        g, ready = stack.pop()
        if id(g) in memo:
            continue
        if not ready:
            stack.append((g, True))
            stack.extend((c, False) for c in g.children)
            continue
        k = g.kind
        if k == F.TOP:
            r = Polynomial.const(0, field)
        elif k == F.BOT:
            r = one
        elif k == F.ATOM:
            r = one - Polynomial.var(g.atom, field)
        elif k == F.NOT:
            r = one - memo[id(g.child)]
        elif k == F.OR:
            r = memo[id(g.left)] * memo[id(g.right)]
        elif k == F.AND:
            a, b = memo[id(g.left)], memo[id(g.right)]
            r = a + b - a * b
        else:
            raise LanguageError(f"{k} is not an L_b connective")
        memo[id(g)] = r
    return memo[id(f)]


def clause_polynomial(c: Clause, field: Field = QQ) -> Polynomial:
    """P of the binary disjunction of the clause: product of literal polynomials."""
    out = Polynomial.const(1, field)
    for l in c:
        x = Polynomial.var(l.atom, field)
        out = out * (Polynomial.const(1, field) - x if l.positive else x)
    return out


@dataclass(frozen=True)
class NSCertificate:
    g: tuple[Polynomial, ...]
    h: tuple[Polynomial, ...]
    field: Field = QQ

    def degree(self) -> int:
        return max((p.degree() for p in self.g + self.h), default=0)

    def size(self) -> int:
        return sum(p.size() for p in self.g + self.h)


def ns_sum(inputs: ClauseSet, cert: NSCertificate) -> Polynomial:
    fld = cert.field
    total = Polynomial.const(0, fld)
    for c, g in zip(inputs.clauses, cert.g):
        total = total + clause_polynomial(c, fld) * g
    for v, h in enumerate(cert.h):
        x = Polynomial.var(v, fld)
        total = total + (x * x - x) * h
    return total


def check_ns(inputs: ClauseSet, cert: NSCertificate, field: Field | None = None) -> Verdict:
    fld = field or cert.field
    if cert.field != fld or any(p.field != fld for p in cert.g + cert.h):
        raise PreconditionError(f"field mismatch: certificate is not over {fld.name}")
    r, s = len(inputs.clauses), inputs.num_atoms
    if len(cert.g) != r:
        raise PreconditionError(f"arity mismatch: {len(cert.g)} g-polynomials for {r} clauses")
    if len(cert.h) != s:
        raise PreconditionError(f"arity mismatch: {len(cert.h)} h-polynomials for {s} variables")
    total = ns_sum(inputs, cert)
    if not total.is_one():
        return Verdict(False, None, "NS", f"certificate sums to {total.text}, not 1")
    return Verdict(True, size=cert.size())


def certificate_from_truth_table(inputs: ClauseSet, field: Field = QQ) -> NSCertificate:
    """Certificate of an unsatisfiable clause set via point indicators.

    Each Boolean point is charged to one clause it falsifies; the remainder
    vanishes on the cube and is divided out by the x^2 - x generators.
    """
    s = inputs.num_atoms
    semantics.check_cap(s)
    one = Polynomial.const(1, field)
    g = [Polynomial.const(0, field) for _ in inputs.clauses]
    for bits in product((0, 1), repeat=s):
        idx = next((i for i, c in enumerate(inputs.clauses) if all(bits[l.atom] != l.positive for l in c)), None)
        if idx is None:
            raise PreconditionError("clause set is satisfiable")
        delta = one
        for v, b in enumerate(bits):
            x = Polynomial.var(v, field)
            delta = delta * (x if b else one - x)
        g[idx] = g[idx] + delta
    partial = Polynomial.const(0, field)
    for c, gi in zip(inputs.clauses, g):
        partial = partial + clause_polynomial(c, field) * gi
    quot, rem = reduce_boolean(partial - one, s)
    if not rem.is_zero():
        raise AssertionError("remainder of a cube-vanishing polynomial must be zero")
    h = tuple(-q for q in quot)
    return NSCertificate(tuple(g), h, field)


def reduce_boolean(p: Polynomial, nvars: int) -> tuple[list[Polynomial], Polynomial]:
    """Write p = sum (x_i^2 - x_i) q_i + r with r multilinear."""
    fld = p.field
    quot: list[dict[Monomial, object]] = [dict() for _ in range(nvars)]
    rem: dict[Monomial, object] = {}
    work = dict(p.terms)
    while work:
        m, c = work.popitem()
        hi = next(((v, e) for v, e in m if e >= 2), None)
        if hi is None:
            rem[m] = rem.get(m, 0) + c
            continue
        v, e = hi
        # x^e * rest = (x^2 - x) * x^(e-2) * rest + x^(e-1) * rest
        rest = tuple((w, k) for w, k in m if w != v)
        q = tuple(sorted(rest + (((v, e - 2),) if e > 2 else ())))
        quot[v][q] = quot[v].get(q, 0) + c
        lower = tuple(sorted(rest + ((v, e - 1),)))
        nc = fld.coerce(work.get(lower, 0) + c)
        if nc:
            work[lower] = nc
        else:
            work.pop(lower, None)
    return [Polynomial.make(q, fld) for q in quot], Polynomial.make(rem, fld)


def certificate_to_text(cert: NSCertificate) -> str:
    lines = [f"field {cert.field.name}"]
    lines += [f"g {p.text}" for p in cert.g]
    lines += [f"h {p.text}" for p in cert.h]
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> NSCertificate:
    fld = None
    g: list[Polynomial] = []
    h: list[Polynomial] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, body = line.partition(" ")
        if tag == "field":
            fld = Field.parse(body)
            continue
        if fld is None:
            raise ParseError(f"line {lineno}: 'field' line must come first")
        if tag not in ("g", "h"):
            raise ParseError(f"line {lineno}: expected 'g' or 'h'")
        try:
            (g if tag == "g" else h).append(parse_polynomial(body, fld))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
    if fld is None:
        raise ParseError("missing 'field' line")
    return NSCertificate(tuple(g), tuple(h), fld)
