"""Cutting-planes refutations over integer inequalities.

Script grammar, one step per line (variables are ``x<v>`` with v = atom id + 1)::

    <i> INPUT <m> [: <ineq>]
    <i> AXL <v> [: <ineq>]        x_v >= 0
    <i> AXU <v> [: <ineq>]        -x_v >= -1
    <i> ADD <j> <k> [: <ineq>]
    <i> MUL <j> <c> [: <ineq>]    c >= 0
    <i> DIV <j> <c> [: <ineq>]    c > 0 divides every coefficient

``<ineq>`` is written like ``2 x1 - x3 >= -1`` or ``0 >= 1``.  Without a
stated line, division rounds the bound down.  A stated division bound is
accepted whenever it is at most the rounded-up quotient, which is still sound
for 0/1 variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Mapping

from ..cnf import Clause, ClauseSet
from ..errors import ParseError
from .sequent import Verdict


@dataclass(frozen=True, slots=True)
class Inequality:
    """sum coeffs[v] * x_v >= bound, coefficients stored sparse and sorted."""

    coeffs: tuple[tuple[int, int], ...]
    bound: int

    @staticmethod
    def make(coeffs: Mapping[int, int], bound: int) -> "Inequality":
        return Inequality(tuple(sorted((v, c) for v, c in coeffs.items() if c)), bound)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def is_contradiction(self) -> bool:
        return not self.coeffs and self.bound >= 1

    def holds(self, a: Mapping[int, int]) -> bool:
        return sum(c * a[v] for v, c in self.coeffs) >= self.bound

    def size(self) -> int:
        return 2 * len(self.coeffs) + 1

    @property
    def text(self) -> str:
        parts = []
        for v, c in self.coeffs:
            mag = abs(c)
            term = f"x{v + 1}" if mag == 1 else f"{mag} x{v + 1}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        lhs = " ".join(parts) if parts else "0"
        return f"{lhs} >= {self.bound}"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*x(\d+)")


def parse_inequality(text: str) -> Inequality:
    if ">=" not in text:
        raise ParseError(f"inequality needs '>=': {text!r}")
    lhs, rhs = text.split(">=", 1)
    try:
        bound = int(rhs.strip())
    except ValueError:
        raise ParseError(f"bound must be an integer: {rhs.strip()!r}") from None
    lhs = lhs.strip()
    coeffs: dict[int, int] = {}
    if lhs != "0":
        pos = 0
        for m in _TERM.finditer(lhs):
            if lhs[pos : m.start()].strip():
                raise ParseError(f"cannot read {lhs[pos:m.start()]!r} in {text!r}")
            if pos and not m.group(1):
                raise ParseError(f"missing '+' or '-' before x{m.group(3)} in {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            mag = int(m.group(2)) if m.group(2) else 1
            v = int(m.group(3)) - 1
            if v < 0:
                raise ParseError("variables are numbered from x1")
            coeffs[v] = coeffs.get(v, 0) + sign * mag
            pos = m.end()
        if lhs[pos:].strip() or pos == 0:
            raise ParseError(f"cannot read left-hand side {lhs!r}")
    return Inequality.make(coeffs, bound)


def clause_to_inequality(c: Clause) -> Inequality:
    """Positive vars minus negative vars >= 1 - (number of negative literals)."""
    coeffs = {l.atom: (1 if l.positive else -1) for l in c}
    negs = sum(1 for l in c if not l.positive)
    return Inequality.make(coeffs, 1 - negs)


def add(a: Inequality, b: Inequality) -> Inequality:
    d = a.as_dict()
    for v, c in b.coeffs:
        d[v] = d.get(v, 0) + c
    return Inequality.make(d, a.bound + b.bound)


def mul(a: Inequality, c: int) -> Inequality:
    return Inequality.make({v: c * k for v, k in a.coeffs}, c * a.bound)


def div(a: Inequality, c: int) -> Inequality:
    return Inequality.make({v: k // c for v, k in a.coeffs}, a.bound // c)


@dataclass(frozen=True, slots=True)
class CPStep:
    op: str  # INPUT AXL AXU ADD MUL DIV
    args: tuple[int, ...]
    line: Inequality | None = None


@dataclass(frozen=True)
class CPRefutation:
    steps: tuple[CPStep, ...]

    def __len__(self) -> int:
        return len(self.steps)


_ARITY = {"INPUT": 1, "AXL": 1, "AXU": 1, "ADD": 2, "MUL": 2, "DIV": 2}


def _step(inputs: ClauseSet, out: list[Inequality], i: int, s: CPStep):
    if s.op not in _ARITY or len(s.args) != _ARITY[s.op]:
        return f"malformed {s.op} step"

    def prem(j: int):
        if not 0 <= j < i:
            raise _Bad(f"premise {j} is not an earlier step")
        return out[j]

    try:
        if s.op == "INPUT":
            (m,) = s.args
            if not 0 <= m < len(inputs.clauses):
                return f"input index {m} out of range"
            got = clause_to_inequality(inputs.clauses[m])
        elif s.op in ("AXL", "AXU"):
            (v,) = s.args
            if v < 0:
                return "variable index must be non-negative"
            got = Inequality.make({v: 1}, 0) if s.op == "AXL" else Inequality.make({v: -1}, -1)
        elif s.op == "ADD":
            got = add(prem(s.args[0]), prem(s.args[1]))
        elif s.op == "MUL":
            a, c = prem(s.args[0]), s.args[1]
            if c < 0:
                return f"multiplier {c} must be >= 0"
            got = mul(a, c)
        else:
            a, c = prem(s.args[0]), s.args[1]
            if c <= 0:
                return f"divisor {c} must be > 0"
            bad = [f"x{v + 1}" for v, k in a.coeffs if k % c]
            if bad:
                return f"divisor {c} does not divide the coefficient of {', '.join(bad)}"
            got = div(a, c)
            if s.line is not None:
                ceil = -((-a.bound) // c)
                if s.line.coeffs != got.coeffs or s.line.bound > ceil:
                    return f"stated line [{s.line.text}] does not follow by division from [{a.text}]"
                return s.line
    except _Bad as e:
        return str(e)
    if s.line is not None and s.line != got:
        return f"stated line [{s.line.text}] differs from derived [{got.text}]"
    return got


class _Bad(Exception):
    pass


def check_cp(inputs: ClauseSet, r: CPRefutation) -> Verdict:
    out: list[Inequality] = []
    for i, s in enumerate(r.steps):
        got = _step(inputs, out, i, s)
        if isinstance(got, str):
            return Verdict(False, i, s.op, got)
        out.append(got)
    if not out:
        return Verdict(False, None, None, "empty refutation")
    last = out[-1]
    if last.coeffs or last.bound != 1:
        return Verdict(False, len(out) - 1, r.steps[-1].op, f"last line is [{last.text}], not 0 >= 1")
    return Verdict(True, size=sum(x.size() for x in out))


def derive(inputs: ClauseSet, r: CPRefutation) -> list[Inequality]:
    out: list[Inequality] = []
    for i, s in enumerate(r.steps):
        got = _step(inputs, out, i, s)
        if isinstance(got, str):
            raise ValueError(i, got)
        out.append(got)
    return out


def delete_step(r: CPRefutation, i: int) -> CPRefutation:
    """Remove an uncited step and renumber later premise references."""
    out = []
    for k, s in enumerate(r.steps):
        if k == i:
            continue
        if s.op == "ADD":
            a, b = s.args
            if i in (a, b):
                raise ValueError(f"step {i} is cited by step {k}")
            s = replace(s, args=(a - (a > i), b - (b > i)))
        elif s.op in ("MUL", "DIV"):
            a, c = s.args
            if a == i:
                raise ValueError(f"step {i} is cited by step {k}")
            s = replace(s, args=(a - (a > i), c))
        out.append(s)
    return CPRefutation(tuple(out))


def cited(r: CPRefutation) -> set[int]:
    out = set()
    for s in r.steps:
        if s.op == "ADD":
            out.update(s.args)
        elif s.op in ("MUL", "DIV"):
            out.add(s.args[0])
    return out


def refutation_to_text(r: CPRefutation) -> str:
    lines = []
    for i, s in enumerate(r.steps):
        args = list(s.args)
        if s.op in ("AXL", "AXU"):
            args[0] += 1
        head = f"{i} {s.op} " + " ".join(str(a) for a in args)
        if s.line is not None:
            head += f" : {s.line.text}"
        lines.append(head)
    return "\n".join(lines) + "\n"


def refutation_from_text(text: str) -> CPRefutation:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        parts = head.split()
        if len(parts) < 2 or parts[1] not in _ARITY or len(parts) != 2 + _ARITY[parts[1]]:
            raise ParseError(f"line {lineno}: expected '<i> <OP> <args>' with OP in {sorted(_ARITY)}")
        try:
            if int(parts[0]) != len(steps):
                raise ParseError(f"line {lineno}: expected step id {len(steps)}")
            args = [int(x) for x in parts[2:]]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
        if parts[1] in ("AXL", "AXU"):
            args[0] -= 1
        stated = parse_inequality(tail) if sep else None
        steps.append(CPStep(parts[1], tuple(args), stated))
    return CPRefutation(tuple(steps))
