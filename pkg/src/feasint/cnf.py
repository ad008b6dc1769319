"""Clauses, clause sets with structured atom names, and DIMACS text."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import formula as F
from . import semantics
from .errors import ParseError, PreconditionError


class Lit(NamedTuple):
    atom: int
    positive: bool

    def negate(self) -> "Lit":
        return Lit(self.atom, not self.positive)

    def to_int(self) -> int:
        """DIMACS literal: variable number is atom id + 1."""
        return self.atom + 1 if self.positive else -(self.atom + 1)

    @staticmethod
    def from_int(v: int) -> "Lit":
        if v == 0:
            raise ParseError("0 is not a literal")
        return Lit(abs(v) - 1, v > 0)

    def formula(self) -> F.Formula:
        a = F.atom(self.atom)
        return a if self.positive else F.neg(a)


Clause = tuple[Lit, ...]


def clause(lits: Iterable) -> Clause:
    """Normalize to a sorted duplicate-free tuple; ints are read as DIMACS literals."""
    out = set()
    for l in lits:
        out.add(Lit.from_int(l) if isinstance(l, int) else Lit(*l))
    return tuple(sorted(out))


def is_tautological(c: Clause) -> bool:
    atoms = [l.atom for l in c]
    return len(set(atoms)) != len(atoms)


def clause_formula(c: Clause) -> F.Formula:
    """Binary right-nested disjunction of the literals; bottom when empty."""
    return F.disj_all([l.formula() for l in c])


def clause_text(c: Clause) -> str:
    return " ".join(str(l.to_int()) for l in c) + (" 0" if c else "0")


def name_text(name) -> str:
    if isinstance(name, tuple):
        head, *idx = name
        return f"{head}[{','.join(str(i) for i in idx)}]"
    return str(name)


@dataclass(frozen=True)
class ClauseSet:
    clauses: tuple[Clause, ...]
    names: tuple = field(default=())

    def __post_init__(self):
        n = self.num_atoms
        for c in self.clauses:
            for l in c:
                if l.atom >= n:
                    raise PreconditionError(f"atom {l.atom} has no entry in the name table")

    @property
    def num_atoms(self) -> int:
        if self.names:
            return len(self.names)
        return 1 + max((l.atom for c in self.clauses for l in c), default=-1)

    def atom_of(self, name) -> int:
        return self.names.index(name)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def atoms(self) -> list[int]:
        return sorted({l.atom for c in self.clauses for l in c})

    def formula(self) -> F.Formula:
        """Big conjunction of big disjunctions (literals as negated atoms)."""
        parts = [F.bigor([l.formula() for l in c]) if c else F.FALSE for c in self.clauses]
        return F.bigand(parts) if parts else F.TRUE


def make_clause_set(named_clauses: Sequence[Sequence[tuple]], names: Iterable | None = None) -> ClauseSet:
    """Build from clauses over structured names given as (name, positive) pairs.

    Atom ids follow the lexicographic order of the names.
    """
    table = sorted(set(names) if names is not None else {n for c in named_clauses for n, _ in c})
    index = {n: i for i, n in enumerate(table)}
    out = []
    for c in named_clauses:
        cl = clause(Lit(index[n], s) for n, s in c)
        if is_tautological(cl):
            raise PreconditionError("generator produced a tautological clause")
        out.append(cl)
    return ClauseSet(tuple(out), tuple(table))


def to_dimacs(cs: ClauseSet) -> str:
    lines = []
    for i, name in enumerate(cs.names):
        lines.append(f"c var {i + 1} {name_text(name)}")
    lines.append(f"p cnf {cs.num_atoms} {len(cs.clauses)}")
    lines.extend(clause_text(c) for c in cs.clauses)
    return "\n".join(lines) + "\n"


def _parse_name(text: str):
    if "[" in text and text.endswith("]"):
        head, rest = text[:-1].split("[", 1)
        return (head, *(int(x) for x in rest.split(",") if x))
    return text


def parse_dimacs(text: str) -> ClauseSet:
    names: dict[int, object] = {}
    clauses = []
    header = None
    pending: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("c"):
            parts = s.split()
            if len(parts) == 4 and parts[1] == "var":
                names[int(parts[2])] = _parse_name(parts[3])
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: bad problem line")
            header = (int(parts[2]), int(parts[3]))
            continue
        try:
            nums = [int(x) for x in s.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer literal") from None
        for v in nums:
            if v == 0:
                clauses.append(clause(pending))
                pending = []
            else:
                pending.append(v)
    if pending:
        raise ParseError("last clause is not terminated by 0")
    if header is None:
        raise ParseError("missing 'p cnf' line")
    nvars, ncl = header
    big = [l.to_int() for c in clauses for l in c if l.atom >= nvars]
    if big:
        raise ParseError(f"literal {big[0]} exceeds the announced {nvars} variables")
    if ncl != len(clauses):
        raise ParseError(f"header announces {ncl} clauses, found {len(clauses)}")
    table = tuple(names.get(i + 1, f"x{i + 1}") for i in range(nvars)) if names else ()
    return ClauseSet(tuple(clauses), table)


# ------------------------------------------------------------ brute force

def clauses_table(clauses: Iterable[Clause], order: Sequence[int], fixed: dict[int, int] | None = None) -> int:
    """Truth table of the conjunction over ``order``; ``fixed`` pins other atoms."""
    n = len(order)
    semantics.check_cap(n)
    cols = semantics.columns(n)
    mask = semantics.full_mask(n)
    pos = {a: j for j, a in enumerate(order)}
    fixed = fixed or {}
    t = mask
    for c in clauses:
        ct = 0
        for l in c:
            if l.atom in pos:
                col = cols[pos[l.atom]]
                ct |= col if l.positive else mask ^ col
            else:
                if l.atom not in fixed:
                    raise PreconditionError(f"atom {l.atom} is neither enumerated nor fixed")
                if bool(fixed[l.atom]) == l.positive:
                    ct = mask
                    break
        t &= ct
        if not t:
            return 0
    return t


def satisfiable(clauses: Iterable[Clause], fixed: dict[int, int] | None = None) -> bool:
    clauses = list(clauses)
    fixed = fixed or {}
    order = sorted({l.atom for c in clauses for l in c} - set(fixed))
    return clauses_table(clauses, order, fixed) != 0
