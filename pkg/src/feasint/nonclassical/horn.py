"""Implicational Horn formulas, forward-chaining circuits, and atomic disjunctive interpolation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .. import formula as F
from .. import semantics
from ..circuit import Builder, Circuit
from ..errors import PreconditionError
from ..formula import Formula

AtomKey = object  # int or an extended-atom node


@dataclass(frozen=True)
class HornFormula:
    """``conclusion`` alone when ``premises`` is empty, else (and premises) -> conclusion."""

    premises: tuple
    conclusion: AtomKey

    def formula(self) -> Formula:
        head = _atom_formula(self.conclusion)
        if not self.premises:
            return head
        return F.imp(F.conj_all([_atom_formula(p) for p in self.premises]), head)

    def atoms(self) -> set:
        return set(self.premises) | {self.conclusion}

    @property
    def text(self) -> str:
        return self.formula().text


def _atom_formula(key) -> Formula:
    return key if isinstance(key, Formula) else F.atom(key)


def atom_key(f: Formula):
    if f.kind == F.ATOM:
        return f.atom
    if f.kind == F.EXT:
        return f
    raise PreconditionError(f"{f.text} is not an atom")


def horn(premises: Iterable, conclusion) -> HornFormula:
    return HornFormula(tuple(F.sorted_atoms(set(premises))), conclusion)


def horn_circuit(gamma: Sequence[HornFormula], inputs: Sequence, goal, builder: Builder | None = None, env: dict | None = None):
    """Monotone circuit deciding validity of (gamma, {inputs[i] : x_i = 1} => goal).

    Unrolled forward chaining: y^{t+1}_a = y^t_a or OR over rules (and y^t_premises).
    With ``builder`` and ``env`` (input atom -> gate), the gates are added there
    and the output gate id is returned instead of a circuit.
    """
    own = builder is None
    b = builder or Builder(len(inputs))
    if env is None:
        env = {a: b.input(i) for i, a in enumerate(inputs)}
    facts = {h.conclusion for h in gamma if not h.premises}
    rules = [h for h in gamma if h.premises]
    atoms = set(inputs) | {goal} | set().union(*(h.atoms() for h in gamma))
    y = {}
    for a in atoms:
        if a in facts:
            y[a] = b.top()
        elif a in env:
            y[a] = env[a]
        else:
            y[a] = b.bot()
    for _ in range(len(gamma) + 1):
        nxt = dict(y)
        for h in rules:
            fire = b.and_all(y[p] for p in h.premises)
            nxt[h.conclusion] = b.or_(nxt[h.conclusion], fire)
        if nxt == y:
            break
        y = nxt
    out = y[goal]
    return b.build([out]) if own else out


def horn_valid(gamma: Sequence[HornFormula], true_atoms: Iterable, goal) -> bool:
    """Direct forward chaining: is goal derivable from gamma and the true atoms?"""
    known = set(true_atoms) | {h.conclusion for h in gamma if not h.premises}
    changed = True
    while changed:
        changed = False
        for h in gamma:
            if h.premises and h.conclusion not in known and all(p in known for p in h.premises):
                known.add(h.conclusion)
                changed = True
    return goal in known


@dataclass
class AtomicInterpolant:
    c: Circuit
    d: Circuit
    inputs: tuple
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _tables(fs: Sequence[Formula], order: list, mask: int, cols) -> list[int]:
    env = {a: cols[j] for j, a in enumerate(order)}
    return [semantics.table_env(f, env, mask) for f in fs]


def atomic_pdi(gamma: Sequence[HornFormula], phi: Formula, q, r, verify: bool = True, cap: int | None = None) -> AtomicInterpolant:
    """Circuits C, D over V(phi) with gamma, phi => C or D; gamma, C => q; gamma, D => r."""
    if not F.is_monotone(phi):
        raise PreconditionError("phi must be monotone")
    gam = [h.formula() for h in gamma]
    qf, rf = _atom_formula(q), _atom_formula(r)
    order = F.sorted_atoms(set().union(phi.atoms(), qf.atoms(), rf.atoms(), *(g.atoms() for g in gam)))
    semantics.check_cap(len(order), cap)
    n = len(order)
    mask, cols = semantics.full_mask(n), semantics.columns(n)
    tg = mask
    for t in _tables(gam, order, mask, cols):
        tg &= t
    tphi, tq, tr = _tables([phi, qf, rf], order, mask, cols)
    if tg & tphi & ~(tq | tr) & mask:
        raise PreconditionError("gamma, phi => q or r is not classically valid")
    inputs = tuple(F.sorted_atoms(phi.atoms()))
    c = horn_circuit(gamma, inputs, q)
    d = horn_circuit(gamma, inputs, r)
    checks = {}
    if verify:
        pos = {a: j for j, a in enumerate(order)}
        ins = [cols[pos[a]] for a in inputs]
        tc = c.output_tables(ins, mask)[0]
        td = d.output_tables(ins, mask)[0]
        checks = {
            "gamma,phi=>C|D": not (tg & tphi & ~(tc | td) & mask),
            "gamma,C=>q": not (tg & tc & ~tq & mask),
            "gamma,D=>r": not (tg & td & ~tr & mask),
        }
    return AtomicInterpolant(c, d, inputs, checks)
