"""Translate a resolution refutation of split clauses into a cut-free NNF sequent proof.

Clauses are split into side-1 clauses C_i over shared and private-1 atoms and
side-2 clauses D_j over shared and private-2 atoms.  Every derived clause E
becomes a proof of

    Gamma, d(E restricted to private-1) => E restricted to the rest, Delta

where Gamma holds the disjunctions of the C_i plus s or not s for each
private-1 atom s, Delta holds the conjunctions of the dual literals of the D_j
plus s and not s for every other atom s, and d flips a literal.  The full
context is present from the start, so each resolution step is one left
disjunction (private-1 pivot) or one right conjunction (other pivot) on an
extra copy of the pivot's tautology or contradiction, followed by a
contraction.  Sequents are kept in one canonical order; premises are fitted to
their targets with weakening and exchange.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .. import formula as F
from ..cnf import Clause, ClauseSet, Lit, clause_formula
from ..errors import PreconditionError
from ..formula import Formula
from ..kernel.resolution import ResolutionRefutation, check_resolution, derive
from ..kernel.sequent import ProofBuilder, SequentProof
from .maehara import Partition


@dataclass(frozen=True)
class SplitClauses:
    """Input clauses with a side (1 or 2) per clause and the resulting atom classes."""

    clauses: ClauseSet
    sides: tuple[int, ...]
    shared: tuple[int, ...]
    private1: tuple[int, ...]
    private2: tuple[int, ...]

    def side(self, k: int) -> list[Clause]:
        return [c for c, s in zip(self.clauses.clauses, self.sides) if s == k]


def split_clauses(clauses: ClauseSet, sides: Sequence[int], shared: Sequence[int] | None = None) -> SplitClauses:
    sides = tuple(sides)
    if len(sides) != len(clauses.clauses) or any(s not in (1, 2) for s in sides):
        raise PreconditionError("need one side (1 or 2) per input clause")
    a1 = {l.atom for c, s in zip(clauses.clauses, sides) if s == 1 for l in c}
    a2 = {l.atom for c, s in zip(clauses.clauses, sides) if s == 2 for l in c}
    common = a1 & a2
    if shared is None:
        sh = common
    else:
        sh = set(shared)
        if common - sh:
            raise PreconditionError(f"clause out of scope: atoms {sorted(common - sh)} occur on both sides but are not shared")
    return SplitClauses(clauses, sides, tuple(sorted(sh)), tuple(sorted(a1 - sh)), tuple(sorted(a2 - sh)))


def _dual(l: Lit) -> Formula:
    return l.negate().formula()


@dataclass
class Simulation:
    proof: SequentProof
    partition: Partition
    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]
    side1: tuple[Formula, ...]  # clause disjunctions only
    side2: tuple[Formula, ...]  # dual-literal conjunctions only


class _Sim:
    def __init__(self, sp: SplitClauses):
        self.sp = sp
        self.q = set(sp.private1)
        self.b = ProofBuilder("LK_n-")
        self.cforms = tuple(clause_formula(c) for c in sp.side(1))
        self.dforms = tuple(F.conj_all([_dual(l) for l in c]) for c in sp.side(2))
        self.taut = {s: F.disj(F.atom(s), F.neg(F.atom(s))) for s in sp.private1}
        others = sorted(set(sp.shared) | set(sp.private2))
        self.contr = {s: F.conj(F.atom(s), F.neg(F.atom(s))) for s in others}

    def target(self, e: Clause) -> tuple[tuple, tuple]:
        left = [((s, 0, 0), f) for s, f in self.taut.items()]
        right = [((s, 1, 0), f) for s, f in self.contr.items()]
        for l in e:
            if l.atom in self.q:
                left.append(((l.atom, 1, int(not l.positive)), _dual(l)))
            else:
                right.append(((l.atom, 0, int(not l.positive)), l.formula()))
        left.sort(key=lambda t: t[0])
        right.sort(key=lambda t: t[0])
        return self.cforms + tuple(f for _, f in left), tuple(f for _, f in right) + self.dforms

    def _q_part(self, e: Clause) -> tuple:
        return tuple(_dual(l) for l in sorted(e, key=lambda l: (l.atom, not l.positive)) if l.atom in self.q)

    def _pr_part(self, e: Clause) -> tuple:
        return tuple(l.formula() for l in sorted(e, key=lambda l: (l.atom, not l.positive)) if l.atom not in self.q)

    def input_side1(self, c: Clause) -> int:
        b = self.b
        duals, lits = self._q_part(c), self._pr_part(c)
        if not c:
            k = b.add((F.FALSE,), (), "ax_bot")
            return b.embed(k, *self.target(c))
        lits_of = list(c)

        def leaf(l: Lit, head: Formula) -> int:
            if l.atom in self.q:
                a = F.atom(l.atom)
                k = b.add((a, F.neg(a)), (), "ax_lnot")
            else:
                f = l.formula()
                k = b.add((f,), (f,), "ax_atom" if l.positive else "ax_lit")
            return b.embed(k, (head,) + duals, lits)

        # right-nested disjunction: l1 or (l2 or (... or ln))
        k = leaf(lits_of[-1], lits_of[-1].formula())
        tail = lits_of[-1].formula()
        for l in reversed(lits_of[:-1]):
            f = F.disj(l.formula(), tail)
            k = b.add((f,) + duals, lits, "Lor", 0, [leaf(l, l.formula()), k])
            tail = f
        return b.embed(k, *self.target(c))

    def input_side2(self, c: Clause) -> int:
        b = self.b
        lits = self._pr_part(c)
        if not c:
            k = b.add((), (F.TRUE,), "ax_top")
            return b.embed(k, *self.target(c))
        lits_of = list(c)
        n = len(lits)

        def leaf(l: Lit) -> int:
            a = F.atom(l.atom)
            k = b.add((), (a, F.neg(a)), "ax_rnot")
            return b.embed(k, (), lits + (_dual(l),))

        k = leaf(lits_of[-1])
        tail = _dual(lits_of[-1])
        for l in reversed(lits_of[:-1]):
            f = F.conj(_dual(l), tail)
            k = b.add((), lits + (f,), "Rand", n, [leaf(l), k])
            tail = f
        return b.embed(k, *self.target(c))

    def resolve(self, e: Clause, pj: int, pk: int, s: int) -> int:
        """pj proves the clause with s, pk the clause with not s."""
        b = self.b
        ante, succ = self.target(e)
        a = F.atom(s)
        if s in self.q:
            t = next(i for i, f in enumerate(ante) if f is self.taut[s] and i >= len(self.cforms))
            wide = ante[: t + 1] + (self.taut[s],) + ante[t + 1 :]
            p1 = b.embed(pk, wide[: t + 1] + (a,) + wide[t + 2 :], succ)
            p2 = b.embed(pj, wide[: t + 1] + (F.neg(a),) + wide[t + 2 :], succ)
            n = b.add(wide, succ, "Lor", t + 1, [p1, p2])
            return b.add(ante, succ, "Lc", t, [n])
        u = next(i for i, f in enumerate(succ) if f is self.contr[s])
        wide = succ[:u] + (self.contr[s],) + succ[u:]
        p1 = b.embed(pj, ante, wide[:u] + (a,) + wide[u + 1 :])
        p2 = b.embed(pk, ante, wide[:u] + (F.neg(a),) + wide[u + 1 :])
        n = b.add(ante, wide, "Rand", u, [p1, p2])
        return b.add(ante, succ, "Rc", u, [n])


def simulate_resolution_in_lk(sp: SplitClauses, r: ResolutionRefutation) -> Simulation:
    v = check_resolution(sp.clauses, r)
    if not v:
        raise PreconditionError(f"refutation invalid: {v.describe()}")
    cls = derive(sp.clauses, r)
    sim = _Sim(sp)
    node: list[int] = []
    for i, step in enumerate(r.steps):
        if step.kind == "input":
            m = step.args[0]
            c = sp.clauses.clauses[m]
            node.append(sim.input_side1(c) if sp.sides[m] == 1 else sim.input_side2(c))
        else:
            j, k, s = step.args
            node.append(sim.resolve(cls[i], node[j], node[k], s))
    proof = sim.b.build(node[-1])
    ante, succ = proof.conclusion.ante, proof.conclusion.succ
    part = Partition((1,) * len(ante), (2,) * len(succ), tuple(sp.shared))
    return Simulation(proof, part, ante, succ, sim.cforms, sim.dforms)
