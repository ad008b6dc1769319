"""Interpolant circuits from cut-free NNF proofs, and their brute-force check.

A partition assigns every position of the end sequent to side 1 or side 2.
Writing the sides as G1 => D1 and G2 => D2, the circuit C over the shared atoms
satisfies G1 => D1, C and C, G2 => D2.  Sides flow to premises along the
rule's position map, and the circuit is assembled bottom-up:

* axioms give a constant, a shared literal or its negation;
* one-premise rules pass the premise circuit through;
* two-premise rules join with OR when the principal formula is on side 1
  and with AND when it is on side 2.

Circuits are memoized per (node, side assignment), so a DAG-shaped proof
yields at most one gate per node and assignment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .. import formula as F
from .. import semantics
from ..circuit import Builder, Circuit
from ..errors import PreconditionError
from ..formula import Formula, Sequent
from ..kernel.sequent import ProofNode, SequentProof


@dataclass(frozen=True)
class Partition:
    ante: tuple[int, ...]
    succ: tuple[int, ...]
    shared: tuple = ()

    def __post_init__(self):
        if any(s not in (1, 2) for s in self.ante + self.succ):
            raise PreconditionError("sides must be 1 or 2")

    def split(self, s: Sequent) -> tuple[tuple, tuple, tuple, tuple]:
        """(G1, D1, G2, D2)."""
        if len(self.ante) != len(s.ante) or len(self.succ) != len(s.succ):
            raise PreconditionError("partition does not match the sequent shape")
        g1 = tuple(f for f, x in zip(s.ante, self.ante) if x == 1)
        g2 = tuple(f for f, x in zip(s.ante, self.ante) if x == 2)
        d1 = tuple(f for f, x in zip(s.succ, self.succ) if x == 1)
        d2 = tuple(f for f, x in zip(s.succ, self.succ) if x == 2)
        return g1, d1, g2, d2


def _atoms(fs) -> set:
    out: set = set()
    for f in fs:
        out |= f.atoms()
    return out


def make_partition(s: Sequent, ante: Sequence[int], succ: Sequence[int], shared: Sequence | None = None) -> Partition:
    """Partition with the shared set defaulting to the atoms common to both sides; scope is checked."""
    p = Partition(tuple(ante), tuple(succ))
    g1, d1, g2, d2 = p.split(s)
    common = _atoms(g1 + d1) & _atoms(g2 + d2)
    if shared is None:
        shared = F.sorted_atoms(common)
    else:
        shared = F.sorted_atoms(set(shared))
        missing = common - set(shared)
        if missing:
            raise PreconditionError(f"partition scope violation: atoms {F.sorted_atoms(missing)} occur on both sides but are not shared")
    return Partition(p.ante, p.succ, tuple(shared))


def _swap(t: tuple, i: int) -> tuple:
    return t[:i] + (t[i + 1], t[i]) + t[i + 2 :]


def premise_sides(node: ProofNode, sa: tuple, ss: tuple) -> list[tuple[tuple, tuple]]:
    r, i = node.rule, node.index
    n = len(node.premises)
    if r in ("Le",):
        return [(_swap(sa, i), ss)]
    if r == "Re":
        return [(sa, _swap(ss, i))]
    if r == "Lw":
        return [(sa[:i] + sa[i + 1 :], ss)]
    if r == "Rw":
        return [(sa, ss[:i] + ss[i + 1 :])]
    if r == "Lc":
        return [(sa[:i] + (sa[i],) + sa[i:], ss)]
    if r == "Rc":
        return [(sa, ss[:i] + (ss[i],) + ss[i:])]
    if r in ("Land1", "Land2", "Lor", "Ror1", "Ror2", "Rand"):
        return [(sa, ss)] * n
    if r == "cut":
        raise PreconditionError("interpolation needs a cut-free proof")
    raise PreconditionError(f"rule {r} is not part of the NNF calculus")


class _Extractor:
    def __init__(self, proof: SequentProof, shared: Sequence, fold: bool):
        self.proof = proof
        self.shared = list(shared)
        self.pos = {a: j for j, a in enumerate(self.shared)}
        self.b = Builder(len(self.shared), fold=fold)
        self.memo: dict[tuple, int] = {}

    def lit(self, p: Formula, positive: bool) -> int:
        if p.atom not in self.pos:
            raise PreconditionError(f"atom {p.atom} crosses the partition but is not shared")
        g = self.b.input(self.pos[p.atom])
        return g if positive else self.b.neg(g)

    def axiom(self, node: ProofNode, sa: tuple, ss: tuple) -> int:
        b, s, r = self.b, node.sequent, node.rule
        sides = sa + ss
        if r in ("ax_bot", "ax_top", "ax_ntop", "ax_nbot"):
            return b.bot() if sides[0] == 1 else b.top()
        if sides == (1, 1):
            return b.bot()
        if sides == (2, 2):
            return b.top()
        if r == "ax_atom":
            return self.lit(s.ante[0], sides == (1, 2))
        if r == "ax_lit":
            return self.lit(s.ante[0].child, sides == (2, 1))
        if r == "ax_lnot":
            return self.lit(s.ante[0], sides == (1, 2))
        if r == "ax_rnot":
            return self.lit(s.succ[0], sides == (2, 1))
        raise PreconditionError(f"rule {r} is not an axiom of the NNF calculus")

    def run(self, sa: tuple, ss: tuple) -> int:
        nodes = self.proof.nodes
        root = (len(nodes) - 1, sa, ss)
        stack = [(root, False)]
        while stack:
            key, expanded = stack.pop()
            if key in self.memo:
                continue
            k, a, s = key
            node = nodes[k]
            if not node.premises:
                self.memo[key] = self.axiom(node, a, s)
                continue
            kids = [(j, pa, ps) for j, (pa, ps) in zip(node.premises, premise_sides(node, a, s))]
            if not expanded:
                stack.append((key, True))
                stack.extend((c, False) for c in kids if c not in self.memo)
                continue
            vals = [self.memo[c] for c in kids]
            if len(vals) == 1:
                self.memo[key] = vals[0]
            else:
                side = a[node.index] if node.rule == "Lor" else s[node.index]
                self.memo[key] = self.b.or_(*vals) if side == 1 else self.b.and_(*vals)
        return self.memo[root]


def maehara_interpolate(proof: SequentProof, part: Partition, fold: bool = True) -> Circuit:
    """Interpolant circuit; inputs are ``part.shared`` in order."""
    if proof.calculus not in ("LK_n", "LK_n-"):
        raise PreconditionError(f"interpolation expects an NNF-calculus proof, got {proof.calculus}")
    if not proof.cut_free:
        raise PreconditionError("interpolation needs a cut-free proof")
    s = proof.conclusion
    g1, d1, g2, d2 = part.split(s)
    bad = (_atoms(g1 + d1) & _atoms(g2 + d2)) - set(part.shared)
    if bad:
        raise PreconditionError(f"partition scope violation: atoms {F.sorted_atoms(bad)} occur on both sides but are not shared")
    ex = _Extractor(proof, part.shared, fold)
    out = ex.run(part.ante, part.succ)
    return ex.b.build([out])


# ------------------------------------------------------------ verification

@dataclass(frozen=True)
class InterpolantCheck:
    ok: bool
    scope_ok: bool
    witness: dict | None = None
    failed: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "PASS"
        if not self.scope_ok:
            return f"FAIL scope: {self.failed}"
        bits = " ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"FAIL {self.failed} at {bits}"


def _exists_fold(t: int, n: int, keep: int) -> int:
    """Project a table over n atoms onto its first ``keep`` atoms by existential quantification."""
    for j in range(n - 1, keep - 1, -1):
        half = 1 << j
        low = (1 << half) - 1
        t = (t & low) | (t >> half)
    return t


def sides_as_formulas(s: Sequent, part: Partition) -> tuple[Formula, Formula]:
    """phi = and G1 and not (or D1); psi = not (and G2) or (or D2)."""
    g1, d1, g2, d2 = part.split(s)
    phi = F.conj_all(list(g1) + ([F.neg(F.disj_all(d1))] if d1 else []))
    psi = F.disj_all(([F.neg(F.conj_all(g2))] if g2 else []) + list(d2))
    return phi, psi


def verify_interpolant(phi: Formula, psi: Formula, c: Circuit, shared: Sequence, cap: int | None = None) -> InterpolantCheck:
    """C(a)=0 implies not phi(a, q) is valid; C(a)=1 implies psi(a, r) is valid, for every a."""
    shared = list(shared)
    if c.n_inputs != len(shared) or len(c.outputs) != 1:
        return InterpolantCheck(False, False, failed="circuit inputs do not match the shared atoms")
    if c.modal:
        return InterpolantCheck(False, False, failed="circuit has modal gates")
    k = len(shared)
    rest_phi = F.sorted_atoms(phi.atoms() - set(shared))
    rest_psi = F.sorted_atoms(psi.atoms() - set(shared))
    semantics.check_cap(k + max(len(rest_phi), len(rest_psi)), cap)
    order_phi = shared + rest_phi
    order_psi = shared + rest_psi
    ex_phi = _exists_fold(semantics.table(phi, order_phi, cap), len(order_phi), k)
    ex_not_psi = _exists_fold(semantics.full_mask(len(order_psi)) ^ semantics.table(psi, order_psi, cap), len(order_psi), k)
    ct = c.truth_table(0) if k else (semantics.full_mask(0) if c.evaluate(())[0] else 0)
    mask = semantics.full_mask(k)

    def witness(t: int) -> dict:
        row = semantics.first_row(t)
        return {a: (row >> j) & 1 for j, a in enumerate(shared)}

    bad0 = ex_phi & (mask ^ ct)
    if bad0:
        return InterpolantCheck(False, True, witness(bad0), "C=0 but side 1 is satisfiable")
    bad1 = ex_not_psi & ct
    if bad1:
        return InterpolantCheck(False, True, witness(bad1), "C=1 but side 2 is falsifiable")
    return InterpolantCheck(True, True)


def verify_sequent_interpolant(s: Sequent, part: Partition, c: Circuit, cap: int | None = None) -> InterpolantCheck:
    phi, psi = sides_as_formulas(s, part)
    return verify_interpolant(phi, psi, c, part.shared, cap)


def is_monotone_partition(s: Sequent, part: Partition) -> bool:
    """Side 1 has no negated shared atom on the left and no plain shared atom on the right."""
    g1, d1, _, _ = part.split(s)
    shared = list(part.shared)
    return all(F.is_monotone_in(f, shared) for f in g1) and all(
        F.is_monotone_in(F.to_nnf(F.neg(f)), shared) for f in d1
    )
