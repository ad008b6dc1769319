"""Cut-free proof search for the negation-normal-form calculus.

Complete for valid NNF sequents. A sequent is closed by an axiom (embedded
with weakening and exchange) as soon as one applies. Otherwise non-branching
rules go first (conjunctions on the left and disjunctions on the right are
split by two one-sided rules plus a contraction), then the branching rule
whose children close most often.
"""

from __future__ import annotations

from .. import formula as F
from ..errors import LanguageError, PreconditionError
from ..kernel.sequent import ProofBuilder, SequentProof


def _axiom(ante: tuple, succ: tuple):
    """An axiom (rule, ante, succ) whose formulas occur in the sequent, or None."""
    aset = {id(f) for f in ante}
    sset = {id(f) for f in succ}
    if id(F.FALSE) in aset:
        return "ax_bot", (F.FALSE,), ()
    if id(F.TRUE) in sset:
        return "ax_top", (), (F.TRUE,)
    nt, nb = F.neg(F.TRUE), F.neg(F.FALSE)
    if id(nt) in aset:
        return "ax_ntop", (nt,), ()
    if id(nb) in sset:
        return "ax_nbot", (), (nb,)
    for f in ante:
        if f.kind == F.ATOM and id(f) in sset:
            return "ax_atom", (f,), (f,)
        if f.kind == F.NOT and f.child.kind == F.ATOM and id(f) in sset:
            return "ax_lit", (f,), (f,)
    for f in ante:
        if f.kind == F.ATOM and id(F.neg(f)) in aset:
            return "ax_lnot", (f, F.neg(f)), ()
    for f in succ:
        if f.kind == F.ATOM and id(F.neg(f)) in sset:
            return "ax_rnot", (), (f, F.neg(f))
    return None


def _check_input(fs) -> None:
    for f in fs:
        if not F.in_language(f, "Lb") or not F.is_nnf(f):
            raise LanguageError(f"{f.text} is not an NNF formula over binary connectives")


def prove_into(b: ProofBuilder, ante: tuple, succ: tuple) -> int:
    """Append a cut-free proof of ``ante => succ`` to ``b``; returns the root node."""
    _check_input(ante + succ)
    memo: dict[tuple, int] = {}

    def go(ante: tuple, succ: tuple) -> int:
        key = (tuple(map(id, ante)), tuple(map(id, succ)))
        if key in memo:
            return memo[key]
        r = _step(ante, succ)
        memo[key] = r
        return r

    def _closes(ante: tuple, succ: tuple, f, left: bool) -> bool:
        return _axiom(ante + (f,), succ) is not None if left else _axiom(ante, succ + (f,)) is not None

    def _branch_score(ante, succ, f, left) -> int:
        return sum(_closes(ante, succ, g, left) for g in (f.left, f.right))

    def _step(ante: tuple, succ: tuple) -> int:
        ax = _axiom(ante, succ)
        if ax is not None:
            rule, a, s = ax
            k = b.add(a, s, rule)
            return b.embed(k, ante, succ)
        for i, f in enumerate(ante):
            if f.kind == F.AND:
                p = go(ante[:i] + (f.left, f.right) + ante[i + 1 :], succ)
                n1 = b.add(ante[:i] + (f, f.right) + ante[i + 1 :], succ, "Land1", i, [p])
                n2 = b.add(ante[:i] + (f, f) + ante[i + 1 :], succ, "Land2", i + 1, [n1])
                return b.add(ante, succ, "Lc", i, [n2])
        for i, f in enumerate(succ):
            if f.kind == F.OR:
                p = go(ante, succ[:i] + (f.left, f.right) + succ[i + 1 :])
                n1 = b.add(ante, succ[:i] + (f, f.right) + succ[i + 1 :], "Ror1", i, [p])
                n2 = b.add(ante, succ[:i] + (f, f) + succ[i + 1 :], "Ror2", i + 1, [n1])
                return b.add(ante, succ, "Rc", i, [n2])
        # branch where the most children close at once, which keeps clause sets tableau-sized
        cands = [(True, i, f) for i, f in enumerate(ante) if f.kind == F.OR]
        cands += [(False, i, f) for i, f in enumerate(succ) if f.kind == F.AND]
        if not cands:
            raise PreconditionError("sequent is not classically valid")
        left, i, f = max(cands, key=lambda c: _branch_score(ante, succ, c[2], c[0]))
        if left:
            p1 = go(ante[:i] + (f.left,) + ante[i + 1 :], succ)
            p2 = go(ante[:i] + (f.right,) + ante[i + 1 :], succ)
            return b.add(ante, succ, "Lor", i, [p1, p2])
        p1 = go(ante, succ[:i] + (f.left,) + succ[i + 1 :])
        p2 = go(ante, succ[:i] + (f.right,) + succ[i + 1 :])
        return b.add(ante, succ, "Rand", i, [p1, p2])

    return go(tuple(ante), tuple(succ))


def prove_lkn(ante, succ) -> SequentProof:
    """Cut-free proof of a valid NNF sequent."""
    b = ProofBuilder("LK_n-")
    root = prove_into(b, tuple(ante), tuple(succ))
    return b.build(root)
