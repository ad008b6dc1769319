"""The t, t0, t1 translations into extended atoms, and Horn-set extraction from proofs."""

from __future__ import annotations

from .. import formula as F
from ..errors import LanguageError, PreconditionError
from ..formula import Formula
from ..kernel.sequent import ProofNode, SequentProof
from .horn import HornFormula, horn


def translate_t(f: Formula) -> Formula:
    """bot -> bot, top -> <top>, p -> <p>, (a o b) -> (a^t o b^t) and <a o b>."""
    if not F.in_language(f, "Lp"):
        raise LanguageError(f"{f.text} is not a propositional formula over and/or/imp")
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        k = g.kind
        if k == F.BOT:
            r = F.FALSE
        elif k in (F.TOP, F.ATOM):
            r = F.ext(g)
        else:
            r = F.conj(F._make(k, (go(g.left), go(g.right))), F.ext(g))
        memo[id(g)] = r
        return r

    return go(f)


def _translate_modal(f: Formula, keep_body: bool) -> Formula:
    if not F.in_language(f, "Lbox"):
        raise LanguageError(f"{f.text} is not a modal formula over and/or/imp/box")
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        k = g.kind
        if k in (F.BOT, F.TOP, F.ATOM):
            r = g
        elif k == F.BOX:
            r = F.conj(go(g.child), F.ext(g)) if keep_body else F.ext(g)
        else:
            r = F._make(k, (go(g.left), go(g.right)))
        memo[id(g)] = r
        return r

    return go(f)


def translate_t0(f: Formula) -> Formula:
    """box a -> <box a>; homomorphic elsewhere."""
    return _translate_modal(f, False)


def translate_t1(f: Formula) -> Formula:
    """box a -> a^t1 and <box a>; homomorphic elsewhere."""
    return _translate_modal(f, True)


# ------------------------------------------------------------- Horn sets

_RIGHT_LJ = {"Rand", "Ror1", "Ror2", "Rimp"}


def sigma_entry_lj(node: ProofNode) -> HornFormula | None:
    """Entry a node contributes: right rules and the top axiom add one, everything else none."""
    s = node.sequent
    if node.rule == "ax_top":
        return horn((), F.ext(F.TRUE))
    if node.rule in _RIGHT_LJ:
        return horn([F.ext(g) for g in s.ante], F.ext(s.succ[0]))
    return None


def sigma_entry_modal(node: ProofNode) -> HornFormula | None:
    s = node.sequent
    if node.rule in ("RS4", "GL"):
        return horn([F.ext(g) for g in s.ante], F.ext(s.succ[0]))
    return None


def _collect(p: SequentProof, entry, reset_rules=frozenset()) -> list[HornFormula]:
    """Union of node entries over the proof DAG; ``reset_rules`` drop everything above them."""
    nodes = p.nodes
    sigma: dict[int, frozenset] = {}
    for k, node in enumerate(nodes):
        own = entry(node)
        if node.rule in reset_rules:
            acc = frozenset()
        else:
            acc = frozenset().union(*(sigma[j] for j in node.premises)) if node.premises else frozenset()
        if own is not None:
            acc = acc | {own}
        sigma[k] = acc
    root = sigma[len(nodes) - 1]
    return sorted(root, key=lambda h: h.text)


def extract_sigma_lj(p: SequentProof) -> list[HornFormula]:
    if p.calculus != "LJ":
        raise PreconditionError(f"expected an LJ proof, got {p.calculus}")
    return _collect(p, sigma_entry_lj)


def extract_sigma_modal(p: SequentProof) -> list[HornFormula]:
    if p.calculus not in ("S4", "GL"):
        raise PreconditionError(f"expected an S4 or GL proof, got {p.calculus}")
    return _collect(p, sigma_entry_modal, frozenset({"GL"}))
