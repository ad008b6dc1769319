"""Hard tautology families: pigeonhole, clique, coloring, and the IPC/modal lifts.

Structured atom names are tuples: ``("p", i, j)`` for pigeon i in hole j or
for the edge {i, j} with i < j, ``("q", u, i)`` for clique slot u mapped to
vertex i, ``("r", i, a)`` for vertex i receiving color a.  Ids follow the
lexicographic order of names, so every output is reproducible.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations
from typing import Callable, Iterable

from . import formula as F
from . import semantics
from .cnf import ClauseSet, make_clause_set
from .errors import PreconditionError


def _neg(name):
    return (name, False)


def _pos(name):
    return (name, True)


def php(m: int, n: int) -> ClauseSet:
    """Pigeonhole clauses for m pigeons and n holes."""
    if m < 1 or n < 1:
        raise PreconditionError("php needs at least one pigeon and one hole")
    P = lambda i, j: ("p", i, j)
    func = [[_neg(P(i, j1)), _neg(P(i, j2))] for i in range(1, m + 1) for j1, j2 in combinations(range(1, n + 1), 2)]
    inj = [[_neg(P(i1, j)), _neg(P(i2, j))] for j in range(1, n + 1) for i1, i2 in combinations(range(1, m + 1), 2)]
    tot = [[_pos(P(i, j)) for j in range(1, n + 1)] for i in range(1, m + 1)]
    names = [P(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    return make_clause_set(func + inj + tot, names)


def php_clause_count(m: int, n: int) -> int:
    return m * math.comb(n, 2) + n * math.comb(m, 2) + m


def php_family(m_of_n: Callable[[int], int], ns: Iterable[int]) -> list[ClauseSet]:
    """PHP instances with a caller-chosen number of pigeons per hole count."""
    return [php(m_of_n(n), n) for n in ns]


def edge(i: int, j: int) -> tuple:
    return ("p", min(i, j), max(i, j))


def edge_names(n: int) -> list[tuple]:
    return [edge(i, j) for i, j in combinations(range(1, n + 1), 2)]


def _clique_named(n: int, k: int) -> list[list[tuple]]:
    Q = lambda u, i: ("q", u, i)
    V, U = range(1, n + 1), range(1, k + 1)
    tot = [[_pos(Q(u, i)) for i in V] for u in U]
    func = [[_neg(Q(u, i1)), _neg(Q(u, i2))] for u in U for i1, i2 in combinations(V, 2)]
    inj = [[_neg(Q(u1, i)), _neg(Q(u2, i))] for u1, u2 in combinations(U, 2) for i in V]
    edges = [
        [_neg(Q(u1, i1)), _neg(Q(u2, i2)), _pos(edge(i1, i2))]
        for u1, u2 in combinations(U, 2)
        for i1, i2 in permutations(V, 2)
    ]
    return tot + func + inj + edges


def _color_named(n: int, l: int) -> list[list[tuple]]:
    R = lambda i, a: ("r", i, a)
    V, A = range(1, n + 1), range(1, l + 1)
    tot = [[_pos(R(i, a)) for a in A] for i in V]
    func = [[_neg(R(i, a1)), _neg(R(i, a2))] for i in V for a1, a2 in combinations(A, 2)]
    edges = [[_neg(R(i1, a)), _neg(R(i2, a)), _neg(edge(i1, i2))] for a in A for i1, i2 in combinations(V, 2)]
    return tot + func + edges


def _clique_names(n: int, k: int) -> list[tuple]:
    return edge_names(n) + [("q", u, i) for u in range(1, k + 1) for i in range(1, n + 1)]


def _color_names(n: int, l: int) -> list[tuple]:
    return edge_names(n) + [("r", i, a) for i in range(1, n + 1) for a in range(1, l + 1)]


def clique_clauses(n: int, k: int) -> ClauseSet:
    """Clauses satisfiable exactly when the edge atoms describe a graph with a k-clique."""
    if not 1 <= k <= n:
        raise PreconditionError("clique size must satisfy 1 <= k <= n")
    return make_clause_set(_clique_named(n, k), _clique_names(n, k))


def clique_clause_count(n: int, k: int) -> int:
    return k + k * math.comb(n, 2) + math.comb(k, 2) * n + math.comb(k, 2) * n * (n - 1)


def color_clauses(n: int, l: int) -> ClauseSet:
    """Clauses satisfiable exactly when the edge atoms describe an l-colorable graph."""
    if not 1 <= l <= n:
        raise PreconditionError("number of colors must satisfy 1 <= l <= n")
    return make_clause_set(_color_named(n, l), _color_names(n, l))


def color_clause_count(n: int, l: int) -> int:
    return n + n * math.comb(l, 2) + l * math.comb(n, 2)


def clique_color(n: int, k: int, l: int) -> tuple[ClauseSet, ClauseSet, list[int]]:
    """Clique and color clauses over one shared atom table, plus the edge atom ids."""
    if not (1 <= l < k <= n):
        raise PreconditionError("clique-color needs 1 <= l < k <= n")
    names = sorted(set(_clique_names(n, k)) | set(_color_names(n, l)))
    a = make_clause_set(_clique_named(n, k), names)
    b = make_clause_set(_color_named(n, l), names)
    shared = [a.atom_of(e) for e in edge_names(n)]
    return a, b, shared


def eps_parameters(n: int, eps: float) -> tuple[int, int]:
    """k = floor(n^(2/3)) and l = floor(n^(2/3 - 2 eps)); refuses l >= k."""
    if not 0 < eps < 1 / 3:
        raise PreconditionError("epsilon must lie strictly between 0 and 1/3")
    k = math.floor(n ** (2 / 3) + 1e-9)
    l = math.floor(n ** (2 / 3 - 2 * eps) + 1e-9)
    if l >= k or l < 1:
        raise PreconditionError(f"degenerate instance at n={n}: k={k}, l={l}")
    return k, l


def _lp_literal(lit) -> F.Formula:
    a = F.atom(lit.atom)
    return a if lit.positive else F.lnot(a)


def cnf_formula_lp(cs: ClauseSet) -> F.Formula:
    """Conjunction of clauses in L_p: right-nested binary connectives, negation as -> false."""
    return F.conj_all([F.disj_all([_lp_literal(l) for l in c]) for c in cs.clauses])


def clique_color_tautology(n: int, k: int, l: int) -> tuple[F.Formula, tuple]:
    """Clique -> not Color over the shared atom table; returns (formula, names)."""
    if l >= k:
        raise PreconditionError("l >= k: the implication is not guaranteed valid")
    a, b, _ = clique_color(n, k, l)
    return F.imp(cnf_formula_lp(a), F.lnot(cnf_formula_lp(b))), a.names


# ----------------------------------------------------------------- lifts

def _fresh_atoms(start: int, count: int) -> list[F.Formula]:
    return [F.atom(start + i) for i in range(count)]


def _lift_setup(phi: F.Formula, psi: F.Formula, mode: str, cap: int | None):
    if mode not in ("plain", "monotone"):
        raise PreconditionError(f"unknown lift mode {mode!r}")
    if not semantics.is_valid(F.imp(phi, psi), cap):
        raise PreconditionError("phi -> psi is not classically valid")
    shared = sorted(a for a in phi.atoms() & psi.atoms() if isinstance(a, int))
    if mode == "monotone" and not (F.is_monotone_in(phi, shared) or F.is_monotone_in(psi, shared)):
        raise PreconditionError("neither side is monotone in the shared atoms")
    used = [a for a in phi.atoms() | psi.atoms() if isinstance(a, int)]
    fresh = _fresh_atoms(max(used, default=-1) + 1, len(shared))
    return shared, fresh


def lift_intuitionistic(phi: F.Formula, psi: F.Formula, mode: str = "plain", cap: int | None = None) -> F.Formula:
    """IPC-provable lift of a classical implication phi -> psi."""
    shared, fresh = _lift_setup(phi, psi, mode, cap)
    ps = [F.atom(i) for i in shared]
    if mode == "plain":
        hyp = F.conj_all([F.disj(p, F.lnot(p)) for p in ps])
        return F.imp(hyp, F.disj(F.lnot(phi), F.lnot(F.lnot(psi))))
    hyp = F.conj_all([F.disj(p, q) for p, q in zip(ps, fresh)])
    phi_neg = F.substitute(phi, {i: F.lnot(p) for i, p in zip(shared, ps)})
    psi_q = F.substitute(psi, dict(zip(shared, fresh)))
    return F.imp(hyp, F.disj(F.lnot(phi_neg), F.lnot(F.lnot(psi_q))))


def lift_modal(phi: F.Formula, psi: F.Formula, mode: str = "plain", cap: int | None = None) -> F.Formula:
    """K-provable lift of a classical implication phi -> psi."""
    shared, fresh = _lift_setup(phi, psi, mode, cap)
    ps = [F.atom(i) for i in shared]
    if mode == "plain":
        hyp = F.conj_all([F.disj(F.box(p), F.box(F.lnot(p))) for p in ps])
        return F.imp(hyp, F.disj(F.box(F.lnot(phi)), F.box(psi)))
    hyp = F.conj_all([F.disj(F.box(p), F.box(q)) for p, q in zip(ps, fresh)])
    phi_neg = F.substitute(phi, {i: F.lnot(p) for i, p in zip(shared, ps)})
    psi_q = F.substitute(psi, dict(zip(shared, fresh)))
    return F.imp(hyp, F.disj(F.box(F.lnot(phi_neg)), F.box(psi_q)))


def clique_color_lift(n: int, k: int, l: int, modal: bool = False) -> tuple[F.Formula, tuple]:
    """The displayed clique-color lift with fresh edge copies ``("e", i, j)`` for the color side.

    IPC shape: and_i (p_i or e_i) -> not Clique(not p, q) or not Color(e, r).
    Modal shape boxes each disjunct of the hypothesis and of the conclusion.
    """
    if not (1 <= l < k <= n):
        raise PreconditionError("clique-color needs 1 <= l < k <= n")
    edges = edge_names(n)
    copies = [("e", i, j) for _, i, j in edges]
    names = sorted(set(_clique_names(n, k)) | set(_color_names(n, l)) | set(copies))
    a = make_clause_set(_clique_named(n, k), names)
    color = [[(copies[edges.index(nm)] if nm in edges else nm, s) for nm, s in c] for c in _color_named(n, l)]
    b = make_clause_set(color, names)
    idx = {nm: i for i, nm in enumerate(names)}
    clique_neg = F.substitute(cnf_formula_lp(a), {idx[e]: F.lnot(F.atom(idx[e])) for e in edges})
    color_f = cnf_formula_lp(b)
    pairs = [(F.atom(idx[e]), F.atom(idx[c])) for e, c in zip(edges, copies)]
    if modal:
        hyp = F.conj_all([F.disj(F.box(p), F.box(q)) for p, q in pairs])
        concl = F.disj(F.box(F.lnot(clique_neg)), F.box(F.lnot(color_f)))
    else:
        hyp = F.conj_all([F.disj(p, q) for p, q in pairs])
        concl = F.disj(F.lnot(clique_neg), F.lnot(color_f))
    return F.imp(hyp, concl), tuple(names)
