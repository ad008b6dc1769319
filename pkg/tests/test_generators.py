import math
from itertools import combinations, product

import pytest

from feasint import cnf
from feasint import formula as F
from feasint import generators as G
from feasint import semantics
from feasint.errors import PreconditionError
from feasint.nonclassical import ipc_prove


def has_clique(n, edges, k):
    return any(all(frozenset(e) in edges for e in combinations(vs, 2)) for vs in combinations(range(1, n + 1), k))


def colorable(n, edges, l):
    for col in product(range(l), repeat=n):
        if all(col[i - 1] != col[j - 1] for i, j in map(tuple, map(sorted, edges))):
            return True
    return False


def graphs(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for bits in product((0, 1), repeat=len(pairs)):
        yield {frozenset(e) for e, b in zip(pairs, bits) if b}


def fixed_edges(cs, n, edges):
    return {cs.atom_of(G.edge(i, j)): int(frozenset((i, j)) in edges) for i, j in combinations(range(1, n + 1), 2)}


def test_php_2_1():
    cs = G.php(2, 1)
    texts = sorted(cnf.clause_text(c) for c in cs)
    assert texts == ["-1 -2 0", "1 0", "2 0"]
    assert cs.names == (("p", 1, 1), ("p", 2, 1))
    assert not cnf.satisfiable(cs.clauses)


def test_php_1_1_satisfiable():
    assert cnf.satisfiable(G.php(1, 1).clauses)


def test_php_counts():
    assert len(G.php(3, 2)) == 12 == G.php_clause_count(3, 2)
    for m, n in product(range(1, 5), repeat=2):
        assert len(G.php(m, n)) == m * math.comb(n, 2) + n * math.comb(m, 2) + m


def test_php_rejects_empty():
    with pytest.raises(PreconditionError):
        G.php(0, 3)


def test_php_family_uses_callable():
    fam = G.php_family(lambda n: n + 1, [1, 2, 3])
    assert [cs.num_atoms for cs in fam] == [2, 6, 12]


def test_clique_clause_breakdown():
    cs = G.clique_clauses(3, 2)
    assert len(cs) == 2 + 6 + 3 + 6 == G.clique_clause_count(3, 2)


def test_color_2_1():
    cs = G.color_clauses(2, 1)
    p12, r11, r21 = (cs.atom_of(x) for x in (("p", 1, 2), ("r", 1, 1), ("r", 2, 1)))
    want = {
        cnf.clause([(r11, True)]),
        cnf.clause([(r21, True)]),
        cnf.clause([(r11, False), (r21, False), (p12, False)]),
    }
    assert set(cs.clauses) == want


def test_clique_clauses_monotone_in_edges():
    cs = G.clique_clauses(4, 3)
    edges = [cs.atom_of(e) for e in G.edge_names(4)]
    assert F.is_monotone_in(cs.formula(), edges)


@pytest.mark.parametrize("n, k", [(3, 2), (4, 3), (4, 2)])
def test_clique_clauses_semantics(n, k):
    cs = G.clique_clauses(n, k)
    for edges in graphs(n):
        assert cnf.satisfiable(cs.clauses, fixed_edges(cs, n, edges)) == has_clique(n, edges, k)


@pytest.mark.parametrize("n, l", [(3, 1), (3, 2), (4, 2)])
def test_color_clauses_semantics(n, l):
    cs = G.color_clauses(n, l)
    for edges in graphs(n):
        assert cnf.satisfiable(cs.clauses, fixed_edges(cs, n, edges)) == colorable(n, edges, l)


def test_clique_color_shares_edge_atoms():
    a, b, shared = G.clique_color(4, 3, 2)
    assert a.names == b.names
    assert [a.names[i] for i in shared] == G.edge_names(4)


@pytest.mark.parametrize("n, k, l", [(3, 2, 1), (2, 2, 1)])
def test_clique_color_tautology_valid(n, k, l):
    f, names = G.clique_color_tautology(n, k, l)
    assert F.in_language(f, "Lp")
    assert semantics.is_valid(f)


def test_clique_color_tautology_rejects_l_ge_k():
    with pytest.raises(PreconditionError):
        G.clique_color_tautology(3, 2, 2)


def test_eps_parameters():
    # 27^(2/3) = 9 and 27^(2/3 - 0.2) ~ 4.65
    assert G.eps_parameters(27, 0.1) == (9, 4)
    with pytest.raises(PreconditionError):
        G.eps_parameters(8, 0.5)
    with pytest.raises(PreconditionError):
        G.eps_parameters(2, 0.1)


def test_lift_intuitionistic_p_p():
    p = F.atom(0)
    f = G.lift_intuitionistic(p, p)
    lnot = F.lnot
    assert f is F.imp(F.disj(p, lnot(p)), F.disj(lnot(p), lnot(lnot(p))))
    assert ipc_prove(F.sequent([], [f])) == "PROVABLE"


@pytest.mark.parametrize(
    "phi, psi",
    [
        (F.conj(F.atom(0), F.atom(1)), F.disj(F.atom(0), F.atom(2))),
        (F.atom(0), F.disj(F.atom(0), F.atom(1))),
        (F.conj(F.atom(0), F.lnot(F.atom(0))), F.atom(1)),
    ],
)
def test_lifts_are_ipc_provable(phi, psi):
    for mode in ("plain", "monotone"):
        try:
            f = G.lift_intuitionistic(phi, psi, mode)
        except PreconditionError:
            assert mode == "monotone"
            continue
        assert ipc_prove(F.sequent([], [f])) == "PROVABLE"
        assert semantics.is_valid(f)


def test_lift_rejects_invalid_implication():
    with pytest.raises(PreconditionError):
        G.lift_intuitionistic(F.atom(0), F.atom(1))
    with pytest.raises(PreconditionError):
        G.lift_modal(F.atom(0), F.atom(0), mode="other")


def test_lift_modal_shape():
    p = F.atom(0)
    f = G.lift_modal(p, p)
    b, lnot = F.box, F.lnot
    assert f is F.imp(F.disj(b(p), b(lnot(p))), F.disj(b(lnot(p)), b(p)))


def test_clique_color_lift_shape():
    f, names = G.clique_color_lift(3, 2, 1)
    assert f.kind == F.IMP and f.right.kind == F.OR
    n_edges = 3
    hyp = f.left
    disjuncts = []
    while hyp.kind == F.AND:
        disjuncts.append(hyp.left)
        hyp = hyp.right
    disjuncts.append(hyp)
    assert len(disjuncts) == n_edges
    assert all(d.kind == F.OR and d.left.kind == F.ATOM and d.right.kind == F.ATOM for d in disjuncts)
    assert semantics.is_valid(f)
    fm, _ = G.clique_color_lift(3, 2, 1, modal=True)
    assert fm.right.left.kind == F.BOX and fm.right.right.kind == F.BOX
