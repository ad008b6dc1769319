from itertools import product

import pytest

import corpus
from feasint import formula as F
from feasint.errors import PreconditionError
from feasint.kernel.sequent import ProofBuilder
from feasint.nonclassical import find_countermodel, ipc_countermodel, lj_pdi, modal_mdi

p, q, r = F.atom(0), F.atom(1), F.atom(2)
box = F.box

EXPECTED_LJ = {
    "and_to_or": (p, q),
    "left_disjunct": (p, F.FALSE),
    "right_disjunct": (F.FALSE, q),
    "or_commute": (q, p),
    "and_or_split": (F.conj(p, q), r),
    "or_and_regroup": (p, r),
}
EXPECTED_MODAL = {
    ("S4", "box_left"): (box(p), F.FALSE),
    ("S4", "or_commute"): (box(q), box(p)),
    ("GL", "four"): (box(p), F.FALSE),
    ("GL", "and_right"): (box(q), F.FALSE),
}
TOP_CASES = ["top_imp_left", "top_imp_right", "top_projection", "top_nested"]


def ipc_valid(ante, goal):
    return ipc_countermodel(F.sequent(ante, [goal])) is None


def is_constant(f, value):
    atoms = sorted(f.atoms())
    return all(F.eval_formula(f, dict(zip(atoms, b))) == value for b in product((0, 1), repeat=len(atoms)))


@pytest.mark.parametrize("name", sorted(corpus.LJ_PROOFS))
def test_lj_corpus(name):
    res = lj_pdi(corpus.LJ_PROOFS[name]())
    assert res.ok, res.checks
    assert res.c.monotone and res.d.monotone
    assert set(res.inputs) <= res.phi.atoms()
    c, d = res.formulas()
    assert ipc_valid([res.phi], F.disj(c, d))
    assert ipc_valid([c], res.psi) and ipc_valid([d], res.theta)
    if name in EXPECTED_LJ:
        assert (c, d) == EXPECTED_LJ[name]


@pytest.mark.parametrize("name", TOP_CASES)
def test_top_cases_collapse_to_one_provable_disjunct(name):
    res = lj_pdi(corpus.LJ_PROOFS[name]())
    c, d = res.formulas()
    assert res.phi is F.TRUE
    assert is_constant(c, 1) != is_constant(d, 1)
    winner = res.psi if is_constant(c, 1) else res.theta
    assert ipc_valid([], winner)


MODAL = [("S4", n) for n in sorted(corpus.S4_PROOFS)] + [("GL", n) for n in sorted(corpus.GL_PROOFS)]


@pytest.mark.parametrize("logic, name", MODAL)
def test_modal_corpus(logic, name):
    table = corpus.S4_PROOFS if logic == "S4" else corpus.GL_PROOFS
    res = modal_mdi(table[name]())
    assert res.ok, res.checks
    assert res.logic == logic and res.c.monotone and res.d.monotone
    c, d = res.formulas()
    for f in (F.imp(res.phi, F.disj(c, d)), F.imp(c, box(res.psi)), F.imp(d, box(res.theta))):
        assert find_countermodel(f, logic, max_worlds=4).ok
    prefix = "forgetful" if logic == "S4" else "collapse"
    assert sum(k.startswith(prefix) for k in res.checks) == 3
    if (logic, name) in EXPECTED_MODAL:
        assert (c, d) == EXPECTED_MODAL[(logic, name)]


def test_rows_report_sizes_and_checks():
    rows = dict(lj_pdi(corpus.LJ_PROOFS["and_to_or"]()).rows())
    assert rows["logic"] == "IPC" and rows["c_monotone"] == 1
    assert rows["proof_size"] > 0 and rows["ipc C->psi"] == "PASS"


def non_monotone_proof():
    b = ProofBuilder("LJ", single=True)
    f = F.imp(p, q)
    k = b.add([f], [f], "ax")
    k = b.add([f], [F.disj(f, r)], "Ror1", 0, [k])
    b.add([], [F.imp(f, F.disj(f, r))], "Rimp", 0, [k])
    return b.build()


def test_errors():
    with pytest.raises(PreconditionError, match="monotone"):
        lj_pdi(non_monotone_proof())
    with pytest.raises(PreconditionError):
        modal_mdi(corpus.LJ_PROOFS["and_to_or"]())
    with pytest.raises(PreconditionError):
        lj_pdi(corpus.S4_PROOFS["box_left"]())
    b = ProofBuilder("LJ", single=True)
    b.add([p], [p], "ax")
    b.add([], [F.imp(p, p)], "Rimp", 0, [0])
    with pytest.raises(PreconditionError):
        lj_pdi(b.build())
