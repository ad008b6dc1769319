import random
from itertools import product

import pytest

from feasint import formula as F
from feasint.errors import LanguageError, ResourceLimitError
from feasint.nonclassical import ipc_countermodel, ipc_prove, ipc_provable
from feasint.nonclassical.ipc import rooted_posets

p, q = F.atom(0), F.atom(1)
bot = F.FALSE


def lneg(f):
    return F.imp(f, bot)


@pytest.mark.parametrize(
    "goal, want",
    [
        (F.imp(p, p), "PROVABLE"),
        (F.disj(p, lneg(p)), "UNPROVABLE"),
        (lneg(lneg(F.disj(p, lneg(p)))), "PROVABLE"),
        (F.imp(lneg(lneg(p)), p), "UNPROVABLE"),
        (F.imp(F.imp(F.imp(p, q), p), p), "UNPROVABLE"),
        (F.imp(F.conj(p, q), F.disj(q, p)), "PROVABLE"),
        (F.disj(F.imp(p, q), F.imp(q, p)), "UNPROVABLE"),
    ],
)
def test_classic_formulas(goal, want):
    s = F.sequent([], [goal])
    assert ipc_prove(s) == want
    cm = ipc_countermodel(s)
    assert (cm is None) == (want == "PROVABLE")


def test_negation_is_normalized():
    assert ipc_provable(F.sequent([F.neg(p), p], [q]))


def test_box_rejected():
    with pytest.raises(LanguageError):
        ipc_provable(F.sequent([], [F.box(p)]))


def test_cap():
    big = F.conj_all([F.imp(F.atom(i), F.atom(i + 1)) for i in range(30)])
    with pytest.raises(ResourceLimitError):
        ipc_provable(F.sequent([big], [big]))
    assert ipc_provable(F.sequent([big], [big]), cap=100)


def test_rooted_posets_are_posets_with_root_zero():
    for n in range(1, 5):
        for up in rooted_posets(n):
            assert up[0] == (1 << n) - 1
            for i, u in enumerate(up):
                assert (u >> i) & 1
                for j in range(n):
                    if (u >> j) & 1:
                        assert j >= i and up[j] & ~u == 0


def random_ipc_formula(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([p, q, F.atom(2), bot])
    k = rng.choice([F.conj, F.disj, F.imp, F.imp])
    return k(random_ipc_formula(rng, depth - 1), random_ipc_formula(rng, depth - 1))


def test_prover_agrees_with_kripke_oracle():
    rng = random.Random(17)
    for _ in range(150):
        f = random_ipc_formula(rng, 3)
        s = F.sequent([], [f])
        provable = ipc_provable(s)
        assert provable == (ipc_countermodel(s) is None)
        if provable:
            atoms = sorted(f.atoms())
            assert all(F.eval_formula(f, dict(zip(atoms, b))) for b in product((0, 1), repeat=len(atoms)))
