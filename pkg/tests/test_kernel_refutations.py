from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import worked
from feasint import formula as F
from feasint.cnf import ClauseSet, clause, satisfiable
from feasint.errors import ParseError, PreconditionError
from feasint.kernel import cutting_planes as CPm
from feasint.kernel import nullstellensatz as NSm
from feasint.kernel import resolution as Rm
from feasint.kernel.cutting_planes import CPRefutation, CPStep, Inequality, check_cp, clause_to_inequality
from feasint.kernel.nullstellensatz import Field, NSCertificate, Polynomial, check_ns, formula_to_polynomial
from feasint.kernel.resolution import ResolutionRefutation, ResStep, check_resolution
from feasint.classical import cdcl_refute, dp_refute

# ------------------------------------------------------------------ resolution


def test_resolution_worked_example():
    v = check_resolution(worked.RES_INPUTS, worked.RESOLUTION)
    assert v.ok
    assert not check_resolution(worked.RES_INPUTS, worked.RESOLUTION_BAD).ok
    assert check_resolution(worked.RES_INPUTS, worked.RESOLUTION_BAD).step == 2


def test_resolution_empty_input_clause():
    cs = ClauseSet(((),))
    assert check_resolution(cs, ResolutionRefutation((ResStep("input", (0,)),))).ok


def test_resolution_rejects():
    cs = worked.RES_INPUTS
    # last clause not empty
    r = ResolutionRefutation(worked.RESOLUTION.steps[:3])
    v = check_resolution(cs, r)
    assert not v.ok and v.step == 2
    # wrong stated clause
    bad = ResolutionRefutation(worked.RESOLUTION.steps[:2] + (ResStep("res", (0, 1, 0), clause([2])),))
    assert check_resolution(cs, bad).step == 2
    # forward reference
    fwd = ResolutionRefutation((ResStep("res", (0, 1, 0)),))
    assert check_resolution(cs, fwd).step == 0
    # input out of range
    assert check_resolution(cs, ResolutionRefutation((ResStep("input", (7,)),))).step == 0
    assert not check_resolution(cs, ResolutionRefutation(())).ok


def test_resolution_text_round_trip():
    r = worked.RESOLUTION
    text = Rm.refutation_to_text(r)
    assert text.splitlines()[2] == "2 RES 0 1 1 : -2"
    assert Rm.refutation_from_text(text) == r
    with pytest.raises(ParseError):
        Rm.refutation_from_text("0 RES 0 1 0\n")
    with pytest.raises(ParseError):
        Rm.refutation_from_text("1 INPUT 0\n")


def test_resolution_delete_unused_step_keeps_accept():
    cs = ClauseSet(worked.RES_INPUTS.clauses + (clause([1, 2]),))
    extra = ResolutionRefutation(worked.RESOLUTION.steps[:1] + (ResStep("input", (3,)),) + tuple(
        ResStep(s.kind, tuple(a + 1 if s.kind == "res" and j < 2 and a >= 1 else a for j, a in enumerate(s.args)), s.clause)
        for s in worked.RESOLUTION.steps[1:]
    ))
    assert check_resolution(cs, extra).ok
    assert 1 not in Rm.used_steps(extra)
    assert check_resolution(cs, Rm.delete_step(extra, 1)).ok
    assert check_resolution(cs, Rm.prune(extra)).ok


# -------------------------------------------------------------- cutting planes


@pytest.mark.parametrize(
    "lits, text",
    [([1, -2], "x1 - x2 >= 0"), ([1], "x1 >= 1"), ([], "0 >= 1"), ([-1, -2, 3], "-x1 - x2 + x3 >= -1")],
)
def test_clause_to_inequality(lits, text):
    assert clause_to_inequality(clause(lits)) == CPm.parse_inequality(text)


def test_cp_worked_example():
    assert check_cp(worked.CP_INPUTS, worked.CP).ok
    v = check_cp(worked.CP_INPUTS, worked.CP_BAD)
    assert not v.ok and v.step == 3


def test_cp_division():
    cs = ClauseSet(())
    base = CPStep("AXL", (0,))
    a = Inequality.make({0: 2, 1: 2}, 1)
    assert CPm.div(a, 2) == Inequality.make({0: 1, 1: 1}, 0)
    r = CPRefutation((base, CPStep("MUL", (0, 2)), CPStep("DIV", (1, 2)), CPStep("DIV", (1, 3))))
    v = check_cp(cs, r)
    assert not v.ok and v.step == 3 and "does not divide" in v.reason
    r = CPRefutation((base, CPStep("MUL", (0, -1))))
    assert check_cp(cs, r).step == 1
    r = CPRefutation((base, CPStep("DIV", (0, 0))))
    assert check_cp(cs, r).step == 1


def test_cp_division_indivisible_coefficient():
    # 2 x1 + 3 x2 >= 1 divided by 2 is rejected
    cs = ClauseSet((clause([1]), clause([2])))
    r = CPRefutation(
        (
            CPStep("INPUT", (0,)),
            CPStep("MUL", (0, 2)),
            CPStep("INPUT", (1,)),
            CPStep("MUL", (2, 3)),
            CPStep("ADD", (1, 3), Inequality.make({0: 2, 1: 3}, 5)),
            CPStep("DIV", (4, 2)),
        )
    )
    v = check_cp(cs, r)
    assert v.step == 5 and "x2" in v.reason


def test_cp_text_round_trip():
    text = CPm.refutation_to_text(worked.CP)
    assert CPm.refutation_from_text(text) == worked.CP
    r = CPRefutation((CPStep("AXU", (2,)), CPStep("AXL", (0,))))
    assert CPm.refutation_from_text(CPm.refutation_to_text(r)) == r
    assert "0 AXU 3" in CPm.refutation_to_text(r)
    with pytest.raises(ParseError):
        CPm.refutation_from_text("0 FOO 1\n")


def test_cp_big_coefficients_exact():
    a = Inequality.make({0: 10**30, 1: -(10**30)}, 10**30 + 1)
    # the derived bound is floor(b / c)
    assert CPm.div(a, 10**30) == Inequality.make({0: 1, 1: -1}, 1)


def test_cp_division_stated_bound_up_to_ceiling():
    # a stated line may use any bound up to ceil(b / c), which is still sound over integers
    cs = ClauseSet((clause([1, 2]),))
    steps = (
        CPStep("INPUT", (0,)),
        CPStep("MUL", (0, 2)),
        CPStep("AXU", (0,)),
        CPStep("AXL", (0,)),
        CPStep("ADD", (1, 2)),
        CPStep("ADD", (4, 3), Inequality.make({0: 2, 1: 2}, 1)),
    )
    for bound, ok in ((0, True), (1, True), (2, False)):
        r = CPRefutation(steps + (CPStep("DIV", (5, 2), Inequality.make({0: 1, 1: 1}, bound)),))
        v = check_cp(cs, r)
        assert v.step == 6
        # an accepted division leaves only the final-line complaint
        assert ("last line" in v.reason) == ok


# ------------------------------------------------------------- Nullstellensatz


@pytest.mark.parametrize(
    "f, text",
    [
        (F.atom(0), "1 - 1 * x1"),
        (F.disj(F.atom(0), F.neg(F.atom(1))), "1 * x2 - 1 * x1 * x2"),
        (F.TRUE, "0"),
        (F.FALSE, "1"),
    ],
)
def test_formula_to_polynomial(f, text):
    assert formula_to_polynomial(f) == NSm.parse_polynomial(text)


def test_formula_to_polynomial_rejects_imp():
    with pytest.raises(Exception):
        formula_to_polynomial(F.imp(F.atom(0), F.atom(1)))


def test_ns_worked_example():
    assert check_ns(worked.NS_INPUTS, worked.NS).ok
    total = NSm.ns_sum(worked.NS_INPUTS, worked.NS)
    assert total == Polynomial.const(1)
    v = check_ns(worked.NS_INPUTS, worked.NS_BAD)
    assert not v.ok and "x2" in v.reason


def test_ns_small_cases():
    cs = ClauseSet((clause([1]), clause([-1])))
    one = Polynomial.const(1)
    zero = Polynomial.const(0)
    assert check_ns(cs, NSCertificate((one, one), (zero,))).ok
    v = check_ns(cs, NSCertificate((zero, one), (zero,)))
    assert not v.ok and "x1" in v.reason


def test_ns_arity_and_field_errors():
    cs = ClauseSet((clause([1]), clause([-1])))
    one = Polynomial.const(1)
    with pytest.raises(PreconditionError):
        check_ns(cs, NSCertificate((one,), (one,)))
    with pytest.raises(PreconditionError):
        check_ns(cs, NSCertificate((one, one), ()))
    f5 = Field(5)
    with pytest.raises(PreconditionError):
        check_ns(cs, NSCertificate((one, one), (Polynomial.const(0),)), f5)
    with pytest.raises(PreconditionError):
        Field(4)


def test_ns_prime_field():
    f3 = Field(3)
    cs = ClauseSet((clause([1]), clause([-1])))
    cert = NSCertificate((Polynomial.const(1, f3), Polynomial.const(1, f3)), (Polynomial.const(0, f3),), f3)
    assert check_ns(cs, cert).ok
    assert (Polynomial.const(2, f3) + Polynomial.const(2, f3)) == Polynomial.const(1, f3)


def test_ns_text_round_trip():
    text = NSm.certificate_to_text(worked.NS)
    assert NSm.certificate_from_text(text) == worked.NS
    assert NSm.parse_polynomial("1/2 * x1") == Polynomial.make({((0, 1),): Fraction(1, 2)})
    with pytest.raises(ParseError):
        NSm.certificate_from_text("g 1\n")


def test_certificate_from_truth_table():
    cs = ClauseSet((clause([1, 2]), clause([-1]), clause([-2])))
    assert check_ns(cs, NSm.certificate_from_truth_table(cs)).ok


formulas_lb = st.recursive(
    st.integers(0, 3).map(F.atom) | st.sampled_from([F.TRUE, F.FALSE]),
    lambda ch: ch.map(F.neg) | st.tuples(ch, ch).map(lambda t: F.conj(*t)) | st.tuples(ch, ch).map(lambda t: F.disj(*t)),
    max_leaves=10,
)


@settings(max_examples=200, deadline=None)
@given(formulas_lb)
def test_polynomial_vanishes_exactly_on_models(f):
    P = formula_to_polynomial(f)
    for bits in product((0, 1), repeat=4):
        a = dict(enumerate(bits))
        assert (F.eval_formula(f, a) == 1) == (P.evaluate(a) == 0)


def test_polynomial_exhaustive_eight_atoms():
    f = F.conj_all([F.disj(F.atom(i), F.neg(F.atom((i + 1) % 8))) for i in range(8)])
    P = formula_to_polynomial(f)
    for bits in product((0, 1), repeat=8):
        a = dict(enumerate(bits))
        assert (F.eval_formula(f, a) == 1) == (P.evaluate(a) == 0)


# ------------------------------------------------------------------ refuters

clause_sets = st.lists(
    st.lists(st.integers(1, 5).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=3),
    min_size=1,
    max_size=14,
)


@settings(max_examples=150, deadline=None)
@given(clause_sets)
def test_refuters_produce_checked_refutations(raw):
    cs = ClauseSet(tuple(clause(c) for c in raw))
    if satisfiable(cs.clauses):
        for refute in (cdcl_refute, dp_refute):
            with pytest.raises(PreconditionError):
                refute(cs)
        return
    for refute in (cdcl_refute, dp_refute):
        assert check_resolution(cs, refute(cs)).ok
