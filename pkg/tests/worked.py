"""The three small refutations of {p, not q}, {not p}, {q} used across the suite.

Atom p is x1 (id 0) and q is x2 (id 1).
"""

from feasint.cnf import ClauseSet, clause
from feasint.kernel.cutting_planes import CPRefutation, CPStep, parse_inequality
from feasint.kernel.nullstellensatz import NSCertificate, Polynomial
from feasint.kernel.resolution import ResolutionRefutation, ResStep

RES_INPUTS = ClauseSet((clause([1, -2]), clause([-1]), clause([2])))

RESOLUTION = ResolutionRefutation(
    (
        ResStep("input", (0,)),
        ResStep("input", (1,)),
        ResStep("res", (0, 1, 0), clause([-2])),
        ResStep("input", (2,)),
        ResStep("res", (3, 2, 1), ()),
    )
)

# pivot of step 2 misdeclared as q
RESOLUTION_BAD = ResolutionRefutation(RESOLUTION.steps[:2] + (ResStep("res", (0, 1, 1)),) + RESOLUTION.steps[3:])

# x2 >= 1, x1 - x2 >= 0, -x1 >= 0 summed twice
CP_INPUTS = ClauseSet((clause([2]), clause([1, -2]), clause([-1])))

CP = CPRefutation(
    (
        CPStep("INPUT", (0,), parse_inequality("x2 >= 1")),
        CPStep("INPUT", (1,), parse_inequality("x1 - x2 >= 0")),
        CPStep("INPUT", (2,), parse_inequality("-x1 >= 0")),
        CPStep("ADD", (0, 1), parse_inequality("x1 >= 1")),
        CPStep("ADD", (3, 2), parse_inequality("0 >= 1")),
    )
)

# the first sum is stated with the wrong bound
CP_BAD = CPRefutation(CP.steps[:3] + (CPStep("ADD", (0, 1), parse_inequality("x1 >= 2")),) + CP.steps[4:])

NS_INPUTS = RES_INPUTS

NS = NSCertificate(
    (Polynomial.const(1), Polynomial.var(1), Polynomial.const(1)),
    (Polynomial.const(0), Polynomial.const(0)),
)

# drops the last multiplier, so the sum is x2 instead of 1
NS_BAD = NSCertificate(NS.g[:2] + (Polynomial.const(0),), NS.h)
