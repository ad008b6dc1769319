"""Random accepted proofs, random mutations of them, and brute-force soundness oracles.

Everything here is independent of the library's own semantics: the oracles
evaluate formulas and clauses directly over all assignments.
"""

import random
from itertools import product

from feasint import formula as F
from feasint.cnf import ClauseSet, clause
from feasint.errors import PreconditionError
from feasint.formula import Sequent
from feasint.kernel import cutting_planes as CPm
from feasint.kernel import nullstellensatz as NSm
from feasint.kernel.cutting_planes import CPRefutation, CPStep
from feasint.kernel.resolution import ResolutionRefutation, ResStep
from feasint.kernel.sequent import CALCULI, ProofBuilder, ProofNode, SequentProof
from feasint.classical import cdcl_refute, dp_refute

ATOMS = [F.atom(i) for i in range(4)]
MODAL = ("K", "D", "KT", "K4", "KD4", "S4", "GL")

# ------------------------------------------------------------------ oracles


def evaluate(f, a, box_mode):
    """Classical value; box is read as identity ("forget") or as true ("collapse")."""
    k = f.kind
    if k == F.ATOM:
        return a[f.atom]
    if k == F.TOP:
        return True
    if k == F.BOT:
        return False
    if k == F.NOT:
        return not evaluate(f.child, a, box_mode)
    if k == F.BOX:
        return True if box_mode == "collapse" else evaluate(f.child, a, box_mode)
    if k in (F.AND, F.BIGAND):
        return all(evaluate(c, a, box_mode) for c in f.children)
    if k in (F.OR, F.BIGOR):
        return any(evaluate(c, a, box_mode) for c in f.children)
    if k == F.IMP:
        return (not evaluate(f.left, a, box_mode)) or evaluate(f.right, a, box_mode)
    raise ValueError(k)


def sequent_holds(s, box_mode="forget"):
    atoms = sorted(s.atoms())
    for bits in product((False, True), repeat=len(atoms)):
        a = dict(zip(atoms, bits))
        if all(evaluate(f, a, box_mode) for f in s.ante) and not any(evaluate(f, a, box_mode) for f in s.succ):
            return False
    return True


def box_mode(calc):
    # GL is only sound for the reading of box as true
    return "collapse" if calc == "GL" else "forget"


def clauses_satisfiable(clauses, nvars):
    for bits in product((False, True), repeat=nvars):
        if all(any(bits[l.atom] == l.positive for l in c) for c in clauses):
            return True
    return False


def cube(nvars):
    for bits in product((0, 1), repeat=nvars):
        yield dict(enumerate(bits))


# ------------------------------------------------------------ formulas


def random_formula(rng, calc, depth=2):
    nnf = CALCULI[calc].nnf
    if depth == 0 or rng.random() < 0.35:
        a = rng.choice(ATOMS)
        r = rng.random()
        if nnf and r < 0.3:
            return F.neg(a)
        if r < 0.08:
            return rng.choice([F.TRUE, F.FALSE])
        return a
    ops = ["and", "or"]
    if not nnf:
        ops.append("imp")
    if calc in MODAL:
        ops.append("box")
    op = rng.choice(ops)
    if op == "box":
        return F.box(random_formula(rng, calc, depth - 1))
    a, b = random_formula(rng, calc, depth - 1), random_formula(rng, calc, depth - 1)
    return {"and": F.conj, "or": F.disj, "imp": F.imp}[op](a, b)


# -------------------------------------------------------- sequent proofs


class _Gen:
    def __init__(self, rng, calc):
        self.rng = rng
        self.calc = calc
        self.c = CALCULI[calc]
        self.b = ProofBuilder(calc, single=self.c.single)

    def s(self, k):
        return self.b.seq(k)

    def add(self, ante, succ, rule, index=None, prem=()):
        return self.b.add(ante, succ, rule, index, prem)

    def pick(self, cond=lambda s: True):
        ks = [k for k in range(len(self.b.nodes)) if cond(self.s(k))]
        return self.rng.choice(ks) if ks else None

    def fits(self, succ):
        return not self.c.single or len(succ) <= 1

    def axiom(self):
        rng = self.rng
        if self.c.nnf:
            a = rng.choice(ATOMS)
            choice = rng.choice(["atom", "lit", "lnot", "rnot", "const"])
            if choice == "atom":
                return self.add((a,), (a,), "ax_atom")
            if choice == "lit":
                return self.add((F.neg(a),), (F.neg(a),), "ax_lit")
            if choice == "lnot":
                return self.add((a, F.neg(a)), (), "ax_lnot")
            if choice == "rnot":
                return self.add((), (a, F.neg(a)), "ax_rnot")
            return rng.choice(
                [
                    lambda: self.add((F.FALSE,), (), "ax_bot"),
                    lambda: self.add((), (F.TRUE,), "ax_top"),
                    lambda: self.add((F.neg(F.TRUE),), (), "ax_ntop"),
                    lambda: self.add((), (F.neg(F.FALSE),), "ax_nbot"),
                ]
            )()
        r = rng.random()
        if r < 0.1:
            return self.add((F.FALSE,), (), "ax_bot")
        if r < 0.2:
            return self.add((), (F.TRUE,), "ax_top")
        f = random_formula(rng, self.calc, 1)
        return self.add((f,), (f,), "ax")

    def embed(self, k, ante, succ):
        return self.b.embed(k, ante, succ)

    # one-premise logical and structural rules

    def weaken(self):
        k = self.pick()
        s = self.s(k)
        f = random_formula(self.rng, self.calc, 1)
        if self.rng.random() < 0.5 or not self.fits(s.succ + (f,)):
            i = self.rng.randint(0, len(s.ante))
            return self.add(s.ante[:i] + (f,) + s.ante[i:], s.succ, "Lw", i, [k])
        i = self.rng.randint(0, len(s.succ))
        return self.add(s.ante, s.succ[:i] + (f,) + s.succ[i:], "Rw", i, [k])

    def exchange(self):
        k = self.pick(lambda s: len(s.ante) > 1 or len(s.succ) > 1)
        if k is None:
            return None
        s = self.s(k)
        if len(s.ante) > 1 and (len(s.succ) < 2 or self.rng.random() < 0.5):
            i = self.rng.randrange(len(s.ante) - 1)
            return self.add(s.ante[:i] + (s.ante[i + 1], s.ante[i]) + s.ante[i + 2 :], s.succ, "Le", i, [k])
        i = self.rng.randrange(len(s.succ) - 1)
        return self.add(s.ante, s.succ[:i] + (s.succ[i + 1], s.succ[i]) + s.succ[i + 2 :], "Re", i, [k])

    def contract(self):
        def dup(t):
            return [i for i in range(len(t) - 1) if t[i] is t[i + 1]]

        k = self.pick(lambda s: dup(s.ante) or dup(s.succ))
        if k is None:
            return None
        s = self.s(k)
        if dup(s.ante):
            i = self.rng.choice(dup(s.ante))
            return self.add(s.ante[:i] + s.ante[i + 1 :], s.succ, "Lc", i, [k])
        i = self.rng.choice(dup(s.succ))
        return self.add(s.ante, s.succ[:i] + s.succ[i + 1 :], "Rc", i, [k])

    def and_left(self):
        k = self.pick(lambda s: s.ante)
        if k is None:
            return None
        s = self.s(k)
        i = self.rng.randrange(len(s.ante))
        g = random_formula(self.rng, self.calc, 1)
        if self.rng.random() < 0.5:
            return self.add(s.ante[:i] + (F.conj(s.ante[i], g),) + s.ante[i + 1 :], s.succ, "Land1", i, [k])
        return self.add(s.ante[:i] + (F.conj(g, s.ante[i]),) + s.ante[i + 1 :], s.succ, "Land2", i, [k])

    def or_right(self):
        k = self.pick(lambda s: s.succ)
        if k is None:
            return None
        s = self.s(k)
        i = self.rng.randrange(len(s.succ))
        g = random_formula(self.rng, self.calc, 1)
        if self.rng.random() < 0.5:
            return self.add(s.ante, s.succ[:i] + (F.disj(s.succ[i], g),) + s.succ[i + 1 :], "Ror1", i, [k])
        return self.add(s.ante, s.succ[:i] + (F.disj(g, s.succ[i]),) + s.succ[i + 1 :], "Ror2", i, [k])

    def imp_right(self):
        k = self.pick(lambda s: s.ante and s.succ)
        if k is None:
            return None
        s = self.s(k)
        i = self.rng.randrange(len(s.succ))
        return self.add(s.ante[:-1], s.succ[:i] + (F.imp(s.ante[-1], s.succ[i]),) + s.succ[i + 1 :], "Rimp", i, [k])

    # two-premise rules, with contexts merged by structural steps

    def _two(self, c1, c2):
        k1, k2 = self.pick(c1), self.pick(c2)
        return (None, None) if k1 is None or k2 is None else (k1, k2)

    def and_right(self):
        k1, k2 = self._two(lambda s: s.succ, lambda s: s.succ)
        if k1 is None:
            return None
        s1, s2 = self.s(k1), self.s(k2)
        a, b = s1.succ[0], s2.succ[0]
        rest = s1.succ[1:] + s2.succ[1:]
        if not self.fits((a,) + rest):
            return None
        gamma = s1.ante + s2.ante
        p1 = self.embed(k1, gamma, (a,) + rest)
        p2 = self.embed(k2, gamma, (b,) + rest)
        return self.add(gamma, (F.conj(a, b),) + rest, "Rand", 0, [p1, p2])

    def or_left(self):
        k1, k2 = self._two(lambda s: s.ante, lambda s: s.ante)
        if k1 is None:
            return None
        s1, s2 = self.s(k1), self.s(k2)
        a, b = s1.ante[0], s2.ante[0]
        gamma = s1.ante[1:] + s2.ante[1:]
        delta = s1.succ + s2.succ
        if not self.fits(delta):
            if s1.succ != s2.succ:
                return None
            delta = s1.succ
        p1 = self.embed(k1, (a,) + gamma, delta)
        p2 = self.embed(k2, (b,) + gamma, delta)
        return self.add((F.disj(a, b),) + gamma, delta, "Lor", 0, [p1, p2])

    def imp_left(self):
        k1, k2 = self._two(lambda s: s.succ, lambda s: s.ante)
        if k1 is None:
            return None
        s1, s2 = self.s(k1), self.s(k2)
        a, b = s1.succ[0], s2.ante[0]
        gamma = s1.ante + s2.ante[1:]
        if self.c.single:
            delta = s2.succ
            p1 = self.embed(k1, gamma, (a,))
        else:
            delta = s1.succ[1:] + s2.succ
            p1 = self.embed(k1, gamma, (a,) + delta)
        p2 = self.embed(k2, (b,) + gamma, delta)
        return self.add((F.imp(a, b),) + gamma, delta, "Limp", 0, [p1, p2])

    def cut(self):
        k1, k2 = self._two(lambda s: s.succ, lambda s: True)
        if k1 is None:
            return None
        s1, s2 = self.s(k1), self.s(k2)
        phi = s1.succ[0]
        gamma = s1.ante + s2.ante
        if self.c.single:
            delta = s2.succ
            p1 = self.embed(k1, gamma, (phi,))
        else:
            delta = s1.succ[1:] + s2.succ
            p1 = self.embed(k1, gamma, (phi,) + delta)
        p2 = self.embed(k2, gamma + (phi,), delta)
        return self.add(gamma, delta, "cut", None, [p1, p2])

    # modal rules

    def modal(self):
        rules = sorted(self.c.rules & {"K", "D", "K4", "KD4", "LS4", "RS4", "GL"})
        rule = self.rng.choice(rules)
        if rule == "LS4":
            k = self.pick(lambda s: s.ante)
            if k is None:
                return None
            s = self.s(k)
            i = self.rng.randrange(len(s.ante))
            return self.add(s.ante[:i] + (F.box(s.ante[i]),) + s.ante[i + 1 :], s.succ, "LS4", i, [k])
        one = (lambda s: len(s.succ) <= 1) if rule in ("D", "KD4") else (lambda s: len(s.succ) == 1)
        k = self.pick(one)
        if k is None:
            return None
        s = self.s(k)
        boxed = tuple(F.box(f) for f in s.ante)
        goal = tuple(F.box(f) for f in s.succ)
        if rule in ("K", "D"):
            return self.add(boxed, goal, rule, None, [k])
        if rule in ("K4", "KD4"):
            p = self.embed(k, boxed + s.ante, s.succ)
            return self.add(boxed, goal, rule, None, [p])
        if rule == "GL":
            p = self.embed(k, boxed + s.ante + goal, s.succ)
            return self.add(boxed, goal, "GL", None, [p])
        # RS4 needs every antecedent formula boxed; LS4 boxes them in place
        for i, f in enumerate(s.ante):
            if f.kind != F.BOX:
                cur = self.s(k)
                k = self.add(cur.ante[:i] + (F.box(f),) + cur.ante[i + 1 :], cur.succ, "LS4", i, [k])
        return self.add(self.s(k).ante, goal, "RS4", None, [k])

    def step(self):
        moves = [self.axiom, self.weaken, self.exchange, self.contract, self.and_left, self.or_right, self.and_right, self.or_left]
        if not self.c.nnf:
            moves += [self.imp_right, self.imp_left]
        if "cut" in self.c.rules and not self.c.nnf:
            moves.append(self.cut)
        if self.calc in MODAL:
            moves += [self.modal] * 2
        return self.rng.choice(moves)()


def random_sequent_proof(rng, calc, steps=None):
    g = _Gen(rng, calc)
    g.axiom()
    for _ in range(steps or rng.randint(3, 10)):
        try:
            g.step()
        except PreconditionError:
            # a merged context the builder cannot embed; try another move
            continue
        if max(s.sequent.size() for s in g.b.nodes[-1:]) > 40:
            break
    return g.b.build()


def mutate_sequent_proof(rng, p):
    nodes = list(p.nodes)
    k = rng.randrange(len(nodes))
    n = nodes[k]
    calc = CALCULI[p.calculus]
    kind = rng.choice(["formula", "drop", "rule", "index", "premise"])
    ante, succ = n.sequent.ante, n.sequent.succ
    rule, index, prem = n.rule, n.index, n.premises
    if kind in ("formula", "drop"):
        side = "ante" if (ante and (not succ or rng.random() < 0.5)) else "succ"
        t = ante if side == "ante" else succ
        if not t:
            t = ()
            side = "ante"
        if kind == "drop" and t:
            i = rng.randrange(len(t))
            t = t[:i] + t[i + 1 :]
        else:
            f = random_formula(rng, p.calculus, 1)
            i = rng.randint(0, len(t))
            t = t[:i] + (f,) + t[i + 1 :]
        ante, succ = (t, succ) if side == "ante" else (ante, t)
    elif kind == "rule":
        rule = rng.choice(sorted(calc.rules))
    elif kind == "index":
        index = rng.randint(0, 3)
    elif k:
        prem = tuple(rng.randrange(k) for _ in prem) or (rng.randrange(k),)
    try:
        nodes[k] = ProofNode(Sequent(ante, succ, calc.single), rule, index, prem)
    except PreconditionError:
        return None
    return SequentProof(p.calculus, tuple(nodes), p.depth_cap)


def sequent_proof_sound(p):
    """Every node of an accepted proof must be valid under the calculus' reading."""
    mode = box_mode(p.calculus)
    return all(sequent_holds(n.sequent, mode) for n in p.nodes)


# ---------------------------------------------------------- refutations


def random_clause_set(rng, nvars=None, unsat_bias=True):
    nvars = nvars or rng.randint(2, 5)
    n = rng.randint(3, 14)
    raw = []
    for _ in range(n):
        w = rng.choice((1, 2, 2, 3)) if unsat_bias else rng.randint(1, 3)
        vs = rng.sample(range(1, nvars + 1), min(w, nvars))
        raw.append([v if rng.random() < 0.5 else -v for v in vs])
    return ClauseSet(tuple(clause(c) for c in raw)), nvars


def random_resolution(rng, cs):
    """A checked refutation from a refuter, or a random saturation that hit the empty clause."""
    if rng.random() < 0.6:
        return (cdcl_refute if rng.random() < 0.5 else dp_refute)(cs)
    steps = [ResStep("input", (m,)) for m in range(len(cs.clauses))]
    derived = list(cs.clauses)
    for _ in range(60):
        j, k = rng.randrange(len(derived)), rng.randrange(len(derived))
        pivots = [l.atom for l in derived[j] if l.positive and any(m.atom == l.atom and not m.positive for m in derived[k])]
        if not pivots:
            continue
        v = rng.choice(pivots)
        res = clause([(l.atom, l.positive) for l in derived[j] + derived[k] if l.atom != v])
        if any(l.atom == m.atom and l.positive != m.positive for l in res for m in res):
            continue
        steps.append(ResStep("res", (j, k, v), res))
        derived.append(res)
        if not res:
            return ResolutionRefutation(tuple(steps))
    return None


def mutate_resolution(rng, r, nclauses):
    steps = list(r.steps)
    i = rng.randrange(len(steps))
    s = steps[i]
    kind = rng.choice(["args", "pivot", "clause", "swap", "input"])
    if kind == "input":
        steps[i] = ResStep("input", (rng.randrange(nclauses + 1),))
    elif s.kind == "res" and kind == "args":
        steps[i] = ResStep("res", (rng.randrange(i or 1), rng.randrange(i or 1), s.args[2]), s.clause)
    elif s.kind == "res" and kind == "pivot":
        steps[i] = ResStep("res", s.args[:2] + (rng.randrange(5),), s.clause)
    elif s.kind == "res" and kind == "clause":
        steps[i] = ResStep("res", s.args, clause([rng.choice([1, -1]) * rng.randint(1, 5)]) if rng.random() < 0.5 else ())
    elif i + 1 < len(steps):
        steps[i], steps[i + 1] = steps[i + 1], steps[i]
    return ResolutionRefutation(tuple(steps))


def resolution_to_cp(cs, r):
    """Cutting-planes refutation replaying each resolution step as add, even out, divide by 2."""
    steps = []
    where = {}

    def push(op, args, line):
        steps.append(CPStep(op, args, line))
        return len(steps) - 1

    for i, s in enumerate(r.steps):
        if s.kind == "input":
            where[i] = push("INPUT", s.args, CPm.clause_to_inequality(cs.clauses[s.args[0]]))
            continue
        j, k, _ = s.args
        line = CPm.add(steps[where[j]].line, steps[where[k]].line)
        cur = push("ADD", (where[j], where[k]), line)
        # a literal in only one premise has an odd coefficient; a bound axiom doubles it
        for var, c in line.coeffs:
            if c % 2:
                ax = CPm.Inequality.make({var: 1}, 0) if c > 0 else CPm.Inequality.make({var: -1}, -1)
                a = push("AXL" if c > 0 else "AXU", (var,), ax)
                line = CPm.add(steps[cur].line, ax)
                cur = push("ADD", (cur, a), line)
        half = CPm.Inequality.make({v: c // 2 for v, c in line.coeffs}, -((-line.bound) // 2))
        where[i] = push("DIV", (cur, 2), half)
    return CPRefutation(tuple(steps))


def mutate_cp(rng, r):
    steps = list(r.steps)
    i = rng.randrange(len(steps))
    s = steps[i]
    kind = rng.choice(["bound", "coef", "op", "args", "drop_line"])
    line = s.line
    if kind == "bound" and line is not None:
        steps[i] = CPStep(s.op, s.args, CPm.Inequality.make(line.as_dict(), line.bound + rng.choice((-1, 1))))
    elif kind == "coef" and line is not None and line.coeffs:
        c = line.as_dict()
        v = rng.choice(sorted(c))
        c[v] += rng.choice((-1, 1))
        steps[i] = CPStep(s.op, s.args, CPm.Inequality.make(c, line.bound))
    elif kind == "op":
        op = rng.choice(["ADD", "MUL", "DIV"])
        args = (rng.randrange(i or 1), rng.randint(1, 3)) if op != "ADD" else (rng.randrange(i or 1), rng.randrange(i or 1))
        steps[i] = CPStep(op, args, None)
    elif kind == "args" and s.op == "ADD":
        steps[i] = CPStep("ADD", (rng.randrange(i or 1), rng.randrange(i or 1)), s.line)
    else:
        steps[i] = CPStep(s.op, s.args, None)
    return CPRefutation(tuple(steps))


def mutate_ns(rng, cert, nvars):
    """Add a random monomial to one multiplier; this changes the sum unless it cancels elsewhere."""
    g, h = list(cert.g), list(cert.h)
    m = tuple((v, 1) for v in sorted(rng.sample(range(nvars), rng.randint(0, min(2, nvars)))))
    mono = NSm.Polynomial.make({m: rng.choice((-2, -1, 1, 2))})
    if h and (not g or rng.random() < 0.4):
        v = rng.randrange(len(h))
        h[v] = h[v] + mono
    else:
        j = rng.randrange(len(g))
        g[j] = g[j] + mono
    return NSm.NSCertificate(tuple(g), tuple(h), cert.field)


def random_ns_certificate(rng, nclauses, nvars):
    def poly():
        terms = {}
        for _ in range(rng.randint(0, 2)):
            m = tuple((v, 1) for v in sorted(rng.sample(range(nvars), rng.randint(0, min(2, nvars)))))
            terms[m] = rng.choice((-1, 1, 2))
        return NSm.Polynomial.make(terms)

    return NSm.NSCertificate(tuple(poly() for _ in range(nclauses)), tuple(poly() for _ in range(nvars)))


def rng_for(seed):
    return random.Random(seed)
