"""Resolution refutation generators used as pipeline plumbing.

``cdcl_refute`` is a small conflict-driven solver that logs every learned
clause as a resolution chain (first unique implication point), so its output
is a checkable refutation.  ``dp_refute`` is Davis-Putnam variable
elimination with a cap on the number of clauses it may hold.
"""

from __future__ import annotations

from ..cnf import Clause, ClauseSet, Lit, is_tautological
from ..errors import PreconditionError, ResourceLimitError
from ..kernel.resolution import ResolutionRefutation, ResStep, prune, resolve


class _Log:
    def __init__(self, inputs: ClauseSet):
        self.inputs = inputs
        self.steps: list[ResStep] = []
        self.input_step: dict[int, int] = {}

    def input(self, m: int) -> int:
        if m not in self.input_step:
            self.steps.append(ResStep("input", (m,), self.inputs.clauses[m]))
            self.input_step[m] = len(self.steps) - 1
        return self.input_step[m]

    def res(self, j: int, k: int, pivot: int) -> int:
        c = resolve(self.steps[j].clause, self.steps[k].clause, pivot)
        self.steps.append(ResStep("res", (j, k, pivot), c))
        return len(self.steps) - 1

    def done(self) -> ResolutionRefutation:
        return prune(ResolutionRefutation(tuple(self.steps)))


def cdcl_refute(inputs: ClauseSet, max_conflicts: int = 200000) -> ResolutionRefutation:
    """Refutation of an unsatisfiable clause set; raises PreconditionError if it is satisfiable."""
    log = _Log(inputs)
    for m, c in enumerate(inputs.clauses):
        if not c:
            log.input(m)
            return log.done()
    # db entries: (clause, step id or None, input index or None)
    db: list[list] = [[c, None, m] for m, c in enumerate(inputs.clauses) if not is_tautological(c)]

    def step_of(e) -> int:
        if e[1] is None:
            e[1] = log.input(e[2])
        return e[1]

    nvars = inputs.num_atoms
    value: dict[int, bool] = {}
    level: dict[int, int] = {}
    reason: dict[int, list] = {}
    trail: list[int] = []
    lim: list[int] = []
    watches: dict[Lit, list[list]] = {}

    def watch(e):
        c = e[0]
        for l in c[:2]:
            watches.setdefault(l, []).append(e)

    def lit_val(l: Lit):
        v = value.get(l.atom)
        return None if v is None else v == l.positive

    def assign(l: Lit, why):
        value[l.atom] = l.positive
        level[l.atom] = len(lim)
        reason[l.atom] = why
        trail.append(l.atom)

    units = []
    for e in db:
        if len(e[0]) == 1:
            units.append(e)
        else:
            watch(e)
    qhead = 0

    def propagate():
        nonlocal qhead
        while qhead < len(trail):
            a = trail[qhead]
            qhead += 1
            false_lit = Lit(a, not value[a])
            ws = watches.get(false_lit, [])
            keep = []
            conflict = None
            i = 0
            while i < len(ws):
                e = ws[i]
                i += 1
                c = e[0]
                if conflict is not None:
                    keep.append(e)
                    continue
                # keep the two watched literals at the front
                if c[0] == false_lit:
                    c = e[0] = (c[1], c[0]) + c[2:]
                if lit_val(c[0]) is True:
                    keep.append(e)
                    continue
                moved = False
                for j in range(2, len(c)):
                    if lit_val(c[j]) is not False:
                        c = e[0] = (c[0], c[j]) + c[2:j] + (c[1],) + c[j + 1 :]
                        watches.setdefault(c[1], []).append(e)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(e)
                v0 = lit_val(c[0])
                if v0 is False:
                    conflict = e
                elif v0 is None:
                    assign(c[0], e)
            watches[false_lit] = keep
            if conflict is not None:
                return conflict
        return None

    def analyze(confl) -> tuple[int, Clause]:
        """Resolve the conflict back to the first unique implication point."""
        cur = step_of(confl)
        cl = set(log.steps[cur].clause)
        lv = len(lim)
        pos = {a: i for i, a in enumerate(trail)}
        while True:
            at_level = [l for l in cl if level[l.atom] == lv]
            if lv > 0 and len(at_level) <= 1:
                return cur, tuple(sorted(cl))
            if lv == 0 and not cl:
                return cur, ()
            cand = at_level if lv > 0 else list(cl)
            l = max(cand, key=lambda x: pos[x.atom])
            r = reason[l.atom]
            if r is None:
                raise AssertionError("decision literal reached during analysis")
            rs = step_of(r)
            a = l.atom
            cur = log.res(rs, cur, a) if value[a] else log.res(cur, rs, a)
            cl = set(log.steps[cur].clause)

    def backjump(to: int):
        nonlocal qhead
        while len(lim) > to:
            start = lim.pop()
            for a in trail[start:]:
                del value[a], level[a], reason[a]
            del trail[start:]
        qhead = min(qhead, len(trail))

    for e in units:
        l = e[0][0]
        v = lit_val(l)
        if v is False:
            # two contradictory unit inputs
            other = reason[l.atom]
            j, k = step_of(e), step_of(other)
            if l.positive:
                log.res(j, k, l.atom)
            else:
                log.res(k, j, l.atom)
            return log.done()
        if v is None:
            assign(l, e)

    conflicts = 0
    order = list(range(nvars))
    while True:
        confl = propagate()
        if confl is not None:
            conflicts += 1
            if conflicts > max_conflicts:
                raise ResourceLimitError(f"no refutation within {max_conflicts} conflicts")
            if not lim:
                analyze(confl)
                return log.done()
            sid, learned = analyze(confl)
            if not learned:
                return log.done()
            lv = len(lim)
            levels = sorted({level[l.atom] for l in learned if level[l.atom] != lv}, reverse=True)
            back = levels[0] if levels else 0
            backjump(back)
            uip = next(l for l in learned if l.atom not in value)
            rest = [l for l in learned if l != uip]
            ordered = (uip,) + tuple(sorted(rest, key=lambda l: -level[l.atom]))
            e = [ordered, sid, None]
            db.append(e)
            if len(ordered) > 1:
                watch(e)
            assign(uip, e)
            continue
        free = next((a for a in order if a not in value), None)
        if free is None:
            raise PreconditionError("clause set is satisfiable")
        lim.append(len(trail))
        assign(Lit(free, False), None)


def dp_refute(inputs: ClauseSet, max_clauses: int = 20000) -> ResolutionRefutation:
    """Davis-Putnam elimination; raises ResourceLimitError past ``max_clauses`` live clauses."""
    log = _Log(inputs)
    live: dict[Clause, int] = {}
    where: dict[Clause, int] = {}
    for m, c in enumerate(inputs.clauses):
        if is_tautological(c):
            continue
        if c not in live:
            live[c] = where[c] = log.input(m)
        if not c:
            return log.done()
    for a in inputs.atoms():
        pos = [c for c in live if Lit(a, True) in c]
        neg = [c for c in live if Lit(a, False) in c]
        for c in pos + neg:
            del live[c]
        for cp in pos:
            for cn in neg:
                r = resolve(cp, cn, a)
                if is_tautological(r) or r in live:
                    continue
                if r in where:
                    live[r] = where[r]
                    continue
                live[r] = where[r] = log.res(where[cp], where[cn], a)
                if not r:
                    return log.done()
                if len(live) > max_clauses:
                    raise ResourceLimitError(f"Davis-Putnam exceeded {max_clauses} clauses")
    raise PreconditionError("clause set is satisfiable")

