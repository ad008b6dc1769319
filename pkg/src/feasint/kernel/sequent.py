"""Sequent proofs as indexed node lists and the rule-table checker.

Position convention.  Every logical and structural rule names the position of
its principal formula in the conclusion: an antecedent index for left rules and
a succedent index for right rules.  Active formulas of the premises sit at that
same position, except where the displayed rule places a formula at a side:

* ``Rimp`` / ``Rnot`` append the moved formula at the end of the antecedent;
* ``Limp`` / ``Lnot`` prepend the moved formula to the succedent;
* ``cut`` is positional as displayed: Gamma => phi, Delta and Gamma, phi => Delta.

Exchange rules are explicit (``Le i`` swaps positions i and i+1), so checking is
purely local: every premise is recomputed from the conclusion and compared
formula by formula.  Weakening deletes position i from the premise side and
contraction duplicates position i.

A node may be the premise of several later nodes, so a proof is a DAG; its
size counts each node once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .. import formula as F
from ..errors import ParseError, PreconditionError
from ..formula import Formula, Sequent

Index = "int | tuple[int, int] | None"


@dataclass(frozen=True, slots=True)
class ProofNode:
    sequent: Sequent
    rule: str
    index: object = None
    premises: tuple[int, ...] = ()


@dataclass(frozen=True)
class SequentProof:
    calculus: str
    nodes: tuple[ProofNode, ...]
    depth_cap: int | None = None

    @property
    def root(self) -> ProofNode:
        return self.nodes[-1]

    @property
    def conclusion(self) -> Sequent:
        return self.nodes[-1].sequent

    def size(self) -> int:
        """Total symbol count over all node sequents."""
        return sum(n.sequent.size() for n in self.nodes)

    @property
    def cut_free(self) -> bool:
        return all(n.rule != "cut" for n in self.nodes)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    step: int | None = None
    rule: str | None = None
    reason: str = ""
    size: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"ACCEPT size={self.size}"
        at = "" if self.step is None else f"step={self.step} "
        return f"REJECT {at}rule={self.rule}: {self.reason}"


# ------------------------------------------------------------ tuple helpers

def _rm(t: tuple, i: int) -> tuple:
    return t[:i] + t[i + 1 :]


def _put(t: tuple, i: int, x) -> tuple:
    return t[:i] + (x,) + t[i + 1 :]


def _ins(t: tuple, i: int, x) -> tuple:
    return t[:i] + (x,) + t[i:]


def _swap(t: tuple, i: int) -> tuple:
    return t[:i] + (t[i + 1], t[i]) + t[i + 2 :]


def _same(a: Sequent, ante: tuple, succ: tuple) -> bool:
    return a.ante == ante and a.succ == succ


def _show(s: Sequent) -> str:
    return s.text


class _Fail(Exception):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise _Fail(msg)


def _pos(t: tuple, i, what: str) -> Formula:
    _need(isinstance(i, int) and 0 <= i < len(t), f"{what} index {i!r} out of range")
    return t[i]


def _kind(f: Formula, kind: str, what: str) -> Formula:
    _need(f.kind == kind, f"{what} must be a {kind} formula, found {f.text}")
    return f


def _prem_count(prem: Sequence[Sequent], n: int) -> None:
    _need(len(prem) == n, f"expected {n} premise(s), found {len(prem)}")


def _expect(p: Sequent, ante: tuple, succ: tuple, which: str = "premise") -> None:
    if not _same(p, ante, succ):
        want = Sequent(ante, succ)
        raise _Fail(f"{which} should be [{_show(want)}], found [{_show(p)}]")


# ----------------------------------------------------------------- axioms

def _ax(c, i, prem, ctx):
    _prem_count(prem, 0)
    _need(len(c.ante) == 1 and len(c.succ) == 1 and c.ante[0] is c.succ[0], "identity axiom must be phi => phi")


def _ax_atom(c, i, prem, ctx):
    _ax(c, i, prem, ctx)
    _need(c.ante[0].kind == F.ATOM, "identity axiom of this calculus is for atoms only")


def _is_negated_atom(f: Formula) -> bool:
    return f.kind == F.NOT and f.child.kind == F.ATOM


def _ax_lit(c, i, prem, ctx):
    _ax(c, i, prem, ctx)
    _need(_is_negated_atom(c.ante[0]), "literal identity axiom must be not p => not p")


def _ax_lnot(c, i, prem, ctx):
    _prem_count(prem, 0)
    _need(
        len(c.ante) == 2 and not c.succ and c.ante[0].kind == F.ATOM and c.ante[1] is F.neg(c.ante[0]),
        "axiom must be p, not p =>",
    )


def _ax_rnot(c, i, prem, ctx):
    _prem_count(prem, 0)
    _need(
        len(c.succ) == 2 and not c.ante and c.succ[0].kind == F.ATOM and c.succ[1] is F.neg(c.succ[0]),
        "axiom must be => p, not p",
    )


def _const_axiom(ante: tuple, succ: tuple, text: str):
    def check(c, i, prem, ctx):
        _prem_count(prem, 0)
        _need(c.ante == ante and c.succ == succ, f"axiom must be {text}")

    return check


_ax_bot = _const_axiom((F.FALSE,), (), "false =>")
_ax_top = _const_axiom((), (F.TRUE,), "=> true")
_ax_ntop = _const_axiom((F.neg(F.TRUE),), (), "not true =>")
_ax_nbot = _const_axiom((), (F.neg(F.FALSE),), "=> not false")


# ------------------------------------------------------------- structural

def _le(c, i, prem, ctx):
    _prem_count(prem, 1)
    _need(isinstance(i, int) and 0 <= i < len(c.ante) - 1, "exchange index out of range")
    _expect(prem[0], _swap(c.ante, i), c.succ)


def _re(c, i, prem, ctx):
    _prem_count(prem, 1)
    _need(isinstance(i, int) and 0 <= i < len(c.succ) - 1, "exchange index out of range")
    _expect(prem[0], c.ante, _swap(c.succ, i))


def _lw(c, i, prem, ctx):
    _prem_count(prem, 1)
    _pos(c.ante, i, "weakening")
    _expect(prem[0], _rm(c.ante, i), c.succ)


def _rw(c, i, prem, ctx):
    _prem_count(prem, 1)
    _pos(c.succ, i, "weakening")
    _expect(prem[0], c.ante, _rm(c.succ, i))


def _lc(c, i, prem, ctx):
    _prem_count(prem, 1)
    f = _pos(c.ante, i, "contraction")
    _expect(prem[0], _ins(c.ante, i, f), c.succ)


def _rc(c, i, prem, ctx):
    _prem_count(prem, 1)
    f = _pos(c.succ, i, "contraction")
    _expect(prem[0], c.ante, _ins(c.succ, i, f))


def _cut(c, i, prem, ctx):
    _prem_count(prem, 2)
    p1, p2 = prem
    _need(len(p1.succ) >= 1, "left cut premise has an empty succedent")
    phi = p1.succ[0]
    if ctx.single:
        _expect(p1, c.ante, (phi,), "left premise")
    else:
        _expect(p1, c.ante, (phi,) + c.succ, "left premise")
    _expect(p2, c.ante + (phi,), c.succ, "right premise")


# ----------------------------------------------------------- propositional

def _land(side: int):
    def check(c, i, prem, ctx):
        _prem_count(prem, 1)
        f = _kind(_pos(c.ante, i, "principal"), F.AND, "principal")
        _expect(prem[0], _put(c.ante, i, f.children[side]), c.succ)

    return check


def _rand(c, i, prem, ctx):
    _prem_count(prem, 2)
    f = _kind(_pos(c.succ, i, "principal"), F.AND, "principal")
    _expect(prem[0], c.ante, _put(c.succ, i, f.left), "left premise")
    _expect(prem[1], c.ante, _put(c.succ, i, f.right), "right premise")


def _lor(c, i, prem, ctx):
    _prem_count(prem, 2)
    f = _kind(_pos(c.ante, i, "principal"), F.OR, "principal")
    _expect(prem[0], _put(c.ante, i, f.left), c.succ, "left premise")
    _expect(prem[1], _put(c.ante, i, f.right), c.succ, "right premise")


def _ror(side: int):
    def check(c, i, prem, ctx):
        _prem_count(prem, 1)
        f = _kind(_pos(c.succ, i, "principal"), F.OR, "principal")
        _expect(prem[0], c.ante, _put(c.succ, i, f.children[side]))

    return check


def _limp(c, i, prem, ctx):
    _prem_count(prem, 2)
    f = _kind(_pos(c.ante, i, "principal"), F.IMP, "principal")
    rest = _rm(c.ante, i)
    if ctx.single:
        _expect(prem[0], rest, (f.left,), "left premise")
    else:
        _expect(prem[0], rest, (f.left,) + c.succ, "left premise")
    _expect(prem[1], _put(c.ante, i, f.right), c.succ, "right premise")


def _rimp(c, i, prem, ctx):
    _prem_count(prem, 1)
    f = _kind(_pos(c.succ, i, "principal"), F.IMP, "principal")
    _expect(prem[0], c.ante + (f.left,), _put(c.succ, i, f.right))


# ---------------------------------------------------------- big connectives

def _big_index(i) -> tuple[int, int]:
    _need(isinstance(i, tuple) and len(i) == 2, "rule needs an index of the form position/child")
    return i


def _lbigand(c, i, prem, ctx):
    _prem_count(prem, 1)
    pos, a = _big_index(i)
    f = _kind(_pos(c.ante, pos, "principal"), F.BIGAND, "principal")
    _need(0 <= a < len(f.children), "child index out of range")
    _expect(prem[0], _put(c.ante, pos, f.children[a]), c.succ)


def _rbigor(c, i, prem, ctx):
    _prem_count(prem, 1)
    pos, a = _big_index(i)
    f = _kind(_pos(c.succ, pos, "principal"), F.BIGOR, "principal")
    _need(0 <= a < len(f.children), "child index out of range")
    _expect(prem[0], c.ante, _put(c.succ, pos, f.children[a]))


def _rbigand(c, i, prem, ctx):
    f = _kind(_pos(c.succ, i, "principal"), F.BIGAND, "principal")
    _prem_count(prem, len(f.children))
    for j, (p, g) in enumerate(zip(prem, f.children)):
        _expect(p, c.ante, _put(c.succ, i, g), f"premise {j}")


def _lbigor(c, i, prem, ctx):
    f = _kind(_pos(c.ante, i, "principal"), F.BIGOR, "principal")
    _prem_count(prem, len(f.children))
    for j, (p, g) in enumerate(zip(prem, f.children)):
        _expect(p, _put(c.ante, i, g), c.succ, f"premise {j}")


def _lnot(c, i, prem, ctx):
    _prem_count(prem, 1)
    f = _kind(_pos(c.ante, i, "principal"), F.NOT, "principal")
    _expect(prem[0], _rm(c.ante, i), (f.child,) + c.succ)


def _rnot(c, i, prem, ctx):
    _prem_count(prem, 1)
    f = _kind(_pos(c.succ, i, "principal"), F.NOT, "principal")
    _expect(prem[0], c.ante + (f.child,), _rm(c.succ, i))


# ------------------------------------------------------------------- modal

def _unbox_all(t: tuple, what: str) -> tuple:
    for f in t:
        _need(f.kind == F.BOX, f"every {what} formula must be boxed, found {f.text}")
    return tuple(f.child for f in t)


def _boxed_goal(c: Sequent) -> Formula:
    _need(len(c.succ) == 1, "conclusion must have exactly one succedent formula")
    return _kind(c.succ[0], F.BOX, "succedent")


def _m_k(c, i, prem, ctx):
    _prem_count(prem, 1)
    g = _unbox_all(c.ante, "antecedent")
    phi = _boxed_goal(c).child
    _expect(prem[0], g, (phi,))


def _m_d(c, i, prem, ctx):
    _prem_count(prem, 1)
    _need(len(c.succ) <= 1, "succedent may contain at most one formula")
    _expect(prem[0], _unbox_all(c.ante, "antecedent"), _unbox_all(c.succ, "succedent"))


def _m_k4(c, i, prem, ctx):
    _prem_count(prem, 1)
    g = _unbox_all(c.ante, "antecedent")
    phi = _boxed_goal(c).child
    _expect(prem[0], c.ante + g, (phi,))


def _m_kd4(c, i, prem, ctx):
    _prem_count(prem, 1)
    _need(len(c.succ) <= 1, "succedent may contain at most one formula")
    g = _unbox_all(c.ante, "antecedent")
    _expect(prem[0], c.ante + g, _unbox_all(c.succ, "succedent"))


def _m_ls4(c, i, prem, ctx):
    _prem_count(prem, 1)
    f = _kind(_pos(c.ante, i, "principal"), F.BOX, "principal")
    _expect(prem[0], _put(c.ante, i, f.child), c.succ)


def _m_rs4(c, i, prem, ctx):
    _prem_count(prem, 1)
    _unbox_all(c.ante, "antecedent")
    phi = _boxed_goal(c).child
    _expect(prem[0], c.ante, (phi,))


def _m_gl(c, i, prem, ctx):
    _prem_count(prem, 1)
    g = _unbox_all(c.ante, "antecedent")
    goal = _boxed_goal(c)
    _expect(prem[0], c.ante + g + (goal,), (goal.child,))


RULES: dict[str, Callable] = {
    "ax": _ax,
    "ax_atom": _ax_atom,
    "ax_lit": _ax_lit,
    "ax_lnot": _ax_lnot,
    "ax_rnot": _ax_rnot,
    "ax_bot": _ax_bot,
    "ax_top": _ax_top,
    "ax_ntop": _ax_ntop,
    "ax_nbot": _ax_nbot,
    "Le": _le,
    "Re": _re,
    "Lw": _lw,
    "Rw": _rw,
    "Lc": _lc,
    "Rc": _rc,
    "cut": _cut,
    "Land1": _land(0),
    "Land2": _land(1),
    "Rand": _rand,
    "Lor": _lor,
    "Ror1": _ror(0),
    "Ror2": _ror(1),
    "Limp": _limp,
    "Rimp": _rimp,
    "LbigAnd": _lbigand,
    "RbigAnd": _rbigand,
    "LbigOr": _lbigor,
    "RbigOr": _rbigor,
    "Lnot": _lnot,
    "Rnot": _rnot,
    "K": _m_k,
    "D": _m_d,
    "K4": _m_k4,
    "KD4": _m_kd4,
    "LS4": _m_ls4,
    "RS4": _m_rs4,
    "GL": _m_gl,
}

_STRUCT = {"Le", "Re", "Lw", "Rw", "Lc", "Rc"}
_PROP = {"ax", "ax_bot", "ax_top", "Land1", "Land2", "Rand", "Lor", "Ror1", "Ror2", "Limp", "Rimp"}
_NNF = {"ax_atom", "ax_lit", "ax_lnot", "ax_rnot", "ax_bot", "ax_top", "ax_ntop", "ax_nbot",
        "Land1", "Land2", "Rand", "Lor", "Ror1", "Ror2"}
_BIG = {"ax", "ax_bot", "ax_top", "LbigAnd", "RbigAnd", "LbigOr", "RbigOr", "Lnot", "Rnot"}
_MODAL = {"K": {"K"}, "D": {"D"}, "KT": {"K", "LS4"}, "K4": {"K4"}, "KD4": {"KD4"},
          "S4": {"LS4", "RS4"}, "GL": {"GL"}}


@dataclass(frozen=True)
class Calculus:
    name: str
    rules: frozenset[str]
    language: str
    single: bool = False
    nnf: bool = False
    depth_bounded: bool = False


def _calc(name, rules, language, **kw) -> Calculus:
    return Calculus(name, frozenset(rules), language, **kw)


CALCULI: dict[str, Calculus] = {
    "LK": _calc("LK", _STRUCT | _PROP | {"cut"}, "Lp"),
    "LK-": _calc("LK-", _STRUCT | _PROP, "Lp"),
    "LK_n": _calc("LK_n", _STRUCT | _NNF | {"cut"}, "Lb", nnf=True),
    "LK_n-": _calc("LK_n-", _STRUCT | _NNF, "Lb", nnf=True),
    "LK_d": _calc("LK_d", _STRUCT | _BIG | {"cut"}, "Lbu", depth_bounded=True),
    "LJ": _calc("LJ", (_STRUCT - {"Re", "Rc"}) | _PROP | {"cut"}, "Lp", single=True),
}
for _name, _extra in _MODAL.items():
    CALCULI[_name] = _calc(_name, _STRUCT | _PROP | {"cut"} | _extra, "Lbox")


def calculus(name: str) -> Calculus:
    try:
        return CALCULI[name]
    except KeyError:
        raise PreconditionError(f"unknown calculus {name!r}") from None


def _formula_ok(f: Formula, calc: Calculus, depth_cap: int | None) -> str | None:
    if not F.in_language(f, calc.language):
        return f"formula {f.text} is outside the language {calc.language}"
    if calc.nnf and not F.is_nnf(f):
        return f"formula {f.text} is not in negation normal form"
    if calc.depth_bounded and depth_cap is not None and F.depth(f) > depth_cap:
        return f"formula {f.text} exceeds depth {depth_cap}"
    return None


def check_step(calc_name: str, node: ProofNode, premises: Sequence[Sequent], depth_cap: int | None = None) -> str | None:
    """Check one inference; returns None when legal, else the reason."""
    if node.rule not in RULES:
        raise PreconditionError(f"unknown rule name {node.rule!r}")
    calc = calculus(calc_name)
    if node.rule not in calc.rules:
        return f"rule {node.rule} does not belong to calculus {calc.name}"
    seqs = [node.sequent, *premises]
    for s in seqs:
        if calc.single and len(s.succ) > 1:
            return "sequent is not single-conclusion"
        for f in s.ante + s.succ:
            why = _formula_ok(f, calc, depth_cap)
            if why:
                return why
    try:
        RULES[node.rule](node.sequent, node.index, list(premises), calc)
    except _Fail as e:
        return str(e)
    return None


def check_sequent_proof(p: SequentProof) -> Verdict:
    calc = calculus(p.calculus)
    if calc.depth_bounded and p.depth_cap is None:
        raise PreconditionError("LK_d proofs need a depth cap")
    if not p.nodes:
        return Verdict(False, None, None, "empty proof")
    for k, node in enumerate(p.nodes):
        if node.rule not in RULES:
            raise PreconditionError(f"unknown rule name {node.rule!r} at node {k}")
    seen_ok: dict[int, bool] = {}
    for k, node in enumerate(p.nodes):
        if any(not 0 <= j < k for j in node.premises):
            return Verdict(False, k, node.rule, "premises must refer to earlier nodes")
        why = check_step(p.calculus, node, [p.nodes[j].sequent for j in node.premises], p.depth_cap)
        if why:
            return Verdict(False, k, node.rule, why)
        seen_ok[k] = True
    return Verdict(True, size=p.size())


# ------------------------------------------------------------------ builder

class ProofBuilder:
    """Append-only node list with helpers that insert structural steps."""

    def __init__(self, calculus_name: str, single: bool = False):
        self.calculus = calculus_name
        self.single = single
        self.nodes: list[ProofNode] = []

    def add(self, ante: Iterable[Formula], succ: Iterable[Formula], rule: str, index=None, premises: Iterable[int] = ()) -> int:
        self.nodes.append(ProofNode(Sequent(tuple(ante), tuple(succ), self.single), rule, index, tuple(premises)))
        return len(self.nodes) - 1

    def seq(self, k: int) -> Sequent:
        return self.nodes[k].sequent

    def build(self, root: int | None = None, depth_cap: int | None = None) -> SequentProof:
        nodes = self.nodes
        if root is not None and root != len(nodes) - 1:
            nodes = _extract(nodes, root)
        return SequentProof(self.calculus, tuple(nodes), depth_cap)

    def _side(self, k: int, target: tuple, left: bool) -> int:
        letter = "L" if left else "R"

        def get(s: Sequent) -> tuple:
            return s.ante if left else s.succ

        def mk(s: Sequent, new: tuple) -> tuple[tuple, tuple]:
            return (new, s.succ) if left else (s.ante, new)

        cur = list(get(self.seq(k)))
        need: dict[int, int] = {}
        for f in target:
            need[id(f)] = need.get(id(f), 0) + 1
        # contract surplus copies
        while True:
            counts: dict[int, list[int]] = {}
            for pos, f in enumerate(cur):
                counts.setdefault(id(f), []).append(pos)
            surplus = next((ps for fid, ps in counts.items() if len(ps) > need.get(fid, 0)), None)
            if surplus is None:
                break
            if len(surplus) < 2 and need.get(id(cur[surplus[0]]), 0) == 0:
                raise PreconditionError(f"{cur[surplus[0]].text} cannot be embedded into the target")
            a, b = surplus[0], surplus[1]
            while b > a + 1:
                cur[b - 1], cur[b] = cur[b], cur[b - 1]
                s = self.seq(k)
                k = self.add(*mk(s, tuple(cur)), f"{letter}e", b - 1, [k])
                b -= 1
            del cur[a + 1]
            s = self.seq(k)
            k = self.add(*mk(s, tuple(cur)), f"{letter}c", a, [k])
        # match occurrences in order
        slots: dict[int, list[int]] = {}
        for pos, f in enumerate(target):
            slots.setdefault(id(f), []).append(pos)
        used: dict[int, int] = {}
        tpos = []
        for f in cur:
            j = used.get(id(f), 0)
            if j >= len(slots.get(id(f), ())):
                raise PreconditionError(f"{f.text} cannot be embedded into the target")
            tpos.append(slots[id(f)][j])
            used[id(f)] = j + 1
        # bubble sort by target position using exchanges
        changed = True
        while changed:
            changed = False
            for j in range(len(cur) - 1):
                if tpos[j] > tpos[j + 1]:
                    tpos[j], tpos[j + 1] = tpos[j + 1], tpos[j]
                    cur[j], cur[j + 1] = cur[j + 1], cur[j]
                    s = self.seq(k)
                    k = self.add(*mk(s, tuple(cur)), f"{letter}e", j, [k])
                    changed = True
        present = set(tpos)
        for pos, f in enumerate(target):
            if pos in present:
                continue
            cur.insert(pos, f)
            s = self.seq(k)
            k = self.add(*mk(s, tuple(cur)), f"{letter}w", pos, [k])
        return k

    def embed(self, k: int, ante: Sequence[Formula], succ: Sequence[Formula]) -> int:
        """Derive exactly ``ante => succ`` from node k by contraction, exchange and weakening."""
        k = self._side(k, tuple(ante), True)
        return self._side(k, tuple(succ), False)


def _extract(nodes: Sequence[ProofNode], root: int) -> list[ProofNode]:
    """Sub-DAG below ``root`` renumbered densely in the original order."""
    keep = set()
    stack = [root]
    while stack:
        k = stack.pop()
        if k in keep:
            continue
        keep.add(k)
        stack.extend(nodes[k].premises)
    order = sorted(keep)
    renum = {old: new for new, old in enumerate(order)}
    return [
        ProofNode(nodes[k].sequent, nodes[k].rule, nodes[k].index, tuple(renum[j] for j in nodes[k].premises))
        for k in order
    ]


def subproof(p: SequentProof, root: int) -> SequentProof:
    return SequentProof(p.calculus, tuple(_extract(p.nodes, root)), p.depth_cap)


# --------------------------------------------------------------- script text

def _index_text(i) -> str:
    if i is None:
        return "-"
    if isinstance(i, tuple):
        return f"{i[0]}/{i[1]}"
    return str(i)


def _parse_index(tok: str):
    if tok == "-":
        return None
    try:
        if "/" in tok:
            a, b = tok.split("/", 1)
            return (int(a), int(b))
        return int(tok)
    except ValueError:
        raise ParseError(f"bad index {tok!r}") from None


def proof_to_text(p: SequentProof) -> str:
    lines = [f"calculus {p.calculus}"]
    if p.depth_cap is not None:
        lines.append(f"depth {p.depth_cap}")
    for k, n in enumerate(p.nodes):
        prem = ",".join(str(j) for j in n.premises) or "-"
        lines.append(f"{k} {n.rule} {_index_text(n.index)} {prem} : {n.sequent.text}")
    return "\n".join(lines) + "\n"


def proof_from_text(text: str) -> SequentProof:
    calc = None
    depth_cap = None
    nodes: list[ProofNode] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("calculus "):
            calc = line.split(None, 1)[1].strip()
            continue
        if line.startswith("depth "):
            depth_cap = int(line.split(None, 1)[1])
            continue
        if " : " not in line and not line.endswith(" :"):
            raise ParseError(f"line {lineno}: expected '<id> <rule> <index> <premises> : <sequent>'")
        head, body = line.split(" :", 1)
        parts = head.split()
        if len(parts) != 4:
            raise ParseError(f"line {lineno}: expected four fields before ':'")
        if parts[0] != str(len(nodes)):
            raise ParseError(f"line {lineno}: expected node id {len(nodes)}")
        prem = () if parts[3] == "-" else tuple(int(x) for x in parts[3].split(","))
        try:
            s = F.parse_sequent(body)
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
        calc_single = calc is not None and calc in CALCULI and CALCULI[calc].single
        nodes.append(ProofNode(Sequent(s.ante, s.succ, calc_single and len(s.succ) <= 1), parts[1], _parse_index(parts[2]), prem))
    if calc is None:
        raise ParseError("missing 'calculus' line")
    return SequentProof(calc, tuple(nodes), depth_cap)
