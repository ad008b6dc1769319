"""Multi-output circuits over typed binary gates.

Text format, one record per line::

    inputs: 2
    g0 x1
    g1 x2
    g2 AND 0 1
    outputs: 2

Inputs are numbered from 1 in the text (``x1``) and from 0 in the API.
Gate ids are dense and every predecessor id is smaller than its gate id, which
is how acyclicity is validated on read.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import formula as F
from . import semantics
from .errors import LanguageError, ParseError, PreconditionError

IN, TOP, BOT, NOT, AND, OR, IMP, BOX = "IN", "TOP", "BOT", "NOT", "AND", "OR", "IMP", "BOX"
ARITY = {IN: 0, TOP: 0, BOT: 0, NOT: 1, BOX: 1, AND: 2, OR: 2, IMP: 2}


@dataclass(frozen=True, slots=True)
class Gate:
    kind: str
    preds: tuple[int, ...] = ()
    index: int = -1  # input number for IN gates


@dataclass(frozen=True)
class Circuit:
    n_inputs: int
    gates: tuple[Gate, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        for gid, g in enumerate(self.gates):
            if g.kind not in ARITY:
                raise PreconditionError(f"gate {gid}: unknown type {g.kind}")
            if len(g.preds) != ARITY[g.kind]:
                raise PreconditionError(f"gate {gid}: {g.kind} needs {ARITY[g.kind]} predecessor(s)")
            if any(not 0 <= p < gid for p in g.preds):
                raise PreconditionError(f"gate {gid}: predecessors must precede the gate")
            if g.kind == IN and not 0 <= g.index < self.n_inputs:
                raise PreconditionError(f"gate {gid}: input index out of range")
        if any(not 0 <= o < len(self.gates) for o in self.outputs):
            raise PreconditionError("output id does not name a gate")

    @property
    def size(self) -> int:
        return len(self.gates)

    def count(self, *kinds: str) -> int:
        return sum(1 for g in self.gates if g.kind in kinds)

    @property
    def monotone(self) -> bool:
        return self.count(NOT, IMP) == 0

    @property
    def modal(self) -> bool:
        return self.count(BOX) > 0

    # ------------------------------------------------------------ evaluation

    def evaluate(self, w: Sequence[int]) -> tuple[int, ...]:
        if len(w) != self.n_inputs:
            raise PreconditionError(f"expected {self.n_inputs} input bits, got {len(w)}")
        vals = self.run([1 if b else 0 for b in w], 1)
        return tuple(vals[o] for o in self.outputs)

    def run(self, inputs: Sequence[int], mask: int) -> list[int]:
        """Evaluate every gate with bitset semantics; ``inputs`` are input tables."""
        vals: list[int] = []
        for g in self.gates:
            k = g.kind
            if k == IN:
                v = inputs[g.index]
            elif k == TOP:
                v = mask
            elif k == BOT:
                v = 0
            elif k == NOT:
                v = mask ^ vals[g.preds[0]]
            elif k == AND:
                v = vals[g.preds[0]] & vals[g.preds[1]]
            elif k == OR:
                v = vals[g.preds[0]] | vals[g.preds[1]]
            elif k == IMP:
                v = (mask ^ vals[g.preds[0]]) | vals[g.preds[1]]
            else:
                raise LanguageError("box gate in classical circuit evaluation")
            vals.append(v)
        return vals

    def output_tables(self, inputs: Sequence[int], mask: int) -> tuple[int, ...]:
        vals = self.run(inputs, mask)
        return tuple(vals[o] for o in self.outputs)

    def truth_table(self, output: int = 0) -> int:
        """Table of one output over all 2^n inputs (row r sets x_{j+1} to bit j of r)."""
        semantics.check_cap(self.n_inputs)
        cols = semantics.columns(self.n_inputs)
        return self.output_tables(cols, semantics.full_mask(self.n_inputs))[output]

    # ------------------------------------------------------------- formulas

    def unfold(self, input_formulas: Sequence[F.Formula] | None = None) -> F.Formula:
        """[C]: the formula obtained by duplicating shared gates."""
        if len(self.outputs) != 1:
            raise PreconditionError("unfold needs a single-output circuit")
        return self.unfold_output(0, input_formulas)

    def unfold_output(self, k: int, input_formulas: Sequence[F.Formula] | None = None) -> F.Formula:
        if input_formulas is None:
            input_formulas = [F.atom(i) for i in range(self.n_inputs)]
        forms: list[F.Formula] = []
        for g in self.gates:
            p = [forms[i] for i in g.preds]
            if g.kind == IN:
                forms.append(input_formulas[g.index])
            elif g.kind == TOP:
                forms.append(F.TRUE)
            elif g.kind == BOT:
                forms.append(F.FALSE)
            elif g.kind == NOT:
                forms.append(F.neg(p[0]))
            elif g.kind == AND:
                forms.append(F.conj(p[0], p[1]))
            elif g.kind == OR:
                forms.append(F.disj(p[0], p[1]))
            elif g.kind == IMP:
                forms.append(F.imp(p[0], p[1]))
            else:
                forms.append(F.box(p[0]))
        return forms[self.outputs[k]]

    def output(self, k: int) -> "Circuit":
        """Single-output view sharing the gate list."""
        return Circuit(self.n_inputs, self.gates, (self.outputs[k],))

    # ------------------------------------------------------------ projections

    def forgetful(self) -> "Circuit":
        """C^f: erase box gates and continue their incoming edge."""
        remap: dict[int, int] = {}
        gates: list[Gate] = []
        for gid, g in enumerate(self.gates):
            if g.kind == BOX:
                remap[gid] = remap[g.preds[0]]
                continue
            remap[gid] = len(gates)
            gates.append(Gate(g.kind, tuple(remap[p] for p in g.preds), g.index))
        return Circuit(self.n_inputs, tuple(gates), tuple(remap[o] for o in self.outputs))

    def collapse(self) -> "Circuit":
        """C^c: replace each box gate by a constant true gate."""
        gates = tuple(Gate(TOP) if g.kind == BOX else g for g in self.gates)
        return Circuit(self.n_inputs, gates, self.outputs)

    # ------------------------------------------------------------------ text

    def to_text(self) -> str:
        lines = [f"inputs: {self.n_inputs}"]
        for gid, g in enumerate(self.gates):
            if g.kind == IN:
                lines.append(f"g{gid} x{g.index + 1}")
            else:
                lines.append(" ".join([f"g{gid}", g.kind, *(str(p) for p in g.preds)]))
        lines.append("outputs: " + " ".join(str(o) for o in self.outputs))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Circuit":
        lines = [l.strip() for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
        if not lines or not lines[0].startswith("inputs:"):
            raise ParseError("circuit text must start with 'inputs: <n>'")
        if not lines[-1].startswith("outputs:"):
            raise ParseError("circuit text must end with 'outputs: <ids>'")
        try:
            n = int(lines[0].split(":", 1)[1])
            outputs = tuple(int(x) for x in lines[-1].split(":", 1)[1].split())
        except ValueError:
            raise ParseError("bad inputs/outputs line") from None
        gates = []
        for lineno, line in enumerate(lines[1:-1], 2):
            parts = line.split()
            if parts[0] != f"g{len(gates)}":
                raise ParseError(f"line {lineno}: expected gate id g{len(gates)}")
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: missing gate type")
            kind = parts[1]
            if kind.startswith("x") and kind[1:].isdigit():
                gates.append(Gate(IN, (), int(kind[1:]) - 1))
                continue
            if kind not in ARITY or kind == IN:
                raise ParseError(f"line {lineno}: unknown gate type {kind}")
            try:
                preds = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise ParseError(f"line {lineno}: bad predecessor id") from None
            gates.append(Gate(kind, preds))
        try:
            return Circuit(n, tuple(gates), outputs)
        except PreconditionError as e:
            raise ParseError(str(e)) from None


class Builder:
    """Incremental circuit construction with structural hashing.

    Identical gates are shared.  With ``fold`` set, constants are absorbed
    and ``a AND a`` / ``a OR a`` collapse to ``a``; nothing else is rewritten.
    """

    def __init__(self, n_inputs: int, fold: bool = True):
        self.n_inputs = n_inputs
        self.fold = fold
        self.gates: list[Gate] = []
        self._index: dict[Gate, int] = {}
        self._inputs = [self._add(Gate(IN, (), i)) for i in range(n_inputs)]

    def _add(self, g: Gate) -> int:
        gid = self._index.get(g)
        if gid is None:
            gid = len(self.gates)
            self.gates.append(g)
            self._index[g] = gid
        return gid

    def kind(self, gid: int) -> str:
        return self.gates[gid].kind

    def input(self, i: int) -> int:
        return self._inputs[i]

    def top(self) -> int:
        return self._add(Gate(TOP))

    def bot(self) -> int:
        return self._add(Gate(BOT))

    def neg(self, a: int) -> int:
        if self.fold:
            if self.kind(a) == TOP:
                return self.bot()
            if self.kind(a) == BOT:
                return self.top()
        return self._add(Gate(NOT, (a,)))

    def box(self, a: int) -> int:
        return self._add(Gate(BOX, (a,)))

    def and_(self, a: int, b: int) -> int:
        if self.fold:
            if BOT in (self.kind(a), self.kind(b)):
                return self.bot()
            if self.kind(a) == TOP:
                return b
            if self.kind(b) == TOP or a == b:
                return a
        return self._add(Gate(AND, (a, b)))

    def or_(self, a: int, b: int) -> int:
        if self.fold:
            if TOP in (self.kind(a), self.kind(b)):
                return self.top()
            if self.kind(a) == BOT:
                return b
            if self.kind(b) == BOT or a == b:
                return a
        return self._add(Gate(OR, (a, b)))

    def imp(self, a: int, b: int) -> int:
        if self.fold:
            if self.kind(a) == BOT or self.kind(b) == TOP:
                return self.top()
            if self.kind(a) == TOP:
                return b
        return self._add(Gate(IMP, (a, b)))

    def and_all(self, xs: Iterable[int]) -> int:
        """Balanced binary tree; true for no arguments."""
        xs = list(xs)
        if not xs:
            return self.top()
        while len(xs) > 1:
            xs = [self.and_(xs[i], xs[i + 1]) if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
        return xs[0]

    def or_all(self, xs: Iterable[int]) -> int:
        xs = list(xs)
        if not xs:
            return self.bot()
        while len(xs) > 1:
            xs = [self.or_(xs[i], xs[i + 1]) if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
        return xs[0]

    def formula(self, f: F.Formula, env: dict) -> int:
        """Compile a formula; ``env`` maps atom keys to gate ids and is extended in place.

        Extended atoms not in ``env`` are compiled through their content.
        """
        memo: dict[int, int] = {}

        def go(g: F.Formula) -> int:
            r = memo.get(id(g))
            if r is not None:
                return r
            k = g.kind
            if k == F.ATOM:
                if g.atom not in env:
                    raise PreconditionError(f"atom {g.atom} is not a circuit input")
                r = env[g.atom]
            elif k == F.EXT:
                r = env[g] if g in env else go(g.child)
            elif k == F.TOP:
                r = self.top()
            elif k == F.BOT:
                r = self.bot()
            elif k == F.NOT:
                r = self.neg(go(g.child))
            elif k == F.BOX:
                r = self.box(go(g.child))
            elif k == F.AND:
                r = self.and_(go(g.left), go(g.right))
            elif k == F.OR:
                r = self.or_(go(g.left), go(g.right))
            elif k == F.IMP:
                r = self.imp(go(g.left), go(g.right))
            elif k == F.BIGAND:
                r = self.and_all(go(c) for c in g.children)
            else:
                r = self.or_all(go(c) for c in g.children)
            memo[id(g)] = r
            return r

        return go(f)

    def splice(self, c: Circuit, inputs: Sequence[int]) -> list[int]:
        """Copy ``c`` feeding its inputs from ``inputs``; returns its output gate ids here."""
        ids: list[int] = []
        for g in c.gates:
            p = [ids[i] for i in g.preds]
            k = g.kind
            if k == IN:
                ids.append(inputs[g.index])
            elif k == TOP:
                ids.append(self.top())
            elif k == BOT:
                ids.append(self.bot())
            elif k == NOT:
                ids.append(self.neg(p[0]))
            elif k == BOX:
                ids.append(self.box(p[0]))
            elif k == AND:
                ids.append(self.and_(*p))
            elif k == OR:
                ids.append(self.or_(*p))
            else:
                ids.append(self.imp(*p))
        return [ids[o] for o in c.outputs]

    def build(self, outputs: Sequence[int]) -> Circuit:
        return Circuit(self.n_inputs, tuple(self.gates), tuple(outputs))


def from_formula(f: F.Formula, inputs: Sequence, fold: bool = False) -> Circuit:
    """Single-output circuit computing ``f`` with input i bound to atom key inputs[i]."""
    b = Builder(len(inputs), fold=fold)
    env = {a: b.input(i) for i, a in enumerate(inputs)}
    return b.build([b.formula(f, env)])
