"""Hash-consed propositional and modal formulas.

Every formula node is interned, so structurally equal formulas are the same
Python object.  Equality is identity, hashing is by id, and per-node caches
(size, text, atom set) are computed at most once.

Atom keys are nonnegative integers for ordinary atoms.  An extended atom
``<phi>`` is the ``ext`` node itself; wherever an operation treats extended
atoms as variables the node serves as the key.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import LanguageError, ParseError, PreconditionError

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

ATOM = "atom"
EXT = "ext"
TOP = "top"
BOT = "bot"
NOT = "not"
AND = "and"
OR = "or"
IMP = "imp"
BOX = "box"
BIGAND = "bigand"
BIGOR = "bigor"

_ARITY = {ATOM: 0, TOP: 0, BOT: 0, EXT: 1, NOT: 1, BOX: 1, AND: 2, OR: 2, IMP: 2}

# Connective sets of each language; extended variants additionally allow EXT.
LANGUAGES: dict[str, frozenset[str]] = {
    "Lb": frozenset({ATOM, TOP, BOT, NOT, AND, OR}),
    "Lbu": frozenset({ATOM, TOP, BOT, NOT, BIGAND, BIGOR}),
    "Lp": frozenset({ATOM, TOP, BOT, AND, OR, IMP}),
    "Lbox": frozenset({ATOM, TOP, BOT, AND, OR, IMP, BOX}),
}


class Formula:
    __slots__ = ("kind", "children", "atom", "_size", "_text", "_atoms", "_kinds", "__weakref__")

    kind: str
    children: tuple["Formula", ...]
    atom: int | None

    def __repr__(self) -> str:
        return f"Formula({self.text})"

    def __str__(self) -> str:
        return self.text

    # Intern table keeps strong references so ids stay unique for the process.
    _table: dict = {}

    @property
    def text(self) -> str:
        t = self._text
        if t is None:
            t = _render(self)
        return t

    def size(self) -> int:
        """Node count of the formula read as a tree (shared nodes counted per use)."""
        s = self._size
        if s is None:
            s = 1 + sum(c.size() for c in self.children)
            self._size = s
        return s

    def atoms(self) -> frozenset:
        """V(f): ordinary atom ids and extended-atom nodes occurring in f."""
        a = self._atoms
        if a is None:
            if self.kind == ATOM:
                a = frozenset((self.atom,))
            elif self.kind == EXT:
                a = frozenset((self,))
            elif not self.children:
                a = frozenset()
            elif len(self.children) == 1:
                a = self.children[0].atoms()
            else:
                a = frozenset().union(*(c.atoms() for c in self.children))
            self._atoms = a
        return a

    def kinds(self) -> frozenset[str]:
        """Connective kinds used anywhere in f, ext children excluded."""
        k = self._kinds
        if k is None:
            if self.kind == EXT:
                k = frozenset((EXT,))
            else:
                k = frozenset((self.kind,)).union(*(c.kinds() for c in self.children))
            self._kinds = k
        return k

    @property
    def child(self) -> "Formula":
        return self.children[0]

    @property
    def left(self) -> "Formula":
        return self.children[0]

    @property
    def right(self) -> "Formula":
        return self.children[1]


def _make(kind: str, children: tuple[Formula, ...] = (), atom: int | None = None) -> Formula:
    key = (kind, atom, children)
    node = Formula._table.get(key)
    if node is None:
        node = object.__new__(Formula)
        node.kind = kind
        node.children = children
        node.atom = atom
        node._size = None
        node._text = None
        node._atoms = None
        node._kinds = None
        Formula._table[key] = node
    return node


def atom(i: int) -> Formula:
    if not isinstance(i, int) or isinstance(i, bool) or i < 0:
        raise PreconditionError(f"atom ids are nonnegative integers, got {i!r}")
    return _make(ATOM, (), i)


def ext(f: Formula) -> Formula:
    """Extended atom <f>."""
    return _make(EXT, (f,))


def neg(f: Formula) -> Formula:
    """Primitive negation node (languages L_b and L_b^u)."""
    return _make(NOT, (f,))


def conj(a: Formula, b: Formula) -> Formula:
    return _make(AND, (a, b))


def disj(a: Formula, b: Formula) -> Formula:
    return _make(OR, (a, b))


def imp(a: Formula, b: Formula) -> Formula:
    return _make(IMP, (a, b))


def box(f: Formula) -> Formula:
    return _make(BOX, (f,))


def bigand(fs: Iterable[Formula]) -> Formula:
    fs = tuple(fs)
    if not fs:
        raise PreconditionError("big conjunction needs at least one child")
    return _make(BIGAND, fs)


def bigor(fs: Iterable[Formula]) -> Formula:
    fs = tuple(fs)
    if not fs:
        raise PreconditionError("big disjunction needs at least one child")
    return _make(BIGOR, fs)


TRUE = _make(TOP)
FALSE = _make(BOT)


def lnot(f: Formula) -> Formula:
    """Negation of L_p and L_box, defined as f -> bottom."""
    return imp(f, FALSE)


def dotbox(f: Formula) -> Formula:
    """Reflexive box: box f and f."""
    return conj(box(f), f)


def conj_all(fs: Iterable[Formula], empty: Formula = TRUE) -> Formula:
    """Right-nested binary conjunction; ``empty`` for no conjuncts."""
    fs = list(fs)
    if not fs:
        return empty
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = conj(f, out)
    return out


def disj_all(fs: Iterable[Formula], empty: Formula = FALSE) -> Formula:
    fs = list(fs)
    if not fs:
        return empty
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = disj(f, out)
    return out


# ---------------------------------------------------------------- text syntax

_NAMES = {NOT: "not", AND: "and", OR: "or", IMP: "imp", BOX: "box", BIGAND: "bigand", BIGOR: "bigor", EXT: "ext"}
_KIND_OF = {v: k for k, v in _NAMES.items()}


def _render(f: Formula) -> str:
    # Iterative post-order so deeply nested formulas do not hit the C stack.
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if node._text is not None:
            continue
        if node.kind == ATOM:
            node._text = f"(atom {node.atom})"
        elif node.kind == TOP:
            node._text = "true"
        elif node.kind == BOT:
            node._text = "false"
        elif done:
            node._text = "(" + _NAMES[node.kind] + " " + " ".join(c._text for c in node.children) + ")"
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children if c._text is None)
    return f._text


def to_text(f: Formula) -> str:
    return f.text


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            out.append((ch, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append((text[i:j], i))
            i = j
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.end = len(text)

    def peek(self) -> tuple[str, int]:
        if self.i >= len(self.toks):
            return ("", self.end)
        return self.toks[self.i]

    def take(self) -> tuple[str, int]:
        tok = self.peek()
        if not tok[0]:
            raise ParseError("unexpected end of input", self.end)
        self.i += 1
        return tok

    def expect(self, s: str) -> None:
        tok, pos = self.take()
        if tok != s:
            raise ParseError(f"expected {s!r}, found {tok!r}", pos)

    def formula(self) -> Formula:
        tok, pos = self.take()
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok != "(":
            raise ParseError(f"unexpected token {tok!r}", pos)
        head, hpos = self.take()
        if head == "atom":
            num, npos = self.take()
            if not num.isdigit():
                raise ParseError(f"atom id must be a nonnegative integer, got {num!r}", npos)
            self.expect(")")
            return atom(int(num))
        kind = _KIND_OF.get(head)
        if kind is None:
            raise ParseError(f"unknown connective {head!r}", hpos)
        args = []
        while self.peek()[0] != ")":
            if not self.peek()[0]:
                raise ParseError("unexpected end of input", self.end)
            args.append(self.formula())
        self.take()
        if kind in (BIGAND, BIGOR):
            if not args:
                raise ParseError(f"{head} needs at least one argument", hpos)
            return _make(kind, tuple(args))
        if len(args) != _ARITY[kind]:
            raise ParseError(f"{head} takes {_ARITY[kind]} argument(s), got {len(args)}", hpos)
        return _make(kind, tuple(args))


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    tok, pos = p.peek()
    if tok:
        raise ParseError(f"trailing input {tok!r}", pos)
    return f


def parse_formulas(text: str) -> list[Formula]:
    """Parse a whitespace-separated sequence of formulas."""
    p = _Parser(text)
    out = []
    while p.peek()[0]:
        out.append(p.formula())
    return out


# ------------------------------------------------------------- language checks

def in_language(f: Formula, lang: str, extended: bool = False) -> bool:
    allowed = LANGUAGES[lang]
    kinds = f.kinds()
    if EXT in kinds:
        if not extended:
            return False
        kinds = kinds - {EXT}
    return kinds <= allowed


def is_modal(f: Formula) -> bool:
    if BOX in f.kinds():
        return True
    return any(is_modal(a.child) for a in f.atoms() if isinstance(a, Formula))


# ----------------------------------------------------------------- evaluation

Assignment = Mapping[Union[int, Formula], int]


def eval_formula(f: Formula, a: Assignment, ext_atoms: bool = False) -> int:
    """Classical truth value of ``f`` under ``a``.

    Extended atoms are rejected unless ``ext_atoms`` is set, in which case they
    are looked up in ``a`` by node.
    """
    memo: dict[int, int] = {}

    def ev(g: Formula) -> int:
        r = memo.get(id(g))
        if r is not None:
            return r
        k = g.kind
        if k == ATOM:
            if g.atom not in a:
                raise PreconditionError(f"assignment does not cover atom {g.atom}")
            r = 1 if a[g.atom] else 0
        elif k == EXT:
            if not ext_atoms:
                raise LanguageError("extended atom encountered during evaluation")
            if g not in a:
                raise PreconditionError(f"assignment does not cover {g.text}")
            r = 1 if a[g] else 0
        elif k == TOP:
            r = 1
        elif k == BOT:
            r = 0
        elif k == NOT:
            r = 1 - ev(g.child)
        elif k == AND:
            r = ev(g.left) & ev(g.right)
        elif k == OR:
            r = ev(g.left) | ev(g.right)
        elif k == IMP:
            r = (1 - ev(g.left)) | ev(g.right)
        elif k == BIGAND:
            r = int(all(ev(c) for c in g.children))
        elif k == BIGOR:
            r = int(any(ev(c) for c in g.children))
        else:
            raise LanguageError("modal node encountered during classical evaluation")
        memo[id(g)] = r
        return r

    return ev(f)


# ------------------------------------------------------------- normal forms

def to_nnf(f: Formula) -> Formula:
    """Negation normal form; implication is eliminated classically."""
    if BOX in f.kinds():
        raise LanguageError("negation normal form is defined for non-modal formulas only")
    memo: dict[tuple[int, bool], Formula] = {}

    def go(g: Formula, negated: bool) -> Formula:
        key = (id(g), negated)
        r = memo.get(key)
        if r is not None:
            return r
        k = g.kind
        if k in (ATOM, EXT, TOP, BOT):
            r = neg(g) if negated else g
        elif k == NOT:
            r = go(g.child, not negated)
        elif k == AND:
            r = (disj if negated else conj)(go(g.left, negated), go(g.right, negated))
        elif k == OR:
            r = (conj if negated else disj)(go(g.left, negated), go(g.right, negated))
        elif k == IMP:
            if negated:
                r = conj(go(g.left, False), go(g.right, True))
            else:
                r = disj(go(g.left, True), go(g.right, False))
        elif k == BIGAND:
            r = (bigor if negated else bigand)(go(c, negated) for c in g.children)
        elif k == BIGOR:
            r = (bigand if negated else bigor)(go(c, negated) for c in g.children)
        else:  # pragma: no cover - BOX excluded above
            raise LanguageError(k)
        memo[key] = r
        return r

    return go(f, False)


def is_nnf(f: Formula) -> bool:
    if f.kind == NOT:
        return f.child.kind in (ATOM, TOP, BOT, EXT)
    if f.kind in (IMP, BOX):
        return False
    return all(is_nnf(c) for c in f.children)


def is_monotone(f: Formula) -> bool:
    """Literal check: no negation and no implication anywhere."""
    return not (f.kinds() & {NOT, IMP})


def is_monotone_in(f: Formula, atoms: Iterable) -> bool:
    """True iff the NNF of f has no negated occurrence of an atom in ``atoms``."""
    if BOX in f.kinds():
        raise LanguageError("monotonicity in atoms is defined for non-modal formulas only")
    ps = set(atoms)
    seen: set[int] = set()
    stack = [to_nnf(f)]
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        if g.kind == NOT:
            c = g.child
            if (c.kind == ATOM and c.atom in ps) or (c.kind == EXT and c in ps):
                return False
            continue
        stack.extend(g.children)
    return True


def depth(f: Formula) -> int:
    """dp: atoms and constants 0, negation transparent, conjunctions and disjunctions add 1."""
    k = f.kind
    if not f.children or k == EXT:
        return 0
    if k == NOT:
        return depth(f.child)
    return 1 + max(depth(c) for c in f.children)


def substitute(f: Formula, mapping: Mapping) -> Formula:
    """Replace atoms (int keys) and extended atoms (node keys) by formulas."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        if g.kind == ATOM:
            r = mapping.get(g.atom, g)
        elif g.kind == EXT:
            r = mapping.get(g, g)
        elif not g.children:
            r = g
        else:
            r = _make(g.kind, tuple(go(c) for c in g.children), g.atom)
        memo[id(g)] = r
        return r

    return go(f)


def standard_substitute(f: Formula) -> Formula:
    """Replace every extended atom <phi> by phi (and <box phi> by box phi)."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        if g.kind == EXT:
            r = go(g.child)
        elif not g.children:
            r = g
        else:
            r = _make(g.kind, tuple(go(c) for c in g.children), g.atom)
        memo[id(g)] = r
        return r

    return go(f)


def constant_fold(f: Formula) -> Formula:
    """Absorb true/false constants; never rewrites anything else."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        k = g.kind
        if k in (ATOM, EXT, TOP, BOT):
            r = g
        elif k == NOT:
            c = go(g.child)
            r = FALSE if c is TRUE else TRUE if c is FALSE else neg(c)
        elif k == BOX:
            c = go(g.child)
            r = TRUE if c is TRUE else box(c)
        elif k == AND:
            a, b = go(g.left), go(g.right)
            r = FALSE if FALSE in (a, b) else b if a is TRUE else a if b is TRUE else conj(a, b)
        elif k == OR:
            a, b = go(g.left), go(g.right)
            r = TRUE if TRUE in (a, b) else b if a is FALSE else a if b is FALSE else disj(a, b)
        elif k == IMP:
            a, b = go(g.left), go(g.right)
            if a is FALSE or b is TRUE:
                r = TRUE
            elif a is TRUE:
                r = b
            else:
                r = imp(a, b)
        elif k == BIGAND:
            cs = [go(c) for c in g.children]
            if FALSE in cs:
                r = FALSE
            else:
                cs = [c for c in cs if c is not TRUE]
                r = bigand(cs) if cs else TRUE
        else:  # BIGOR
            cs = [go(c) for c in g.children]
            if TRUE in cs:
                r = TRUE
            else:
                cs = [c for c in cs if c is not FALSE]
                r = bigor(cs) if cs else FALSE
        memo[id(g)] = r
        return r

    return go(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Distinct subformulas in post-order; extended atoms are leaves."""
    seen: set[int] = set()
    out: list[Formula] = []
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if done:
            out.append(g)
            continue
        if id(g) in seen:
            continue
        seen.add(id(g))
        stack.append((g, True))
        if g.kind != EXT:
            stack.extend((c, False) for c in reversed(g.children))
    return iter(out)


def atom_sort_key(a) -> tuple:
    """Total order on atom keys: integers first, then extended atoms by text."""
    if isinstance(a, Formula):
        return (1, 0, a.text)
    return (0, a, "")


def sorted_atoms(atoms: Iterable) -> list:
    return sorted(atoms, key=atom_sort_key)


# --------------------------------------------------------------------- sequents

@dataclass(frozen=True, slots=True)
class Sequent:
    ante: tuple[Formula, ...]
    succ: tuple[Formula, ...]
    single: bool = False

    def __post_init__(self):
        if self.single and len(self.succ) > 1:
            raise PreconditionError("single-conclusion sequent with more than one succedent formula")

    def size(self) -> int:
        """Symbol count: formula nodes plus one for the arrow."""
        return 1 + sum(f.size() for f in self.ante) + sum(f.size() for f in self.succ)

    def atoms(self) -> frozenset:
        return frozenset().union(*(f.atoms() for f in self.ante + self.succ))

    @property
    def text(self) -> str:
        return " ".join(f.text for f in self.ante) + (" => " if self.ante else "=> ") + " ".join(
            f.text for f in self.succ
        )

    def as_formula(self) -> Formula:
        """The formula (and ante) -> (or succ) with binary connectives."""
        return imp(conj_all(self.ante), disj_all(self.succ))


def sequent(ante: Iterable[Formula], succ: Iterable[Formula], single: bool = False) -> Sequent:
    return Sequent(tuple(ante), tuple(succ), single)


def parse_sequent(text: str) -> Sequent:
    if "=>" not in text:
        raise ParseError("sequent needs '=>'")
    left, right = text.split("=>", 1)
    return Sequent(tuple(parse_formulas(left)), tuple(parse_formulas(right)))
