"""Multi-sorted first-order sentences over finite domains and their propositional translation.

Sentence grammar (s-expressions)::

    s    := true | false | (= t t) | (rel R t ...) | (not s)
          | (and s s ...) | (or s s ...) | (imp s s)
          | (forall (x sort) s) | (exists (x sort) s)
    t    := variable | integer constant | c<integer>

Relations are declared up front as a map from name to argument sorts.  Domain
elements are the integers 1..size of each sort.  ``(not s)`` is sugar for
``(imp s false)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Mapping, Union

from . import formula as F
from .errors import ParseError, PreconditionError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


Term = Union[Var, Const]


@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    body: "Sentence"


@dataclass(frozen=True)
class And:
    parts: tuple["Sentence", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Sentence", ...]


@dataclass(frozen=True)
class Imp:
    left: "Sentence"
    right: "Sentence"


@dataclass(frozen=True)
class Quant:
    forall: bool
    var: str
    sort: str
    body: "Sentence"


Sentence = Union[Truth, Eq, Rel, Not, And, Or, Imp, Quant]


@dataclass(frozen=True)
class FOSentence:
    body: Sentence
    relations: tuple[tuple[str, tuple[str, ...]], ...]

    @property
    def signature(self) -> dict[str, tuple[str, ...]]:
        return dict(self.relations)

    def sorts(self) -> set[str]:
        out = {s for _, sorts in self.relations for s in sorts}
        stack = [self.body]
        while stack:
            n = stack.pop()
            if isinstance(n, Quant):
                out.add(n.sort)
                stack.append(n.body)
            elif isinstance(n, (And, Or)):
                stack.extend(n.parts)
            elif isinstance(n, Imp):
                stack.extend((n.left, n.right))
            elif isinstance(n, Not):
                stack.append(n.body)
        return out


# ----------------------------------------------------------------- parsing

def _tokens(text: str) -> list[tuple[str, int]]:
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            out.append((ch, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append((text[i:j], i))
            i = j
    return out


def _read(tokens, i):
    """Read one s-expression into nested lists of (token, pos) pairs."""
    if i >= len(tokens):
        raise ParseError("unexpected end of input")
    tok, pos = tokens[i]
    if tok == ")":
        raise ParseError("unexpected ')'", pos)
    if tok != "(":
        return (tok, pos), i + 1
    items, i = [], i + 1
    while True:
        if i >= len(tokens):
            raise ParseError("unclosed '('", pos)
        if tokens[i][0] == ")":
            return (items, pos), i + 1
        item, i = _read(tokens, i)
        items.append(item)


def parse_sentence(text: str, relations: Mapping[str, Iterable[str]]) -> FOSentence:
    sig = {name: tuple(sorts) for name, sorts in relations.items()}
    toks = _tokens(text)
    tree, end = _read(toks, 0)
    if end != len(toks):
        raise ParseError("trailing input", toks[end][1])

    def term(node, scope) -> tuple[Term, str | None]:
        val, pos = node
        if isinstance(val, list):
            raise ParseError("expected a term", pos)
        if val.isdigit():
            return Const(int(val)), None
        if val[0] == "c" and val[1:].isdigit():
            return Const(int(val[1:])), None
        if val not in scope:
            raise ParseError(f"unbound variable {val!r}", pos)
        return Var(val), scope[val]

    def sent(node, scope) -> Sentence:
        val, pos = node
        if not isinstance(val, list):
            if val == "true":
                return Truth(True)
            if val == "false":
                return Truth(False)
            raise ParseError(f"expected a sentence, found {val!r}", pos)
        if not val or isinstance(val[0][0], list):
            raise ParseError("expected an operator", pos)
        head, hpos = val[0]
        args = val[1:]
        if head == "=":
            if len(args) != 2:
                raise ParseError("equality takes two terms", hpos)
            (l, ls), (r, rs) = term(args[0], scope), term(args[1], scope)
            if ls and rs and ls != rs:
                raise ParseError(f"equality between sorts {ls} and {rs}", hpos)
            return Eq(l, r)
        if head == "rel":
            if not args or isinstance(args[0][0], list):
                raise ParseError("rel needs a relation symbol", hpos)
            name, npos = args[0]
            if name not in sig:
                raise ParseError(f"unknown relation {name!r}", npos)
            if len(args) - 1 != len(sig[name]):
                raise ParseError(f"relation {name} takes {len(sig[name])} argument(s), got {len(args) - 1}", pos)
            terms = []
            for a, want in zip(args[1:], sig[name]):
                t, s = term(a, scope)
                if s is not None and s != want:
                    raise ParseError(f"argument of sort {s} where {name} expects {want}", a[1])
                terms.append(t)
            return Rel(name, tuple(terms))
        if head == "not":
            if len(args) != 1:
                raise ParseError("not takes one argument", hpos)
            return Not(sent(args[0], scope))
        if head in ("and", "or"):
            if len(args) < 2:
                raise ParseError(f"{head} takes at least two arguments", hpos)
            parts = tuple(sent(a, scope) for a in args)
            return And(parts) if head == "and" else Or(parts)
        if head == "imp":
            if len(args) != 2:
                raise ParseError("imp takes two arguments", hpos)
            return Imp(sent(args[0], scope), sent(args[1], scope))
        if head in ("forall", "exists"):
            if len(args) != 2:
                raise ParseError(f"{head} takes a binder and a body", hpos)
            binder, bpos = args[0]
            if not isinstance(binder, list) or len(binder) != 2 or any(isinstance(b[0], list) for b in binder):
                raise ParseError("unsorted variable: binder must be (name sort)", bpos)
            (var, _), (sort, _) = binder
            inner = dict(scope)
            inner[var] = sort
            return Quant(head == "forall", var, sort, sent(args[1], inner))
        raise ParseError(f"unknown operator {head!r}", hpos)

    return FOSentence(sent(tree, {}), tuple(sorted(sig.items())))


# ------------------------------------------------------------- translation

def relation_atoms(fs: FOSentence, sizes: Mapping[str, int]) -> list[tuple]:
    """Atom names (relation, args...) in id order: relations by name, tuples lexicographic."""
    names = []
    for rel, sorts in fs.relations:
        for args in product(*(range(1, sizes[s] + 1) for s in sorts)):
            names.append((rel, *args))
    return names


def _check_sizes(fs: FOSentence, sizes: Mapping[str, int]) -> None:
    for s in fs.sorts():
        if s not in sizes:
            raise PreconditionError(f"no domain given for sort {s!r}")
        if sizes[s] < 1:
            raise PreconditionError(f"empty domain for sort {s!r}")


def translate(fs: FOSentence, sizes: Mapping[str, int], fold: bool = False) -> tuple[F.Formula, list[tuple]]:
    """The translation: equalities to constants, relation atoms to atoms, quantifiers to big connectives.

    Returns the formula and the atom-name table (atom id = list index).
    """
    _check_sizes(fs, sizes)
    names = relation_atoms(fs, sizes)
    index = {n: i for i, n in enumerate(names)}

    def value(t: Term, env) -> int:
        if isinstance(t, Var):
            if t.name not in env:
                raise PreconditionError(f"open sentence: free variable {t.name}")
            return env[t.name]
        return t.value

    def go(n: Sentence, env) -> F.Formula:
        if isinstance(n, Truth):
            return F.TRUE if n.value else F.FALSE
        if isinstance(n, Eq):
            return F.TRUE if value(n.left, env) == value(n.right, env) else F.FALSE
        if isinstance(n, Rel):
            key = (n.name, *(value(t, env) for t in n.args))
            if key not in index:
                raise PreconditionError(f"constant outside its domain in {key}")
            return F.atom(index[key])
        if isinstance(n, Not):
            return F.lnot(go(n.body, env))
        if isinstance(n, And):
            return F.conj_all([go(p, env) for p in n.parts])
        if isinstance(n, Or):
            return F.disj_all([go(p, env) for p in n.parts])
        if isinstance(n, Imp):
            return F.imp(go(n.left, env), go(n.right, env))
        parts = []
        for d in range(1, sizes[n.sort] + 1):
            inner = dict(env)
            inner[n.var] = d
            parts.append(go(n.body, inner))
        return F.bigand(parts) if n.forall else F.bigor(parts)

    out = go(fs.body, {})
    return (F.constant_fold(out) if fold else out), names


def family(fs: FOSentence, size_polys: Mapping[str, Callable[[int], int]], ns: Iterable[int], fold: bool = False) -> list[F.Formula]:
    """Translations for each n, sort sizes given by the per-sort polynomials."""
    missing = fs.sorts() - set(size_polys)
    if missing:
        raise PreconditionError(f"no size polynomial for sorts {sorted(missing)}")
    return [translate(fs, {s: p(n) for s, p in size_polys.items()}, fold)[0] for n in ns]


# ------------------------------------------------------------ model checking

def holds(fs: FOSentence, sizes: Mapping[str, int], extension: Mapping[str, set]) -> bool:
    """Direct evaluation of the sentence in the finite structure."""
    _check_sizes(fs, sizes)

    def value(t: Term, env) -> int:
        return env[t.name] if isinstance(t, Var) else t.value

    def go(n: Sentence, env) -> bool:
        if isinstance(n, Truth):
            return n.value
        if isinstance(n, Eq):
            return value(n.left, env) == value(n.right, env)
        if isinstance(n, Rel):
            return tuple(value(t, env) for t in n.args) in extension.get(n.name, set())
        if isinstance(n, Not):
            return not go(n.body, env)
        if isinstance(n, And):
            return all(go(p, env) for p in n.parts)
        if isinstance(n, Or):
            return any(go(p, env) for p in n.parts)
        if isinstance(n, Imp):
            return (not go(n.left, env)) or go(n.right, env)
        vals = (go(n.body, {**env, n.var: d}) for d in range(1, sizes[n.sort] + 1))
        return all(vals) if n.forall else any(vals)

    return go(fs.body, {})


FUNCTIONALITY = "(forall (x s) (forall (y t) (forall (z t) (imp (and (rel R x y) (rel R x z)) (= y z)))))"
INJECTIVITY = "(forall (x s) (forall (y s) (forall (z t) (imp (and (rel R x z) (rel R y z)) (= x y)))))"
TOTALITY = "(forall (x s) (exists (y t) (rel R x y)))"
FUNCTION_SIGNATURE = {"R": ("s", "t")}
