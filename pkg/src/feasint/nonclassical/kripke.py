"""Bounded Kripke countermodel search for S4 and GL, and box-erasing projections.

Frames are enumerated up to isomorphism from rooted naturally labelled
posets: S4 frames blow each point up into a cluster, GL frames take the
strict order.  All valuations on a frame are evaluated at once: world-atom
pairs are the columns of a truth table over 2^(worlds*atoms) rows, so a
formula's value at a world is one big-integer bitset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .. import formula as F
from .. import semantics
from ..errors import LanguageError
from ..formula import Formula
from .ipc import rooted_posets

DEFAULT_VALUATION_BITS = 20


def project_forgetful(f: Formula) -> Formula:
    """Erase every box."""
    return _project(f, lambda inner: inner)


def project_collapse(f: Formula) -> Formula:
    """Replace every boxed subformula by true."""
    return _project(f, lambda inner: F.TRUE)


def _project(f: Formula, on_box) -> Formula:
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        if g.kind == F.BOX:
            r = on_box(go(g.child))
        elif g.kind == F.EXT:
            raise LanguageError("project after standard substitution")
        elif not g.children:
            r = g
        else:
            r = F._make(g.kind, tuple(go(c) for c in g.children), g.atom)
        memo[id(g)] = r
        return r

    return go(f)


@lru_cache(maxsize=None)
def s4_frames(n: int) -> tuple[tuple[int, ...], ...]:
    """Rooted finite preorders on exactly n worlds, as successor bitmasks."""
    out = []
    for k in range(1, n + 1):
        for up in rooted_posets(k):
            for sizes in _compositions(n, k):
                start = [sum(sizes[:i]) for i in range(k)]
                block = [((1 << sizes[i]) - 1) << start[i] for i in range(k)]
                succ = []
                for i in range(k):
                    m = 0
                    for j in range(k):
                        if (up[i] >> j) & 1:
                            m |= block[j]
                    succ.extend([m] * sizes[i])
                out.append(tuple(succ))
    return tuple(out)


def _compositions(n: int, k: int):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def gl_frames(n: int) -> tuple[tuple[int, ...], ...]:
    """Rooted finite strict partial orders on n worlds."""
    return tuple(tuple(u & ~(1 << i) for i, u in enumerate(up)) for up in rooted_posets(n))


def frames(logic: str, n: int) -> tuple[tuple[int, ...], ...]:
    if logic == "S4":
        return s4_frames(n)
    if logic == "GL":
        return gl_frames(n)
    raise ValueError(f"no frame class for {logic!r}")


def _eval_all(f: Formula, succ: Sequence[int], cols: dict, mask: int) -> list[int]:
    """Value of f at each world, as a bitset over valuations."""
    n = len(succ)
    memo: dict[int, list[int]] = {}
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if id(g) in memo:
            continue
        k = g.kind
        if k == F.ATOM:
            memo[id(g)] = [cols[(w, g.atom)] for w in range(n)]
            continue
        if k in (F.TOP, F.BOT):
            memo[id(g)] = [mask if k == F.TOP else 0] * n
            continue
        if k == F.EXT:
            raise LanguageError("extended atom in a modal model check")
        if not done:
            stack.append((g, True))
            stack.extend((c, False) for c in g.children if id(c) not in memo)
            continue
        vs = [memo[id(c)] for c in g.children]
        if k == F.NOT:
            r = [mask ^ a for a in vs[0]]
        elif k in (F.AND, F.BIGAND):
            r = list(vs[0])
            for v in vs[1:]:
                r = [a & b for a, b in zip(r, v)]
        elif k in (F.OR, F.BIGOR):
            r = list(vs[0])
            for v in vs[1:]:
                r = [a | b for a, b in zip(r, v)]
        elif k == F.IMP:
            r = [(mask ^ a) | b for a, b in zip(vs[0], vs[1])]
        else:
            a = vs[0]
            r = []
            for w in range(n):
                acc = mask
                for v in range(n):
                    if (succ[w] >> v) & 1:
                        acc &= a[v]
                r.append(acc)
        memo[id(g)] = r
    return memo[id(f)]


@dataclass
class Countermodel:
    successors: tuple[int, ...]
    valuation: dict  # atom -> bitmask of worlds where it holds

    def describe(self) -> str:
        rel = " ".join(f"{w}->{{{','.join(str(v) for v in range(len(self.successors)) if (s >> v) & 1)}}}" for w, s in enumerate(self.successors))
        val = " ".join(f"x{a + 1}={{{','.join(str(w) for w in range(len(self.successors)) if (m >> w) & 1)}}}" for a, m in sorted(self.valuation.items()))
        return f"worlds={len(self.successors)} {rel} {val}".strip()


@dataclass
class SearchResult:
    countermodel: Countermodel | None
    max_worlds: int  # largest world count searched exhaustively

    @property
    def ok(self) -> bool:
        return self.countermodel is None


def find_countermodel(f: Formula, logic: str, max_worlds: int = 5, bits: int = DEFAULT_VALUATION_BITS) -> SearchResult:
    """Exhaustive search for a world refuting f on frames of up to ``max_worlds`` worlds.

    World counts whose valuation space would exceed 2^bits rows are skipped;
    ``max_worlds`` in the result reports how far the search went.
    """
    atoms = sorted(a for a in f.atoms() if not isinstance(a, Formula))
    if len(atoms) != len(f.atoms()):
        raise LanguageError("extended atom in a modal model check")
    k = len(atoms)
    reached = 0
    for n in range(1, max_worlds + 1):
        if n * k > bits:
            break
        nbits = n * k
        mask = semantics.full_mask(nbits)
        base = semantics.columns(nbits)
        cols = {(w, a): base[w * k + j] for w in range(n) for j, a in enumerate(atoms)}
        for succ in frames(logic, n):
            vals = _eval_all(f, succ, cols, mask)
            for w in range(n):
                bad = mask & ~vals[w]
                if bad:
                    row = semantics.first_row(bad)
                    val = {a: sum(((row >> (v * k + j)) & 1) << v for v in range(n)) for j, a in enumerate(atoms)}
                    return SearchResult(Countermodel(succ, val), n)
        reached = n
    return SearchResult(None, reached)


def holds_in(f: Formula, cm: Countermodel) -> list[bool]:
    """Direct per-world evaluation, used to double-check reported countermodels."""
    n = len(cm.successors)
    cols = {(w, a): (m >> w) & 1 for a, m in cm.valuation.items() for w in range(n)}
    return [bool(v) for v in _eval_all(f, cm.successors, cols, 1)]
