"""Intuitionistic propositional logic at desk scale.

``ipc_prove`` is backward search in Dyckhoff's contraction-free calculus G4ip
with memoized sequents; it terminates without loop checks.  ``ipc_countermodel``
is an independent semantic oracle: exhaustive search over rooted finite
posets with persistent valuations.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable

from .. import formula as F
from ..errors import LanguageError, ResourceLimitError
from ..formula import Formula, Sequent

DEFAULT_ORACLE_CAP = 40


class _Config:
    oracle_cap = DEFAULT_ORACLE_CAP


config = _Config()


def set_oracle_cap(cap: int) -> None:
    if cap <= 0:
        raise ValueError("oracle cap must be positive")
    config.oracle_cap = cap


def connectives(fs: Iterable[Formula]) -> int:
    """Distinct connective nodes across ``fs`` (shared subformulas counted once)."""
    seen: set[int] = set()
    stack = list(fs)
    n = 0
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        if g.kind in (F.ATOM, F.EXT, F.TOP, F.BOT):
            continue
        n += 1
        stack.extend(g.children)
    return n


def _normalize(f: Formula) -> Formula:
    """not a -> (a -> bot); ext atoms stay atomic; modal nodes are rejected."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        k = g.kind
        if k in (F.ATOM, F.EXT, F.TOP, F.BOT):
            r = g
        elif k == F.NOT:
            r = F.imp(go(g.child), F.FALSE)
        elif k in (F.AND, F.OR, F.IMP):
            r = F._make(k, (go(g.left), go(g.right)))
        elif k == F.BIGAND:
            r = F.conj_all([go(c) for c in g.children])
        elif k == F.BIGOR:
            r = F.disj_all([go(c) for c in g.children])
        else:
            raise LanguageError("the IPC oracle accepts propositional formulas only")
        memo[id(g)] = r
        return r

    return go(f)


def _atomic(g: Formula) -> bool:
    return g.kind in (F.ATOM, F.EXT)


class _G4ip:
    def __init__(self):
        self.memo: dict[tuple, bool] = {}

    def prove(self, gamma: frozenset, goal: Formula) -> bool:
        key = (gamma, goal)
        r = self.memo.get(key)
        if r is None:
            r = self._prove(gamma, goal)
            self.memo[key] = r
        return r

    def _prove(self, gamma: frozenset, goal: Formula) -> bool:
        if F.FALSE in gamma or goal.kind == F.TOP or goal in gamma:
            return True
        # invertible left rules
        for g in gamma:
            k = g.kind
            rest = gamma - {g}
            if k == F.TOP:
                return self.prove(rest, goal)
            if k == F.AND:
                return self.prove(rest | {g.left, g.right}, goal)
            if k == F.OR:
                return self.prove(rest | {g.left}, goal) and self.prove(rest | {g.right}, goal)
            if k == F.IMP:
                a, b = g.left, g.right
                if a.kind == F.BOT:
                    return self.prove(rest, goal)
                if a.kind == F.TOP or (_atomic(a) and a in gamma):
                    return self.prove(rest | {b}, goal)
                if a.kind == F.AND:
                    return self.prove(rest | {F.imp(a.left, F.imp(a.right, b))}, goal)
                if a.kind == F.OR:
                    return self.prove(rest | {F.imp(a.left, b), F.imp(a.right, b)}, goal)
        # invertible right rules
        if goal.kind == F.AND:
            return self.prove(gamma, goal.left) and self.prove(gamma, goal.right)
        if goal.kind == F.IMP:
            return self.prove(gamma | {goal.left}, goal.right)
        # choices
        if goal.kind == F.OR and (self.prove(gamma, goal.left) or self.prove(gamma, goal.right)):
            return True
        for g in gamma:
            if g.kind == F.IMP and g.left.kind == F.IMP:
                d, b = g.left.right, g.right
                rest = gamma - {g}
                if self.prove(rest | {F.imp(d, b)}, g.left) and self.prove(rest | {b}, goal):
                    return True
        return False


def ipc_provable(s: Sequent, cap: int | None = None) -> bool:
    """Provability of (and ante) => (or succ) in intuitionistic logic."""
    limit = config.oracle_cap if cap is None else cap
    n = connectives(s.ante + s.succ)
    if n > limit:
        raise ResourceLimitError(f"{n} connectives exceed the oracle cap of {limit}")
    gamma = frozenset(_normalize(g) for g in s.ante)
    goal = _normalize(F.disj_all(s.succ))
    return _G4ip().prove(gamma, goal)


def ipc_prove(s: Sequent, cap: int | None = None) -> str:
    return "PROVABLE" if ipc_provable(s, cap) else "UNPROVABLE"


# ------------------------------------------------------------ Kripke oracle

@lru_cache(maxsize=None)
def rooted_posets(n: int) -> tuple[tuple[int, ...], ...]:
    """Rooted posets on 0..n-1 labelled so i <= j implies i <= j as integers.

    Each poset is the tuple of up-set bitmasks ``up[i]`` (reflexive).  Every
    finite rooted poset is isomorphic to at least one entry.
    """
    if n == 1:
        return ((1,),)
    out = []
    for up in rooted_posets(n - 1):
        # the new point n-1 is maximal; its strict down-set is a nonempty down-closed set containing 0
        for below in range(1, 1 << (n - 1)):
            if not below & 1:
                continue
            if any((below >> i) & 1 and not _down_closed_has(up, i, below) for i in range(n - 1)):
                continue
            new = tuple(u | (1 << (n - 1)) if (below >> i) & 1 else u for i, u in enumerate(up))
            out.append(new + (1 << (n - 1),))
    return tuple(out)


def _down_closed_has(up: tuple[int, ...], i: int, below: int) -> bool:
    """Every j <= i is in ``below``."""
    return all(not (up[j] >> i) & 1 or (below >> j) & 1 for j in range(len(up)))


def _upsets(up: tuple[int, ...]) -> list[int]:
    n = len(up)
    return [s for s in range(1 << n) if all(not (s >> i) & 1 or (up[i] & ~s) == 0 for i in range(n))]


def _force(f: Formula, up: tuple[int, ...], val: dict, full: int) -> int:
    """Set of worlds forcing f."""
    memo: dict[int, int] = {}

    def go(g: Formula) -> int:
        r = memo.get(id(g))
        if r is not None:
            return r
        k = g.kind
        if k in (F.ATOM, F.EXT):
            r = val[g]
        elif k == F.TOP:
            r = full
        elif k == F.BOT:
            r = 0
        elif k == F.AND:
            r = go(g.left) & go(g.right)
        elif k == F.OR:
            r = go(g.left) | go(g.right)
        else:
            a, b = go(g.left), go(g.right)
            bad = a & ~b
            r = 0
            for i, u in enumerate(up):
                if not u & bad:
                    r |= 1 << i
        memo[id(g)] = r
        return r

    return go(f)


def ipc_countermodel(s: Sequent, max_worlds: int = 4) -> tuple | None:
    """A rooted poset and persistent valuation where the root forces the antecedent but not the goal."""
    ante = [_normalize(g) for g in s.ante]
    goal = _normalize(F.disj_all(s.succ))
    atoms = F.sorted_atoms(set().union(goal.atoms(), *(g.atoms() for g in ante)))
    keys = [F.atom(a) if not isinstance(a, Formula) else a for a in atoms]
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        for up in rooted_posets(n):
            ups = _upsets(up)
            for choice in product(ups, repeat=len(keys)):
                val = dict(zip(keys, choice))
                if all(_force(g, up, val, full) & 1 for g in ante) and not _force(goal, up, val, full) & 1:
                    return up, {a: v for a, v in zip(atoms, choice)}
    return None
