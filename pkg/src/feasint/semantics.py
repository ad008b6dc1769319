"""Exhaustive truth tables as Python integers used as bitsets.

Row ``r`` of a table over atoms ``order`` is the assignment giving atom
``order[j]`` the bit ``(r >> j) & 1``.  A table is the integer whose bit ``r``
is the value at row ``r``.  All brute-force oracles go through here so the
atom cap is enforced in one place.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from . import formula as F
from .errors import LanguageError, ResourceLimitError

DEFAULT_ATOM_CAP = 24


class _Config:
    atom_cap = DEFAULT_ATOM_CAP


config = _Config()


def set_atom_cap(cap: int) -> None:
    if cap <= 0:
        raise ValueError("atom cap must be positive")
    config.atom_cap = cap


def check_cap(n: int, cap: int | None = None) -> None:
    limit = config.atom_cap if cap is None else cap
    if n > limit:
        raise ResourceLimitError(f"{n} atoms exceed the brute-force cap of {limit}")


@lru_cache(maxsize=4)
def columns(n: int) -> tuple[int, ...]:
    """Truth tables of the n projection functions."""
    rows = 1 << n
    out = []
    for j in range(n):
        half = 1 << j
        x = ((1 << half) - 1) << half
        width = half << 1
        while width < rows:
            x |= x << width
            width <<= 1
        out.append(x)
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


def table(f: F.Formula, order: Sequence, cap: int | None = None) -> int:
    """Truth table of a non-modal formula; extended atoms count as variables."""
    check_cap(len(order), cap)
    cols = columns(len(order))
    env = {a: cols[j] for j, a in enumerate(order)}
    return table_env(f, env, full_mask(len(order)))


def table_env(f: F.Formula, env: dict, mask: int) -> int:
    memo: dict[int, int] = {}
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if id(g) in memo:
            continue
        k = g.kind
        if k == F.ATOM:
            memo[id(g)] = env[g.atom]
            continue
        if k == F.EXT:
            memo[id(g)] = env[g]
            continue
        if k == F.TOP:
            memo[id(g)] = mask
            continue
        if k == F.BOT:
            memo[id(g)] = 0
            continue
        if not done:
            stack.append((g, True))
            stack.extend((c, False) for c in g.children if id(c) not in memo)
            continue
        vals = [memo[id(c)] for c in g.children]
        if k == F.NOT:
            r = mask ^ vals[0]
        elif k in (F.AND, F.BIGAND):
            r = vals[0]
            for v in vals[1:]:
                r &= v
        elif k in (F.OR, F.BIGOR):
            r = vals[0]
            for v in vals[1:]:
                r |= v
        elif k == F.IMP:
            r = (mask ^ vals[0]) | vals[1]
        else:
            raise LanguageError("modal node in a classical truth table")
        memo[id(g)] = r
    return memo[id(f)]


def _order_of(fs: Iterable[F.Formula]) -> list:
    atoms: set = set()
    for f in fs:
        atoms |= f.atoms()
    return F.sorted_atoms(atoms)


def is_valid(f: F.Formula, cap: int | None = None) -> bool:
    order = _order_of([f])
    return table(f, order, cap) == full_mask(len(order))


def is_satisfiable(f: F.Formula, cap: int | None = None) -> bool:
    order = _order_of([f])
    return table(f, order, cap) != 0


def sequent_valid(s: F.Sequent, cap: int | None = None) -> bool:
    """Classical validity of (and ante) -> (or succ)."""
    order = _order_of(s.ante + s.succ)
    check_cap(len(order), cap)
    n = len(order)
    mask = full_mask(n)
    cols = columns(n)
    env = {a: cols[j] for j, a in enumerate(order)}
    lhs = mask
    for g in s.ante:
        lhs &= table_env(g, env, mask)
    rhs = 0
    for g in s.succ:
        rhs |= table_env(g, env, mask)
    return lhs & ~rhs & mask == 0


def first_row(t: int) -> int | None:
    """Index of the lowest set bit, or None for the empty table."""
    if t == 0:
        return None
    return (t & -t).bit_length() - 1
