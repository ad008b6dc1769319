"""Resolution refutations and their line format.

Script grammar, one step per line::

    <i> INPUT <m> [: <lits>]
    <i> RES <j> <k> <v> [: <lits>]

``INPUT m`` copies input clause m (0-based).  ``RES j k v`` resolves step j,
which must contain the positive literal of DIMACS variable v, with step k,
which must contain its negation.  The optional ``: lits`` suffix states the
derived clause as DIMACS literals; when present it must match exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from ..cnf import Clause, ClauseSet, Lit, clause, clause_text
from ..errors import ParseError
from .sequent import Verdict


@dataclass(frozen=True, slots=True)
class ResStep:
    kind: str  # "input" or "res"
    args: tuple[int, ...]  # (m,) or (j, k, pivot_atom)
    clause: Clause | None = None


@dataclass(frozen=True)
class ResolutionRefutation:
    steps: tuple[ResStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def size(self) -> int:
        """Total literal count over all lines, one extra symbol per line."""
        return sum(len(s.clause or ()) + 1 for s in self.steps)


def resolve(cj: Clause, ck: Clause, pivot: int) -> Clause:
    return clause([l for l in cj if l != Lit(pivot, True)] + [l for l in ck if l != Lit(pivot, False)])


def derive(inputs: ClauseSet, r: ResolutionRefutation) -> list[Clause]:
    """Clause at every step; raises ValueError with the step index on the first illegal step."""
    out: list[Clause] = []
    for i, s in enumerate(r.steps):
        why = _step_reason(inputs, out, i, s)
        if isinstance(why, str):
            raise ValueError(i, why)
        out.append(why)
    return out


def _step_reason(inputs: ClauseSet, out: Sequence[Clause], i: int, s: ResStep):
    if s.kind == "input":
        (m,) = s.args
        if not 0 <= m < len(inputs.clauses):
            return f"input index {m} out of range"
        got = inputs.clauses[m]
    elif s.kind == "res":
        j, k, p = s.args
        if not (0 <= j < i and 0 <= k < i):
            return "premises must be earlier steps"
        if Lit(p, True) not in out[j]:
            return f"pivot x{p + 1} does not occur positively in step {j}"
        if Lit(p, False) not in out[k]:
            return f"pivot x{p + 1} does not occur negatively in step {k}"
        got = resolve(out[j], out[k], p)
    else:
        return f"unknown justification {s.kind!r}"
    if s.clause is not None and s.clause != got:
        return f"stated clause [{clause_text(s.clause)}] differs from derived [{clause_text(got)}]"
    return got


def check_resolution(inputs: ClauseSet, r: ResolutionRefutation) -> Verdict:
    out: list[Clause] = []
    for i, s in enumerate(r.steps):
        got = _step_reason(inputs, out, i, s)
        if isinstance(got, str):
            return Verdict(False, i, s.kind.upper(), got)
        out.append(got)
    if not out:
        return Verdict(False, None, None, "empty refutation")
    if out[-1]:
        return Verdict(False, len(out) - 1, r.steps[-1].kind.upper(), "last clause is not empty")
    return Verdict(True, size=sum(len(c) + 1 for c in out))


def with_clauses(inputs: ClauseSet, r: ResolutionRefutation) -> ResolutionRefutation:
    """Copy with every step's clause filled in."""
    cs = derive(inputs, r)
    return ResolutionRefutation(tuple(replace(s, clause=c) for s, c in zip(r.steps, cs)))


def used_steps(r: ResolutionRefutation) -> set[int]:
    """Steps reachable from the last one."""
    seen: set[int] = set()
    stack = [len(r.steps) - 1] if r.steps else []
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        s = r.steps[i]
        if s.kind == "res":
            stack.extend(s.args[:2])
    return seen


def delete_step(r: ResolutionRefutation, i: int) -> ResolutionRefutation:
    """Remove step i (which nothing may cite) and renumber later references."""
    out = []
    for k, s in enumerate(r.steps):
        if k == i:
            continue
        if s.kind == "res":
            j, kk, p = s.args
            if i in (j, kk):
                raise ValueError(f"step {i} is cited by step {k}")
            s = replace(s, args=(j - (j > i), kk - (kk > i), p))
        out.append(s)
    return ResolutionRefutation(tuple(out))


def prune(r: ResolutionRefutation) -> ResolutionRefutation:
    """Drop every step the final clause does not depend on."""
    keep = sorted(used_steps(r))
    renum = {old: new for new, old in enumerate(keep)}
    out = []
    for old in keep:
        s = r.steps[old]
        if s.kind == "res":
            j, k, p = s.args
            s = replace(s, args=(renum[j], renum[k], p))
        out.append(s)
    return ResolutionRefutation(tuple(out))


# ---------------------------------------------------------------- text

def _lits_text(c: Clause) -> str:
    return " ".join(str(l.to_int()) for l in c)


def refutation_to_text(r: ResolutionRefutation) -> str:
    lines = []
    for i, s in enumerate(r.steps):
        if s.kind == "input":
            head = f"{i} INPUT {s.args[0]}"
        else:
            j, k, p = s.args
            head = f"{i} RES {j} {k} {p + 1}"
        if s.clause is not None:
            head += " :" + ("" if not s.clause else " " + _lits_text(s.clause))
        lines.append(head)
    return "\n".join(lines) + "\n"


def refutation_from_text(text: str) -> ResolutionRefutation:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        parts = head.split()
        try:
            nums = [int(x) for x in parts[2:]]
            if not parts or int(parts[0]) != len(steps):
                raise ParseError(f"line {lineno}: expected step id {len(steps)}")
            lits = clause(int(x) for x in tail.split()) if sep else None
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
        op = parts[1] if len(parts) > 1 else ""
        if op == "INPUT" and len(nums) == 1:
            steps.append(ResStep("input", (nums[0],), lits))
        elif op == "RES" and len(nums) == 3:
            if nums[2] < 1:
                raise ParseError(f"line {lineno}: pivot must be a positive variable number")
            steps.append(ResStep("res", (nums[0], nums[1], nums[2] - 1), lits))
        else:
            raise ParseError(f"line {lineno}: expected 'i INPUT m' or 'i RES j k v'")
    return ResolutionRefutation(tuple(steps))
