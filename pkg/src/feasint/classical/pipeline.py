"""Resolution refutation -> sequent proof -> interpolant circuit, with brute-force checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import semantics
from ..circuit import Circuit
from ..cnf import clauses_table
from ..errors import PreconditionError
from ..kernel.resolution import ResolutionRefutation, prune
from ..kernel.sequent import SequentProof, check_sequent_proof, subproof
from .maehara import maehara_interpolate
from .simulation import Simulation, SplitClauses, simulate_resolution_in_lk


@dataclass
class SeparationCheck:
    ok: bool
    witness: dict | None = None
    failed: str = ""

    def describe(self) -> str:
        if self.ok:
            return "PASS"
        bits = " ".join(f"x{k + 1}={v}" for k, v in self.witness.items())
        return f"FAIL {self.failed} at {bits}"


@dataclass
class InterpolantReport:
    circuit: Circuit
    shared: tuple[int, ...]
    monotone: bool
    size: int
    proof_size: int
    proof_nodes: int
    refutation_steps: int
    kernel_verdict: str
    check: SeparationCheck | None = None
    extras: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        """Circuit gates per proof symbol."""
        return self.size / self.proof_size if self.proof_size else 0.0

    def rows(self) -> list[tuple[str, object]]:
        out = [
            ("shared_atoms", len(self.shared)),
            ("refutation_steps", self.refutation_steps),
            ("proof_nodes", self.proof_nodes),
            ("proof_size", self.proof_size),
            ("circuit_size", self.size),
            ("size_ratio", f"{self.ratio:.6f}"),
            ("monotone", int(self.monotone)),
            ("kernel", self.kernel_verdict),
            ("verification", self.check.describe() if self.check else "SKIPPED"),
        ]
        out.extend(self.extras.items())
        return out


def check_separation(sp: SplitClauses, c: Circuit, cap: int | None = None) -> SeparationCheck:
    """C(a)=0 makes the side-1 clauses unsatisfiable, C(a)=1 the side-2 clauses, for every a."""
    shared = list(sp.shared)
    k = len(shared)
    semantics.check_cap(k, cap)
    semantics.check_cap(max(len(sp.private1), len(sp.private2)), cap)
    ct = c.truth_table(0)
    side1, side2 = sp.side(1), sp.side(2)
    for row in range(1 << k):
        a = {v: (row >> j) & 1 for j, v in enumerate(shared)}
        out = (ct >> row) & 1
        clauses, private, name = (side1, sp.private1, "C=0 but side 1 is satisfiable") if out == 0 else (
            side2,
            sp.private2,
            "C=1 but side 2 is satisfiable",
        )
        if clauses_table(clauses, list(private), a):
            return SeparationCheck(False, a, name)
    return SeparationCheck(True)


def resolution_interpolate(
    sp: SplitClauses,
    r: ResolutionRefutation,
    verify: bool = True,
    check_proof: bool = True,
    cap: int | None = None,
) -> tuple[InterpolantReport, Simulation]:
    """Simulate, prune unused proof nodes, extract, and optionally verify by brute force.

    The tautologies and contradictions added by the simulation stay in the end
    sequent for extraction but are left out of the verification statement:
    they do not change which circuits interpolate.
    """
    r = prune(r)
    sim = simulate_resolution_in_lk(sp, r)
    proof: SequentProof = subproof(sim.proof, len(sim.proof.nodes) - 1)
    verdict = check_sequent_proof(proof) if check_proof else None
    if verdict is not None and not verdict:
        raise PreconditionError(f"simulated proof rejected: {verdict.describe()}")
    c = maehara_interpolate(proof, sim.partition)
    report = InterpolantReport(
        circuit=c,
        shared=tuple(sp.shared),
        monotone=c.monotone,
        size=c.size,
        proof_size=proof.size(),
        proof_nodes=len(proof.nodes),
        refutation_steps=len(r),
        kernel_verdict=verdict.describe() if verdict is not None else "SKIPPED",
    )
    if verify:
        report.check = check_separation(sp, c, cap)
    return report, sim
