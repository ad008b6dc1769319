"""Disjunctive interpolants from LJ, S4 and GL proofs.

From a proof of  => phi -> psi or theta  (boxed disjuncts in the modal case)
with monotone phi: derive phi => psi or theta with a cut, collect the Horn
set of the proof, translate phi, run the Horn-circuit construction for the
two extended atoms <psi> and <theta>, and substitute each extended input atom
by a circuit computing its content.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import formula as F
from .. import semantics
from ..circuit import Builder, Circuit, Gate
from ..errors import PreconditionError, ResourceLimitError
from ..formula import Formula, Sequent
from ..kernel.sequent import ProofBuilder, SequentProof, check_sequent_proof, subproof
from .horn import HornFormula, atomic_pdi
from .ipc import ipc_provable
from .kripke import find_countermodel, project_collapse, project_forgetful
from .translate import extract_sigma_lj, extract_sigma_modal, translate_t, translate_t0, translate_t1


@dataclass
class DisjunctiveInterpolant:
    c: Circuit
    d: Circuit
    inputs: tuple[int, ...]
    logic: str
    phi: Formula
    psi: Formula
    theta: Formula
    sigma: list[HornFormula]
    checks: dict[str, str] = field(default_factory=dict)
    sizes: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(v.startswith("FAIL") for v in self.checks.values())

    def formulas(self) -> tuple[Formula, Formula]:
        atoms = [F.atom(a) for a in self.inputs]
        return self.c.unfold(atoms), self.d.unfold(atoms)

    def rows(self) -> list[tuple[str, object]]:
        out = [
            ("logic", self.logic),
            ("inputs", len(self.inputs)),
            ("sigma_size", len(self.sigma)),
            ("c_size", self.c.size),
            ("d_size", self.d.size),
            ("c_monotone", int(self.c.monotone)),
            ("d_monotone", int(self.d.monotone)),
        ]
        out.extend(self.sizes.items())
        out.extend(self.checks.items())
        return out


# ------------------------------------------------------------ proof shaping

def _goal_parts(p: SequentProof, boxed: bool) -> tuple[Formula, Formula, Formula]:
    s = p.conclusion
    if s.ante or len(s.succ) != 1 or s.succ[0].kind != F.IMP or s.succ[0].right.kind != F.OR:
        raise PreconditionError("expected a proof of  => phi -> (psi or theta)")
    phi, disj = s.succ[0].left, s.succ[0].right
    psi, theta = disj.left, disj.right
    if boxed:
        if psi.kind != F.BOX or theta.kind != F.BOX:
            raise PreconditionError("expected boxed disjuncts  => phi -> (box psi or box theta)")
        psi, theta = psi.child, theta.child
    return phi, psi, theta


def _copy_into(b: ProofBuilder, p: SequentProof) -> int:
    base = len(b.nodes)
    for n in p.nodes:
        b.add(n.sequent.ante, n.sequent.succ, n.rule, n.index, [base + j for j in n.premises])
    return len(b.nodes) - 1


def antecedent_proof(p: SequentProof) -> SequentProof:
    """A proof of phi => chi from a proof of => phi -> chi."""
    root = p.root
    imp = p.conclusion.succ[0]
    phi, chi = imp.left, imp.right
    if root.rule == "Rimp" and root.index == 0:
        return subproof(p, root.premises[0])
    single = p.calculus == "LJ"
    b = ProofBuilder(p.calculus, single)
    top = _copy_into(b, p)
    ax_phi = b.add((phi,), (phi,), "ax")
    ax_chi = b.add((chi,), (chi,), "ax")
    if single:
        left = b.add((phi,), (imp,), "Lw", 0, [top])
        p1 = ax_phi
        p2 = b.add((phi, chi), (chi,), "Lw", 0, [ax_chi])
    else:
        left = b.embed(top, (phi,), (imp, chi))
        p1 = b.embed(ax_phi, (phi,), (phi, chi))
        p2 = b.embed(ax_chi, (phi, chi), (chi,))
    right = b.add((phi, imp), (chi,), "Limp", 1, [p1, p2])
    b.add((phi,), (chi,), "cut", None, [left, right])
    return b.build()


# ------------------------------------------------------------ substitution

def _substitute(c: Circuit, d: Circuit, ext_inputs: tuple, atoms: tuple[int, ...]) -> tuple[Circuit, Circuit]:
    """Feed each input <alpha> of C and D by a circuit for alpha over ``atoms``."""
    b = Builder(len(atoms))
    env = {a: b.input(i) for i, a in enumerate(atoms)}
    feeds = []
    for key in ext_inputs:
        if isinstance(key, Formula):
            feeds.append(b.formula(key.child, env))
        else:
            feeds.append(env[key])
    oc = b.splice(c, feeds)[0]
    od = b.splice(d, feeds)[0]
    return b.build([oc]).output(0), b.build([od]).output(0)


def _trim(c: Circuit) -> Circuit:
    """Drop gates not reachable from the output."""
    keep = set()
    stack = list(c.outputs)
    while stack:
        g = stack.pop()
        if g in keep:
            continue
        keep.add(g)
        stack.extend(c.gates[g].preds)
    b = Builder(c.n_inputs, fold=False)
    ids: dict[int, int] = {}
    for gid in sorted(keep):
        g = c.gates[gid]
        ids[gid] = b._add(Gate(g.kind, tuple(ids[p] for p in g.preds), g.index))
    return b.build([ids[o] for o in c.outputs])


# ------------------------------------------------------------ verification

def _classical_contracts(phi, psi, theta, cf, df, cap) -> dict[str, str]:
    order = F.sorted_atoms(set().union(*(x.atoms() for x in (phi, psi, theta, cf, df))))
    semantics.check_cap(len(order), cap)
    n = len(order)
    mask, cols = semantics.full_mask(n), semantics.columns(n)
    env = {a: cols[j] for j, a in enumerate(order)}
    t = {k: semantics.table_env(f, env, mask) for k, f in (("phi", phi), ("psi", psi), ("theta", theta), ("c", cf), ("d", df))}

    def verdict(bad: int) -> str:
        if not bad:
            return "PASS"
        row = semantics.first_row(bad)
        return "FAIL at " + " ".join(f"x{a + 1}={(row >> j) & 1}" for j, a in enumerate(order))

    return {
        "phi->C|D": verdict(t["phi"] & ~(t["c"] | t["d"]) & mask),
        "C->psi": verdict(t["c"] & ~t["psi"] & mask),
        "D->theta": verdict(t["d"] & ~t["theta"] & mask),
    }


def _ipc_check(s: Sequent, cap) -> str:
    try:
        return "PASS" if ipc_provable(s, cap) else "FAIL unprovable"
    except ResourceLimitError as e:
        return f"SKIPPED {e}"


def verify_pdi(r: DisjunctiveInterpolant, cap: int | None = None, oracle_cap: int | None = None) -> dict[str, str]:
    cf, df = r.formulas()
    out = {f"classical {k}": v for k, v in _classical_contracts(r.phi, r.psi, r.theta, cf, df, cap).items()}
    out["ipc phi->C|D"] = _ipc_check(F.sequent([r.phi], [F.disj(cf, df)]), oracle_cap)
    out["ipc C->psi"] = _ipc_check(F.sequent([cf], [r.psi]), oracle_cap)
    out["ipc D->theta"] = _ipc_check(F.sequent([df], [r.theta]), oracle_cap)
    return out


def verify_mdi(r: DisjunctiveInterpolant, cap: int | None = None, max_worlds: int = 5) -> dict[str, str]:
    cf, df = r.formulas()
    bpsi, btheta = F.box(r.psi), F.box(r.theta)
    proj = project_forgetful if r.logic == "S4" else project_collapse
    name = "forgetful" if r.logic == "S4" else "collapse"
    out = {}
    pc = (r.c.forgetful() if r.logic == "S4" else r.c.collapse()).unfold([F.atom(a) for a in r.inputs])
    pd = (r.d.forgetful() if r.logic == "S4" else r.d.collapse()).unfold([F.atom(a) for a in r.inputs])
    for k, v in _classical_contracts(proj(r.phi), proj(bpsi), proj(btheta), pc, pd, cap).items():
        out[f"{name} {k}"] = v
    contracts = {
        "phi->C|D": F.imp(r.phi, F.disj(cf, df)),
        "C->box psi": F.imp(cf, bpsi),
        "D->box theta": F.imp(df, btheta),
    }
    for k, f in contracts.items():
        res = find_countermodel(f, r.logic, max_worlds)
        if res.countermodel is not None:
            out[f"kripke {k}"] = f"FAIL countermodel {res.countermodel.describe()}"
        else:
            out[f"kripke {k}"] = f"PASS worlds<={res.max_worlds}"
    return out


# ------------------------------------------------------------ pipelines

def _pipeline(p: SequentProof, logic: str, verify: bool, cap, oracle_cap, max_worlds) -> DisjunctiveInterpolant:
    v = check_sequent_proof(p)
    if not v:
        raise PreconditionError(f"proof rejected: {v.describe()}")
    modal = logic != "IPC"
    phi, psi, theta = _goal_parts(p, modal)
    if not F.is_monotone(phi):
        raise PreconditionError(f"phi is not monotone: {phi.text}")
    p2 = antecedent_proof(p)
    v2 = check_sequent_proof(p2)
    if not v2:
        raise PreconditionError(f"derived proof rejected: {v2.describe()}")
    if logic == "IPC":
        sigma = extract_sigma_lj(p2)
        phit = translate_t(phi)
        q, r = F.ext(psi), F.ext(theta)
    else:
        sigma = extract_sigma_modal(p2)
        phit = (translate_t1 if logic == "S4" else translate_t0)(phi)
        q, r = F.ext(F.box(psi)), F.ext(F.box(theta))
    atomic = atomic_pdi(sigma, phit, q, r, verify=verify, cap=cap)
    if verify and not atomic.ok:
        bad = [k for k, ok in atomic.checks.items() if not ok]
        raise AssertionError(f"Horn-level contracts failed: {bad}")
    atoms = tuple(sorted(phi.atoms()))
    c, d = _substitute(atomic.c, atomic.d, atomic.inputs, atoms)
    c, d = _trim(c), _trim(d)
    res = DisjunctiveInterpolant(
        c, d, atoms, logic, phi, psi, theta, sigma,
        sizes={"proof_size": p.size(), "derived_proof_size": p2.size(), "horn_c_size": atomic.c.size, "horn_d_size": atomic.d.size},
    )
    if verify:
        res.checks.update({f"horn {k}": "PASS" for k in atomic.checks})
        res.checks.update(verify_pdi(res, cap, oracle_cap) if logic == "IPC" else verify_mdi(res, cap, max_worlds))
    return res


def lj_pdi(p: SequentProof, verify: bool = True, cap: int | None = None, oracle_cap: int | None = None) -> DisjunctiveInterpolant:
    """Monotone circuits C, D over V(phi) with phi -> C or D, C -> psi, D -> theta in IPC."""
    if p.calculus != "LJ":
        raise PreconditionError(f"expected an LJ proof, got {p.calculus}")
    return _pipeline(p, "IPC", verify, cap, oracle_cap, 0)


def modal_mdi(p: SequentProof, verify: bool = True, cap: int | None = None, max_worlds: int = 5) -> DisjunctiveInterpolant:
    """Monotone box-circuits C, D with phi -> C or D, C -> box psi, D -> box theta."""
    if p.calculus not in ("S4", "GL"):
        raise PreconditionError(f"expected an S4 or GL proof, got {p.calculus}")
    return _pipeline(p, p.calculus, verify, cap, None, max_worlds)
