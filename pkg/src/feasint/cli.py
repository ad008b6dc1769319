"""Command-line entry point.

Exit codes: 0 accept/pass/provable, 1 reject/fail/unprovable, 2 usage or
input error, 3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import formula as F
from . import generators, semantics
from .circuit import Circuit
from .classical import (
    cdcl_refute,
    dp_refute,
    maehara_interpolate,
    make_partition,
    resolution_interpolate,
    split_clauses,
    verify_sequent_interpolant,
)
from .classical.pipeline import check_separation
from .cnf import ClauseSet, parse_dimacs, to_dimacs
from .errors import ParseError, ResourceLimitError, WorkbenchError
from .kernel import cutting_planes as cp
from .kernel import nullstellensatz as ns
from .kernel import resolution as res
from .kernel.sequent import check_sequent_proof, proof_from_text
from .nonclassical import ipc
from .nonclassical.pdi import DisjunctiveInterpolant, lj_pdi, modal_mdi, verify_mdi, verify_pdi

OK, FAIL, USAGE, CAP = 0, 1, 2, 3


class _Usage(WorkbenchError):
    pass


# ------------------------------------------------------------------ file I/O

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def read_formula_file(text: str) -> F.Formula:
    body = "\n".join(l for l in text.splitlines() if not l.lstrip().startswith("#"))
    return F.parse_formula(body.strip())


def formula_file(f: F.Formula, header: Sequence[str]) -> str:
    return "".join(f"# {h}\n" for h in header) + f.text + "\n"


def circuit_file(c: Circuit, atoms: Sequence[int]) -> str:
    """Circuit text with the atom feeding each input recorded in a comment line."""
    return f"# atoms: {' '.join(str(a + 1) for a in atoms)}\n" + c.to_text()


def read_circuit_file(text: str) -> tuple[Circuit, list[int]]:
    atoms = None
    for line in text.splitlines():
        if line.startswith("# atoms:"):
            atoms = [int(x) - 1 for x in line.split(":", 1)[1].split()]
    c = Circuit.from_text(text)
    if atoms is None:
        atoms = list(range(c.n_inputs))
    if len(atoms) != c.n_inputs:
        raise ParseError("atom list does not match the number of circuit inputs")
    return c, atoms


def parse_partition(text: str) -> dict[str, list[int]]:
    """Lines ``sides ...``, ``ante ...``, ``succ ...``, ``shared ...`` (shared atoms 1-based)."""
    out: dict[str, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *vals = line.split()
        if key not in ("sides", "ante", "succ", "shared"):
            raise ParseError(f"line {lineno}: unknown partition key {key!r}")
        try:
            nums = [int(v) for v in vals]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers") from None
        out[key] = [v - 1 for v in nums] if key == "shared" else nums
    return out


def partition_text(sides: Sequence[int], shared: Sequence[int] | None = None) -> str:
    lines = ["sides " + " ".join(str(s) for s in sides)]
    if shared is not None:
        lines.append("shared " + " ".join(str(a + 1) for a in shared))
    return "\n".join(lines) + "\n"


def emit_report(rows, path: Path | None) -> str:
    text = "".join(f"{k}\t{v}\n" for k, v in rows)
    sys.stdout.write(text)
    if path is not None:
        _write(path, text)
    return text


# --------------------------------------------------------------------- gen

_GEN_ARGS = {
    "php": ("pigeons", "holes"),
    "clique": ("n", "k"),
    "color": ("n", "l"),
    "clique-color": ("n", "k", "l"),
    "lift-ipc": ("n", "k", "l"),
    "lift-modal": ("n", "k", "l"),
    "fo": ("sentence", "relations", "size"),
}


def cmd_gen(a) -> int:
    fam = a.family
    missing = [f"--{x}" for x in _GEN_ARGS[fam] if getattr(a, x) is None]
    if missing:
        raise _Usage(f"gen {fam} needs {' '.join(missing)}")
    out = Path(a.output) if a.output else None
    header = [f"family {fam}"]
    if fam == "php":
        text = to_dimacs(generators.php(a.pigeons, a.holes))
    elif fam == "clique":
        text = to_dimacs(generators.clique_clauses(a.n, a.k))
    elif fam == "color":
        text = to_dimacs(generators.color_clauses(a.n, a.l))
    elif fam == "clique-color" and a.cnf:
        ca, cb, shared = generators.clique_color(a.n, a.k, a.l)
        cs = ClauseSet(ca.clauses + cb.clauses, ca.names)
        text = to_dimacs(cs)
        if out is not None:
            _write(out.with_suffix(".part"), partition_text([1] * len(ca.clauses) + [2] * len(cb.clauses), shared))
    elif fam == "clique-color":
        f, names = generators.clique_color_tautology(a.n, a.k, a.l)
        text = formula_file(f, header + [f"n={a.n} k={a.k} l={a.l}", f"atoms {len(names)}"])
    elif fam in ("lift-ipc", "lift-modal"):
        f, names = generators.clique_color_lift(a.n, a.k, a.l, modal=fam == "lift-modal")
        text = formula_file(f, header + [f"n={a.n} k={a.k} l={a.l}", f"atoms {len(names)}"])
    elif fam == "fo":
        from . import fo

        rels = {}
        for part in a.relations.split(";"):
            name, _, sorts = part.partition(":")
            rels[name.strip()] = [s.strip() for s in sorts.split(",") if s.strip()]
        sizes = {}
        for part in a.size:
            s, _, v = part.partition("=")
            sizes[s] = int(v)
        sentence = fo.parse_sentence(a.sentence, rels)
        f, names = fo.translate(sentence, sizes, fold=a.fold)
        text = formula_file(f, header + [f"sizes {' '.join(f'{k}={v}' for k, v in sorted(sizes.items()))}", f"atoms {len(names)}"])
    else:
        raise _Usage(f"unknown family {fam!r}")
    if out is None:
        sys.stdout.write(text)
    else:
        _write(out, text)
    return OK


# ------------------------------------------------------------------- check

def _detect(text: str) -> str:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("calculus"):
            return "sequent"
        if line.startswith("field") or line.startswith("g ") or line.startswith("h "):
            return "ns"
        parts = line.split()
        if len(parts) > 1 and parts[1] in ("AXL", "AXU", "ADD", "MUL", "DIV"):
            return "cp"
        if len(parts) > 1 and parts[1] == "RES":
            return "resolution"
    return "resolution"


def cmd_check(a) -> int:
    text = _read(a.proof)
    kind = _detect(text) if a.kind == "auto" else a.kind
    if kind == "sequent":
        v = check_sequent_proof(proof_from_text(text))
        print(v.describe())
        return OK if v else FAIL
    if not a.cnf:
        raise _Usage(f"checking a {kind} proof needs --cnf")
    cs = parse_dimacs(_read(a.cnf))
    if kind == "resolution":
        v = res.check_resolution(cs, res.refutation_from_text(text))
    elif kind == "cp":
        v = cp.check_cp(cs, cp.refutation_from_text(text))
    else:
        v = ns.check_ns(cs, ns.certificate_from_text(text))
    print(v.describe())
    return OK if v else FAIL


# ------------------------------------------------------------------ refute

def cmd_refute(a) -> int:
    cs = parse_dimacs(_read(a.cnf))
    r = cdcl_refute(cs) if a.method == "cdcl" else dp_refute(cs, a.max_clauses)
    text = res.refutation_to_text(r)
    if a.output:
        _write(Path(a.output), text)
    else:
        sys.stdout.write(text)
    return OK


# ------------------------------------------------------------------ interp

def _split(a) -> tuple:
    cs = parse_dimacs(_read(a.input))
    part = parse_partition(_read(a.partition))
    if "sides" not in part:
        raise _Usage("partition file needs a 'sides' line")
    return cs, split_clauses(cs, part["sides"], part.get("shared"))


def _interp_resolution(a, prefix: Path) -> int:
    cs, sp = _split(a)
    r = res.refutation_from_text(_read(a.refutation)) if a.refutation else cdcl_refute(cs)
    report, _ = resolution_interpolate(sp, r, verify=not a.no_verify)
    _write(prefix.with_suffix(".circuit"), circuit_file(report.circuit, report.shared))
    emit_report(report.rows(), prefix.with_suffix(".report"))
    return OK if report.check is None or report.check.ok else FAIL


def _interp_lk(a, prefix: Path) -> int:
    p = proof_from_text(_read(a.input))
    v = check_sequent_proof(p)
    if not v:
        print(v.describe())
        return FAIL
    part_spec = parse_partition(_read(a.partition))
    s = p.conclusion
    part = make_partition(s, part_spec.get("ante", []), part_spec.get("succ", []), part_spec.get("shared"))
    c = maehara_interpolate(p, part, fold=a.fold)
    chk = None if a.no_verify else verify_sequent_interpolant(s, part, c)
    _write(prefix.with_suffix(".circuit"), circuit_file(c, part.shared))
    rows = [
        ("shared_atoms", len(part.shared)),
        ("proof_nodes", len(p.nodes)),
        ("proof_size", p.size()),
        ("circuit_size", c.size),
        ("monotone", int(c.monotone)),
        ("kernel", v.describe()),
        ("verification", chk.describe() if chk is not None else "SKIPPED"),
    ]
    emit_report(rows, prefix.with_suffix(".report"))
    return OK if chk is None or chk else FAIL


def _interp_disjunctive(a, prefix: Path) -> int:
    p = proof_from_text(_read(a.input))
    expected = {"lj": ("LJ",), "s4": ("S4",), "gl": ("GL",)}[a.system]
    if p.calculus not in expected:
        raise _Usage(f"interp {a.system} needs a {expected[0]} proof, got {p.calculus}")
    r: DisjunctiveInterpolant = lj_pdi(p, verify=not a.no_verify) if a.system == "lj" else modal_mdi(p, verify=not a.no_verify)
    _write(prefix.with_suffix(".c.circuit"), circuit_file(r.c, r.inputs))
    _write(prefix.with_suffix(".d.circuit"), circuit_file(r.d, r.inputs))
    emit_report(r.rows(), prefix.with_suffix(".report"))
    return OK if r.ok else FAIL


def cmd_interp(a) -> int:
    prefix = Path(a.output) if a.output else Path(a.input).with_suffix("")
    if a.system == "resolution":
        if not a.partition:
            raise _Usage("interp resolution needs --partition")
        return _interp_resolution(a, prefix)
    if a.system == "lk":
        if not a.partition:
            raise _Usage("interp lk needs --partition")
        return _interp_lk(a, prefix)
    return _interp_disjunctive(a, prefix)


# ------------------------------------------------------------------ verify

def cmd_verify(a) -> int:
    if a.system == "resolution":
        c, atoms = read_circuit_file(_read(a.circuit))
        cs, sp = _split(a)
        if list(sp.shared) != atoms:
            raise _Usage("circuit inputs do not match the shared atoms of the partition")
        chk = check_separation(sp, c)
        print(chk.describe())
        return OK if chk.ok else FAIL
    p = proof_from_text(_read(a.input))
    if a.system == "lk":
        c, atoms = read_circuit_file(_read(a.circuit))
        part_spec = parse_partition(_read(a.partition))
        part = make_partition(p.conclusion, part_spec.get("ante", []), part_spec.get("succ", []), part_spec.get("shared"))
        if list(part.shared) != atoms:
            raise _Usage("circuit inputs do not match the shared atoms of the partition")
        chk = verify_sequent_interpolant(p.conclusion, part, c)
        print(chk.describe())
        return OK if chk else FAIL
    if not a.d_circuit:
        raise _Usage(f"verify {a.system} needs --d-circuit")
    c, atoms = read_circuit_file(_read(a.circuit))
    d, atoms_d = read_circuit_file(_read(a.d_circuit))
    base = lj_pdi(p, verify=False) if a.system == "lj" else modal_mdi(p, verify=False)
    if atoms != list(base.inputs) or atoms_d != list(base.inputs):
        raise _Usage("circuit inputs do not match the atoms of phi")
    base.c, base.d = c, d
    checks = verify_pdi(base) if a.system == "lj" else verify_mdi(base)
    emit_report(checks.items(), None)
    return FAIL if any(v.startswith("FAIL") for v in checks.values()) else OK


# ------------------------------------------------------------------ oracle

def cmd_oracle(a) -> int:
    text = _read(a.file) if a.file else a.sequent
    if text is None:
        raise _Usage("oracle needs a sequent or --file")
    s = F.parse_sequent(text.strip())
    verdict = ipc.ipc_prove(s)
    print(verdict)
    return OK if verdict == "PROVABLE" else FAIL


# ------------------------------------------------------------------ report

def _scaling_row(n: int, k: int, l: int) -> dict:
    import time

    ca, cb, shared = generators.clique_color(n, k, l)
    cs = ClauseSet(ca.clauses + cb.clauses, ca.names)
    sp = split_clauses(cs, [1] * len(ca.clauses) + [2] * len(cb.clauses), shared)
    t0 = time.perf_counter()
    r = cdcl_refute(cs)
    rep, _ = resolution_interpolate(sp, r)
    return {
        "n": n,
        "k": k,
        "l": l,
        "refutation_steps": rep.refutation_steps,
        "proof_nodes": rep.proof_nodes,
        "proof_size": rep.proof_size,
        "circuit_size": rep.size,
        "monotone": int(rep.monotone),
        "verification": rep.check.describe() if rep.check else "SKIPPED",
        "_seconds": time.perf_counter() - t0,
    }


def plot_scaling(rows: list[dict], path: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 4))
    xs = [int(r["proof_size"]) for r in rows]
    ys = [int(r["circuit_size"]) for r in rows]
    ax.loglog(xs, ys, "o-", color="C0", label="interpolant circuit")
    for r, x, y in zip(rows, xs, ys):
        ax.annotate(f"n={r['n']}", (x, y), textcoords="offset points", xytext=(4, -10), fontsize=8)
    ax.set_xlabel("sequent proof size (symbols)")
    ax.set_ylabel("circuit size (gates)")
    ax.set_title(f"clique-color, k={rows[0]['k']}, l={rows[0]['l']}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(frameon=False)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def cmd_report(a) -> int:
    outdir = Path(a.output)
    args = [(n, a.k, a.l) for n in a.ns]
    if a.workers > 1:
        with ProcessPoolExecutor(a.workers) as pool:
            rows = list(pool.map(_scaling_row, *zip(*args)))
    else:
        rows = [_scaling_row(*x) for x in args]
    for r in rows:
        print(f"n={r['n']}: {r.pop('_seconds'):.2f}s", file=sys.stderr)
    keys = list(rows[0])
    tsv = "\t".join(keys) + "\n" + "".join("\t".join(str(r[k]) for k in keys) + "\n" for r in rows)
    sys.stdout.write(tsv)
    _write(outdir / "scaling.tsv", tsv)
    if not a.no_plot:
        plot_scaling(rows, outdir / "scaling.png")
    return OK if all(r["verification"] == "PASS" for r in rows) else FAIL


# --------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="feasint", description=__doc__.splitlines()[0])
    ap.add_argument("--atom-cap", type=int, default=None, help="brute-force atom cap")
    ap.add_argument("--oracle-cap", type=int, default=None, help="IPC oracle connective cap")
    ap.add_argument("--workers", type=int, default=1, help="worker processes for batch commands")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a formula or clause family")
    g.add_argument("family", choices=["php", "clique", "color", "clique-color", "lift-ipc", "lift-modal", "fo"])
    g.add_argument("--pigeons", type=int)
    g.add_argument("--holes", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--l", type=int)
    g.add_argument("--cnf", action="store_true", help="clique-color as split DIMACS plus a .part file")
    g.add_argument("--sentence")
    g.add_argument("--relations", help="e.g. 'R:a,b;S:a'")
    g.add_argument("--size", action="append", help="sort=size, repeatable")
    g.add_argument("--fold", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="check a proof script")
    c.add_argument("proof")
    c.add_argument("--cnf")
    c.add_argument("--kind", choices=["auto", "sequent", "resolution", "cp", "ns"], default="auto")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("refute", help="find a resolution refutation of a DIMACS file")
    r.add_argument("cnf")
    r.add_argument("--method", choices=["cdcl", "dp"], default="cdcl")
    r.add_argument("--max-clauses", type=int, default=20000)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_refute)

    i = sub.add_parser("interp", help="extract interpolant circuits")
    i.add_argument("system", choices=["resolution", "lk", "lj", "s4", "gl"])
    i.add_argument("input", help="DIMACS file (resolution) or proof script")
    i.add_argument("--partition")
    i.add_argument("--refutation")
    i.add_argument("--fold", action="store_true")
    i.add_argument("--no-verify", action="store_true")
    i.add_argument("-o", "--output", help="output path prefix")
    i.set_defaults(func=cmd_interp)

    v = sub.add_parser("verify", help="re-check emitted circuit files")
    v.add_argument("system", choices=["resolution", "lk", "lj", "s4", "gl"])
    v.add_argument("input", help="DIMACS file (resolution) or proof script")
    v.add_argument("circuit")
    v.add_argument("--d-circuit")
    v.add_argument("--partition")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="decision oracles")
    o.add_argument("logic", choices=["ipc"])
    o.add_argument("sequent", nargs="?")
    o.add_argument("--file")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("report", help="clique-color scaling table and figure")
    s.add_argument("--ns", type=int, nargs="+", default=[3, 4, 5])
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--no-plot", action="store_true")
    s.add_argument("-o", "--output", default="report")
    s.set_defaults(func=cmd_report)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if a.atom_cap is not None:
        semantics.set_atom_cap(a.atom_cap)
    if a.oracle_cap is not None:
        ipc.set_oracle_cap(a.oracle_cap)
    try:
        return a.func(a)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return CAP
    except (WorkbenchError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
