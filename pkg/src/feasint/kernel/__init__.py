"""Proof objects and checkers: sequent calculi, resolution, cutting planes, Nullstellensatz."""

from .sequent import (
    CALCULI,
    ProofBuilder,
    ProofNode,
    SequentProof,
    Verdict,
    check_sequent_proof,
    check_step,
    proof_from_text,
    proof_to_text,
)
from .resolution import ResolutionRefutation, ResStep, check_resolution
from .cutting_planes import CPRefutation, CPStep, Inequality, check_cp, clause_to_inequality
from .nullstellensatz import Field, NSCertificate, Polynomial, check_ns, formula_to_polynomial

__all__ = [
    "CALCULI",
    "CPRefutation",
    "CPStep",
    "Field",
    "Inequality",
    "NSCertificate",
    "Polynomial",
    "ProofBuilder",
    "ProofNode",
    "ResStep",
    "ResolutionRefutation",
    "SequentProof",
    "Verdict",
    "check_cp",
    "check_ns",
    "check_resolution",
    "check_sequent_proof",
    "check_step",
    "clause_to_inequality",
    "formula_to_polynomial",
    "proof_from_text",
    "proof_to_text",
]
