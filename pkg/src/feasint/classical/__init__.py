"""Craig interpolation from cut-free sequent proofs and from resolution refutations."""

from .lkn import prove_lkn
from .maehara import Partition, make_partition, maehara_interpolate, verify_interpolant, verify_sequent_interpolant
from .pipeline import InterpolantReport, check_separation, resolution_interpolate
from .refute import cdcl_refute, dp_refute
from .simulation import SplitClauses, simulate_resolution_in_lk, split_clauses

__all__ = [
    "InterpolantReport",
    "Partition",
    "SplitClauses",
    "cdcl_refute",
    "check_separation",
    "dp_refute",
    "maehara_interpolate",
    "make_partition",
    "prove_lkn",
    "resolution_interpolate",
    "simulate_resolution_in_lk",
    "split_clauses",
    "verify_interpolant",
    "verify_sequent_interpolant",
]
