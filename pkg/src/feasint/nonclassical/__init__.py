"""Disjunctive interpolation for intuitionistic logic, S4 and GL via Horn closure circuits."""

from .horn import HornFormula, atomic_pdi, horn, horn_circuit, horn_valid
from .ipc import ipc_countermodel, ipc_prove, ipc_provable
from .kripke import find_countermodel, project_collapse, project_forgetful
from .pdi import DisjunctiveInterpolant, lj_pdi, modal_mdi
from .translate import extract_sigma_lj, extract_sigma_modal, translate_t, translate_t0, translate_t1

__all__ = [
    "DisjunctiveInterpolant",
    "HornFormula",
    "atomic_pdi",
    "extract_sigma_lj",
    "extract_sigma_modal",
    "find_countermodel",
    "horn",
    "horn_circuit",
    "horn_valid",
    "ipc_countermodel",
    "ipc_prove",
    "ipc_provable",
    "lj_pdi",
    "modal_mdi",
    "project_collapse",
    "project_forgetful",
    "translate_t",
    "translate_t0",
    "translate_t1",
]
