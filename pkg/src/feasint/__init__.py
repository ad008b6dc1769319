"""Proof checking and feasible interpolation for classical, intuitionistic and modal proofs."""

from .errors import LanguageError, ParseError, PreconditionError, ResourceLimitError, WorkbenchError

__version__ = "0.1.0"

__all__ = ["LanguageError", "ParseError", "PreconditionError", "ResourceLimitError", "WorkbenchError", "__version__"]
