"""Decide and cross-check spectral, radical and stable operations on models of prime spectra."""

from .ordinal import OrdinalCNF, cnf_parse, cnf_render
from .spaces import CantorOneDim, FinitePoset, OrdinalOneDim
from .spectral import IdealDescriptor, SpectralOp, canonicalize_delta
from .radical import Join, Meet, Punctured, radical_is_spectral, radical_member, radical_qspec
from .prufer import PruferDescriptor, StableOpPair, stable_member, validate_pair
from .document import parse_document
from .report import execute, render_report

__version__ = "0.1.0"

__all__ = [
    "CantorOneDim", "FinitePoset", "IdealDescriptor", "Join", "Meet", "OrdinalCNF", "OrdinalOneDim",
    "PruferDescriptor", "Punctured", "SpectralOp", "StableOpPair", "canonicalize_delta", "cnf_parse",
    "cnf_render", "execute", "parse_document", "radical_is_spectral", "radical_member", "radical_qspec",
    "render_report", "stable_member", "validate_pair",
]
