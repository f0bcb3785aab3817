"""AMR+ toolkit: parse, validate and translate scoped AMRs."""

from .contexts import ContextStructure, normalize, validate
from .drs import DrsOutput, LexMap, render_box, render_clauses, translate
from .errors import AmrPlusError, ClauseError, LogicError, ParseError, ScopeError
from .logic import check_entailment, drs_to_fol, evaluate
from .penman import AmrPlusDocument, AmrPlusNode, format_document, parse, parse_many
from .triples import export_triples, smatch_exact, smatch_score
from .upgrade import auto_index, rewrite_polarity, rewrite_universal, upgrade

__all__ = [
    "AmrPlusDocument",
    "AmrPlusError",
    "AmrPlusNode",
    "ClauseError",
    "ContextStructure",
    "DrsOutput",
    "LexMap",
    "LogicError",
    "ParseError",
    "ScopeError",
    "auto_index",
    "check_entailment",
    "drs_to_fol",
    "evaluate",
    "export_triples",
    "format_document",
    "normalize",
    "parse",
    "parse_many",
    "render_box",
    "render_clauses",
    "rewrite_polarity",
    "rewrite_universal",
    "smatch_exact",
    "smatch_score",
    "translate",
    "upgrade",
    "validate",
]
