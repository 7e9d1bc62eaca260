"""Directed genus-0 trees: enumeration, canonical forms, grafting, syntax."""

from .canonical import (
    Layout,
    SlotActions,
    apply_layout,
    canonical_form,
    canonical_layout,
    canonical_tree,
    canonicalize,
    canonicalize_term,
    is_canonical_term,
)
from .enumerate import enumerate_trees, enumerate_trivalent_trees
from .graft import graft, graft_mappings, graft_terms, is_reduced
from .isomorphism import are_isomorphic, isomorphism_classes
from .orientation import OrientationLine, det_line, det_reference
from .syntax import format_combination, format_term, parse_combination, parse_term
from .tree import (
    EDGE,
    IN,
    OUT,
    Combination,
    Node,
    Term,
    Token,
    Tree,
    add_into,
    add_term,
    bare_tree,
    combine,
    corolla,
    relabel_term,
    scale,
    term_arity,
)

__all__ = [
    "Layout",
    "SlotActions",
    "apply_layout",
    "canonical_form",
    "canonical_layout",
    "canonical_tree",
    "canonicalize",
    "canonicalize_term",
    "is_canonical_term",
    "enumerate_trees",
    "enumerate_trivalent_trees",
    "graft",
    "graft_mappings",
    "graft_terms",
    "is_reduced",
    "are_isomorphic",
    "isomorphism_classes",
    "OrientationLine",
    "det_line",
    "det_reference",
    "format_combination",
    "format_term",
    "parse_combination",
    "parse_term",
    "EDGE",
    "IN",
    "OUT",
    "Combination",
    "Node",
    "Term",
    "Token",
    "Tree",
    "add_into",
    "add_term",
    "bare_tree",
    "combine",
    "corolla",
    "relabel_term",
    "scale",
    "term_arity",
]
