"""Σ-bimodule collections, free and quadratic dioperads, duals and twists."""

from .collection import (
    ArityComponent,
    BimoduleCollection,
    Generator,
    character_component,
    component_from_matrices,
    dual_name,
)
from .dual import pairing_matrix, quadratic_dual
from .endomorphism import (
    MultilinearMap,
    composed_by_formula,
    endomorphism_compose,
    evaluate,
    evaluate_term,
)
from .free import TreeSlotSpace, act, compose, free_slot, symmetrize, transposition
from .loader import (
    CATALOGUE,
    catalogue,
    dump_presentation,
    load_named,
    load_presentation,
    parse_presentation,
)
from .quadratic import (
    RELATION_SLOTS,
    Presentation,
    QuotientSlot,
    dioperad_collection,
    dioperad_slots,
    operadic_parts,
    quotient_slot,
    underline_free_dim,
    window_slots,
)
from .twist import TWISTS, twist, twist_collection

__all__ = [
    "ArityComponent",
    "BimoduleCollection",
    "Generator",
    "character_component",
    "component_from_matrices",
    "dual_name",
    "pairing_matrix",
    "quadratic_dual",
    "MultilinearMap",
    "composed_by_formula",
    "endomorphism_compose",
    "evaluate",
    "evaluate_term",
    "TreeSlotSpace",
    "act",
    "compose",
    "free_slot",
    "symmetrize",
    "transposition",
    "CATALOGUE",
    "catalogue",
    "dump_presentation",
    "load_named",
    "load_presentation",
    "parse_presentation",
    "RELATION_SLOTS",
    "Presentation",
    "QuotientSlot",
    "dioperad_collection",
    "dioperad_slots",
    "operadic_parts",
    "quotient_slot",
    "underline_free_dim",
    "window_slots",
    "TWISTS",
    "twist",
    "twist_collection",
]
