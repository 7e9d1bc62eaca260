"""Truncated formal graded geometry: fields, brackets and structure checks."""

from .brackets import (
    TensorField2,
    VectorField,
    even_bracket,
    exp_adjoint,
    hamiltonian,
    lie_derivative,
    odd_bracket,
    poisson_bracket,
    vector_bracket,
)
from .checks import (
    collection_axiom_check,
    full_array,
    lie1bi_axiom_check,
    liebi_axiom_check,
    liebi_check,
    mc_check,
    mc_components,
    mc_residual,
    relation_residuals,
    representation,
    structure_maps,
    tf_axiom_check,
    tf_check,
)
from .coordinates import (
    BASE,
    FIBER,
    Coordinates,
    Symbol,
    custom_coordinates,
    even_model,
    flat_model,
    model_coordinates,
    odd_model,
)
from .fieldfile import dump_field, load_field, parse_field_file
from .fmanifold import ProductField, hm_bracket
from .polynomial import PolyField, format_field, normalize, parse_field, substitute
from .tensors import (
    TensorCollection,
    TfStructure,
    assemble,
    canonical_entries,
    dump_tensors,
    extract,
    extract_all,
    load_tensors,
    parse_tensors,
)

__all__ = [
    "TensorField2",
    "VectorField",
    "even_bracket",
    "exp_adjoint",
    "hamiltonian",
    "lie_derivative",
    "odd_bracket",
    "poisson_bracket",
    "vector_bracket",
    "collection_axiom_check",
    "full_array",
    "lie1bi_axiom_check",
    "liebi_axiom_check",
    "liebi_check",
    "mc_check",
    "mc_components",
    "mc_residual",
    "relation_residuals",
    "representation",
    "structure_maps",
    "tf_axiom_check",
    "tf_check",
    "BASE",
    "FIBER",
    "Coordinates",
    "Symbol",
    "custom_coordinates",
    "even_model",
    "flat_model",
    "model_coordinates",
    "odd_model",
    "dump_field",
    "load_field",
    "parse_field_file",
    "ProductField",
    "hm_bracket",
    "PolyField",
    "format_field",
    "normalize",
    "parse_field",
    "substitute",
    "TensorCollection",
    "TfStructure",
    "assemble",
    "canonical_entries",
    "dump_tensors",
    "extract",
    "extract_all",
    "load_tensors",
    "parse_tensors",
]
