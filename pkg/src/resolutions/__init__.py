"""Explicit minimal resolutions and their d² checks."""

from .checks import (
    d_squared_residuals,
    degree_check,
    degree_zero_presentation,
    equivariance_check,
    operadic_restriction_check,
    resolution_report,
    resolution_to_presentation_check,
)
from .differential import (
    apply_derivation,
    d_lie1bi,
    d_liebi,
    d_tf,
    generator_differentials,
    splittings,
    two_vertex,
)
from .generators import (
    RESOLUTIONS,
    TARGETS,
    generator_arities,
    generator_degree,
    generator_labels,
    generator_name,
    resolution_collection,
)

__all__ = [
    "d_squared_residuals",
    "degree_check",
    "degree_zero_presentation",
    "equivariance_check",
    "operadic_restriction_check",
    "resolution_report",
    "resolution_to_presentation_check",
    "apply_derivation",
    "d_lie1bi",
    "d_liebi",
    "d_tf",
    "generator_differentials",
    "splittings",
    "two_vertex",
    "RESOLUTIONS",
    "TARGETS",
    "generator_arities",
    "generator_degree",
    "generator_labels",
    "generator_name",
    "resolution_collection",
]
