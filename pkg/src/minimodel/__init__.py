"""Minimal models: splitting a structure into minimal and contractible parts."""

from .coordmap import CoordMap, compose_maps, dump_map, identity_map, load_map, parse_map, pullback
from .decompose import Decomposition, decompose, decompose_report, decomposition_report
from .homotopy import delta_homotopy, delta_operator, projection
from .morphism import morphism_check
from .samples import random_mc_structure
from .splitting import Splitting, contractible_part, linear_images, split_quadratic

__all__ = [
    "CoordMap",
    "compose_maps",
    "dump_map",
    "identity_map",
    "load_map",
    "parse_map",
    "pullback",
    "Decomposition",
    "decompose",
    "decompose_report",
    "decomposition_report",
    "delta_homotopy",
    "delta_operator",
    "projection",
    "morphism_check",
    "random_mc_structure",
    "Splitting",
    "contractible_part",
    "linear_images",
    "split_quadratic",
]
