"""Cobar complexes, their cohomology and Koszulness verdicts."""

from .complex import (
    CobarComplex,
    WindowDioperad,
    build_cobar,
    cohomology,
    euler_characteristic,
)
from .koszul import cohomology_slot, criterion_comparison, koszulness_report

__all__ = [
    "CobarComplex",
    "WindowDioperad",
    "build_cobar",
    "cohomology",
    "euler_characteristic",
    "cohomology_slot",
    "criterion_comparison",
    "koszulness_report",
]
