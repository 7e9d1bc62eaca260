"""Pydantic models for jobs and reports."""

from .job import JobConfig
from .reports import (
    AxiomReport,
    CohomologySlot,
    DecomposeReport,
    FreeDimReport,
    KoszulReport,
    McReport,
    MorphismReport,
    ResolutionReport,
    SlotDimension,
    TfReport,
)

__all__ = [
    "JobConfig",
    "AxiomReport",
    "CohomologySlot",
    "DecomposeReport",
    "FreeDimReport",
    "KoszulReport",
    "McReport",
    "MorphismReport",
    "ResolutionReport",
    "SlotDimension",
    "TfReport",
]
