"""Validated configuration of one command-line job."""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..config import HARD_MAX_ARITY, HARD_MAX_ORDER, HARD_MAX_VERTICES, get_settings
from ..exceptions import CapExceededError, InvalidInputError


class JobConfig(BaseModel):
    """One batch job: a command, its inputs, the arity window and the report target."""

    model_config = ConfigDict(extra="forbid")

    command: str = Field(..., description="Command name")
    inputs: List[str] = Field(default_factory=list, description="Input paths or catalogue names")
    window: int = Field(default_factory=lambda: get_settings().max_arity, description="Largest m+n")
    max_vertices: int = Field(
        default_factory=lambda: get_settings().max_vertices, description="Vertex cap"
    )
    order: int = Field(
        default_factory=lambda: get_settings().default_order, description="Truncation order N"
    )
    output: Optional[str] = Field(None, description="Report path; stdout when absent")
    report_format: Literal["text", "structured"] = Field(
        default_factory=lambda: get_settings().report_format, description="Report format"
    )

    def validate_caps(self) -> "JobConfig":
        """
        Raises:
            InvalidInputError: for a window below 3, a vertex cap below 1, or N below 2
            CapExceededError: when the window, vertex cap or N exceeds its hard cap
        """
        if self.window < 3 or self.max_vertices < 1:
            raise InvalidInputError(
                "window must be at least 3 and the vertex cap at least 1",
                window=self.window,
                max_vertices=self.max_vertices,
            )
        if self.order < 2:
            raise InvalidInputError("truncation order must be at least 2", order=self.order)
        caps = (
            ("window", self.window, HARD_MAX_ARITY),
            ("vertex cap", self.max_vertices, HARD_MAX_VERTICES),
            ("truncation order", self.order, HARD_MAX_ORDER),
        )
        for name, value, cap in caps:
            if value > cap:
                raise CapExceededError(f"{name} exceeds the hard cap", value=value, cap=cap)
        return self
