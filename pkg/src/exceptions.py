"""
Engine exceptions.

Every failure raised by the engine derives from DioperadError and carries a
stable machine-readable ``code`` plus a ``context`` dict that the logging layer
flattens into structured records.
"""

from typing import Any, Dict, Optional


class DioperadError(Exception):
    """Base class for all engine errors."""

    code: str = "engine-error"
    exit_code: int = 2

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for reports."""
        return {"code": self.code, "message": self.message, **self.context}


class InvalidInputError(DioperadError):
    """Raised when an operation's precondition is violated."""

    code = "invalid-input"


class WindowInsufficientError(DioperadError):
    """Raised when the arity window cannot hold a requested computation."""

    code = "window-insufficient"
    exit_code = 3


class CapExceededError(InvalidInputError):
    """Raised when a job asks for more than the hard caps allow."""

    code = "cap-exceeded"


class ParseError(InvalidInputError):
    """Raised for malformed presentation, tensor, field or map files."""

    code = "parse-error"

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line: Optional[int] = None,
        **context: Any,
    ):
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}", path=path, line=line, **context)


class MaurerCartanError(DioperadError):
    """Raised when a structure fails the Maurer-Cartan equation at some order."""

    code = "mc-violation"

    def __init__(self, message: str, order: int, **context: Any):
        super().__init__(message, order=order, **context)
        self.order = order
