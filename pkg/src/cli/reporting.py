"""
Report rendering for the command line.

Structured reports are ``key = value`` lines under a versioned header,
sorted by key and free of timestamps. Text reports render the same data
as pandas tables.
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import click
import pandas as pd
from pydantic import BaseModel

from ..exactalg.scalars import format_rational

HEADER = "# dioperad-engine report v1"
PROPERTIES = ("passed", "verdict", "acyclic", "matches", "criterion_holds")


def plain(obj: Any) -> Any:
    """Nested dicts of scalars; lists of slot entries are keyed by slot."""
    if isinstance(obj, BaseModel):
        out = {name: plain(getattr(obj, name)) for name in type(obj).model_fields}
        for name in PROPERTIES:
            if isinstance(getattr(type(obj), name, None), property):
                out[name] = plain(getattr(obj, name))
        return out
    if isinstance(obj, list):
        if obj and all(isinstance(getattr(item, "slot", None), str) for item in obj):
            return {item.slot: plain(item) for item in obj}
        return {str(k): plain(item) for k, item in enumerate(obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    return obj


def scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, str]:
    lines: Dict[str, str] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            if value:
                lines.update(flatten(value, f"{name}."))
            else:
                lines[name] = "{}"
        else:
            lines[name] = scalar(value)
    return lines


def render_structured(command: str, report: BaseModel) -> str:
    lines = flatten(plain(report))
    lines["command"] = command
    body = [f"{key} = {lines[key]}" for key in sorted(lines)]
    return "\n".join([HEADER] + body) + "\n"


def render_text(command: str, report: BaseModel) -> str:
    data = plain(report)
    passed = data.get("passed")
    title = f"{command}: " + ("PASS" if passed else "FAIL") if passed is not None else command
    summary = {k: scalar(v) for k, v in data.items() if not isinstance(v, dict)}
    blocks: List[str] = [title, "=" * len(title)]
    if summary:
        frame = pd.DataFrame({"value": summary})
        blocks.append(frame.to_string())
    for key, value in data.items():
        if not isinstance(value, dict) or not value:
            continue
        blocks.append("")
        blocks.append(f"[{key}]")
        if all(isinstance(v, dict) for v in value.values()):
            rows = {row: flatten(fields) for row, fields in value.items()}
            frame = pd.DataFrame.from_dict(rows, orient="index").fillna("")
        else:
            frame = pd.DataFrame({"value": flatten(value)})
        blocks.append(frame.to_string())
    return "\n".join(blocks) + "\n"


def render(command: str, report: BaseModel, fmt: str) -> str:
    if fmt == "structured":
        return render_structured(command, report)
    return render_text(command, report)


def write_report(text: str, output: Optional[Union[str, Path]]) -> None:
    """Write to the output path, or to stdout when none is given."""
    if output is None:
        click.echo(text, nl=False)
        return
    Path(output).write_text(text, encoding="utf-8")
