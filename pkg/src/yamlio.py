"""
YAML input/output shared by presentation, tensor and coordinate-map files.

Mappings read from files remember the line they start on under ``__line__``
so that schema and syntax errors can point at the offending entry.
"""

from pathlib import Path
from typing import Any, Sequence, Type, TypeVar, Union

import yaml
from pydantic import BaseModel, ValidationError

from .exceptions import ParseError

LINE_KEY = "__line__"

ModelT = TypeVar("ModelT", bound=BaseModel)


class LineLoader(yaml.SafeLoader):
    """SafeLoader that records the starting line of every mapping."""

    def construct_mapping(self, node, deep=False):
        mapping = super().construct_mapping(node, deep=deep)
        mapping[LINE_KEY] = node.start_mark.line + 1
        return mapping


def load_yaml(path: Union[str, Path]) -> Any:
    """
    Read a YAML file with line tracking.

    Raises:
        ParseError: if the file is missing or is not valid YAML
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", str(path))
    return parse_yaml(text, str(path))


def parse_yaml(text: str, path: str = "<string>") -> Any:
    try:
        return yaml.load(text, Loader=LineLoader)
    except yaml.MarkedYAMLError as e:
        line = e.problem_mark.line + 1 if e.problem_mark is not None else None
        raise ParseError(f"invalid YAML: {e.problem}", path, line)
    except yaml.YAMLError as e:
        raise ParseError(f"invalid YAML: {e}", path)


def line_of(data: Any, loc: Sequence[Union[str, int]]) -> Union[int, None]:
    """Line of the innermost mapping on the path ``loc`` that recorded one."""
    line = data.get(LINE_KEY) if isinstance(data, dict) else None
    node = data
    for key in loc:
        try:
            node = node[key]
        except (KeyError, IndexError, TypeError):
            break
        if isinstance(node, dict) and LINE_KEY in node:
            line = node[LINE_KEY]
    return line


def validate(model: Type[ModelT], data: Any, path: str) -> ModelT:
    """
    Validate loaded YAML against a pydantic model.

    Raises:
        ParseError: naming the first failing field and its line
    """
    if not isinstance(data, dict):
        raise ParseError("top level must be a mapping", path, 1)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = first.get("loc", ())
        where = ".".join(str(part) for part in loc)
        raise ParseError(f"{where}: {first.get('msg')}", path, line_of(data, loc))


def strip_lines(data: Any) -> Any:
    if isinstance(data, dict):
        return {k: strip_lines(v) for k, v in data.items() if k != LINE_KEY}
    if isinstance(data, list):
        return [strip_lines(v) for v in data]
    return data


def dump_yaml(data: Any, path: Union[str, Path, None] = None) -> str:
    """Serialize plain data with stable key order; writes the file when a path is given."""
    text = yaml.safe_dump(strip_lines(data), sort_keys=False, allow_unicode=True)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
