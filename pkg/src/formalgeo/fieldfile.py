"""
Field files: a coordinate system plus one polynomial field.

    kind: field
    model: odd
    order: 4
    coordinates:
      - {name: x1, degree: 0, side: base}
      - {name: psi1, degree: 1, side: fiber}
    pairs: [[x1, psi1]]
    field: "x1*psi1"

``basis`` (as in tensor files) may replace ``coordinates`` and ``pairs``
to get the standard t/psi coordinates of a model.
"""

from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..exactalg.graded import GradedSpace
from ..exceptions import InvalidInputError, ParseError
from ..logging_config import get_logger, log_with_context
from ..yamlio import LINE_KEY, dump_yaml, load_yaml, parse_yaml, validate
from .coordinates import Coordinates, custom_coordinates, even_model, odd_model
from .polynomial import PolyField, format_field, parse_field

logger = get_logger("formalgeo.fieldfile")


class _FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    line: Optional[int] = Field(default=None, alias=LINE_KEY)


class CoordinateSpec(_FileModel):
    name: str
    degree: int
    side: str


class BasisSpec(_FileModel):
    name: str
    degree: int = 0


class FieldFile(_FileModel):
    kind: str = Field("field", description="File kind")
    model: str = Field(..., description="odd or even")
    order: Optional[int] = Field(None, description="Truncation order N")
    basis: Optional[List[BasisSpec]] = Field(None, description="Graded basis for standard coordinates")
    coordinates: Optional[List[CoordinateSpec]] = Field(None, description="Explicit coordinates")
    pairs: List[Tuple[str, str]] = Field(default_factory=list, description="Darboux pairs (base, fiber)")
    field: str = Field("0", description="Polynomial text")


def coordinates_from_spec(spec: FieldFile, path: str) -> Coordinates:
    if spec.model not in ("odd", "even"):
        raise ParseError(f"coordinates need the odd or even model, not {spec.model!r}", path, spec.line)
    try:
        if spec.coordinates is not None:
            entries = [(c.name, c.degree, c.side) for c in spec.coordinates]
            return custom_coordinates(spec.model, entries, spec.pairs)
        if spec.basis is not None:
            space = GradedSpace.from_pairs((b.name, b.degree) for b in spec.basis)
            return odd_model(space) if spec.model == "odd" else even_model(space)
    except InvalidInputError as e:
        raise ParseError(e.message, path, spec.line)
    raise ParseError("field file needs either coordinates or basis", path, spec.line)


def field_from_data(data, path: str = "<string>") -> PolyField:
    """
    Raises:
        ParseError: on schema violations or an unreadable field
    """
    spec = validate(FieldFile, data, path)
    coords = coordinates_from_spec(spec, path)
    order = spec.order if spec.order is not None else get_settings().default_order
    field = parse_field(spec.field, coords, order, path, spec.line)
    log_with_context(logger, "debug", "field loaded", path=path, terms=len(field), order=order)
    return field


def load_field(path: Union[str, Path]) -> PolyField:
    return field_from_data(load_yaml(path), str(path))


def parse_field_file(text: str, path: str = "<string>") -> PolyField:
    return field_from_data(parse_yaml(text, path), path)


def coordinates_to_data(coords: Coordinates) -> dict:
    names = coords.names()
    return {
        "coordinates": [
            {"name": s.name, "degree": s.degree, "side": s.side} for s in coords.symbols
        ],
        "pairs": [[names[b], names[f]] for b, f in coords.pairs],
    }


def field_to_data(field: PolyField) -> dict:
    data = {"kind": "field", "model": field.coords.model, "order": field.order}
    data.update(coordinates_to_data(field.coords))
    data["field"] = format_field(field)
    return data


def dump_field(field: PolyField, path: Union[str, Path, None] = None) -> str:
    return dump_yaml(field_to_data(field), path)


