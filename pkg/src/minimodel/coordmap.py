"""
Truncated coordinate maps between odd-model coordinate systems.

A map F: M -> M' is stored through its pullback: one polynomial in the
coordinates of M (the domain) per coordinate of M' (the codomain).

Map files:

    kind: map
    order: 4
    domain: {model: odd, coordinates: [...], pairs: [...]}
    codomain: {model: odd, basis: [...]}
    images:
      t1: "x1 + 1/2*x1*z1*xi1"
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..exactalg.linalg import span_rank
from ..exceptions import InvalidInputError, ParseError
from ..formalgeo.coordinates import Coordinates
from ..formalgeo.fieldfile import BasisSpec, CoordinateSpec, coordinates_from_spec, coordinates_to_data
from ..formalgeo.polynomial import PolyField, format_field, parse_field, substitute
from ..logging_config import get_logger, log_with_context
from ..yamlio import LINE_KEY, dump_yaml, load_yaml, parse_yaml, validate

logger = get_logger("minimodel.coordmap")


@dataclass(frozen=True)
class CoordMap:
    domain: Coordinates
    codomain: Coordinates
    images: Tuple[PolyField, ...]
    order: int

    @classmethod
    def build(
        cls,
        domain: Coordinates,
        codomain: Coordinates,
        images: Mapping[int, PolyField],
        order: Optional[int] = None,
    ) -> "CoordMap":
        """
        Raises:
            InvalidInputError: for a missing or inhomogeneous image, a constant
                term, or a linear part that is not invertible
        """
        order = get_settings().default_order if order is None else order
        ordered: List[PolyField] = []
        for index, symbol in enumerate(codomain.symbols):
            if index not in images:
                raise InvalidInputError("map has no image for a coordinate", coordinate=symbol.name)
            image = images[index]
            if image.coords != domain:
                raise InvalidInputError("map image lives in the wrong coordinates", coordinate=symbol.name)
            if image.coefficient(()):
                raise InvalidInputError("map images must vanish at the origin", coordinate=symbol.name)
            if any(d != symbol.degree for d in image.degrees()):
                raise InvalidInputError(
                    "map image has the wrong degree",
                    coordinate=symbol.name,
                    expected=symbol.degree,
                    found=image.degrees(),
                )
            ordered.append(image.with_order(order))
        result = cls(domain, codomain, tuple(ordered), order)
        linear = [result.linear_part(k) for k in range(codomain.size)]
        if codomain.size != domain.size or span_rank(linear) != domain.size:
            raise InvalidInputError(
                "linear part of the map is not invertible",
                rank=span_rank(linear),
                domain=domain.size,
                codomain=codomain.size,
            )
        return result

    def image(self, index: int) -> PolyField:
        return self.images[index]

    def linear_part(self, index: int) -> Dict[int, Fraction]:
        return {monomial[0]: value for monomial, value in self.images[index].part(1).items()}

    def as_mapping(self) -> Dict[int, PolyField]:
        return dict(enumerate(self.images))

    def is_identity(self) -> bool:
        return self.domain.size == self.codomain.size and all(
            image.terms == {(k,): Fraction(1)} for k, image in enumerate(self.images)
        )

    def truncated(self, order: int) -> "CoordMap":
        return CoordMap(self.domain, self.codomain, tuple(i.truncated(order) for i in self.images), min(order, self.order))


def identity_map(coords: Coordinates, order: Optional[int] = None) -> CoordMap:
    images = {k: PolyField(coords, {(k,): Fraction(1)}, order) for k in range(coords.size)}
    return CoordMap.build(coords, coords, images, order)


def pullback(f_map: CoordMap, field: PolyField) -> PolyField:
    """F*f for a field on the codomain."""
    if field.coords != f_map.codomain:
        raise InvalidInputError("field does not live on the codomain of the map")
    return substitute(field, f_map.as_mapping(), f_map.domain, min(f_map.order, field.order))


def compose_maps(first: CoordMap, second: CoordMap) -> CoordMap:
    """second ∘ first for first: M -> M' and second: M' -> M''."""
    if first.codomain != second.domain:
        raise InvalidInputError("maps are not composable")
    order = min(first.order, second.order)
    images = {k: pullback(first, image) for k, image in enumerate(second.images)}
    return CoordMap.build(first.domain, second.codomain, images, order)


# files


class _FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    line: Optional[int] = Field(default=None, alias=LINE_KEY)


class CoordinatesBlock(_FileModel):
    model: str = Field("odd", description="Coordinate model")
    basis: Optional[List[BasisSpec]] = Field(None, description="Graded basis for standard coordinates")
    coordinates: Optional[List[CoordinateSpec]] = Field(None, description="Explicit coordinates")
    pairs: List[Tuple[str, str]] = Field(default_factory=list, description="Darboux pairs")


class MapFile(_FileModel):
    kind: str = Field("map", description="File kind")
    order: Optional[int] = Field(None, description="Truncation order N")
    domain: CoordinatesBlock
    codomain: CoordinatesBlock
    images: Dict[str, str] = Field(..., description="Codomain coordinate -> polynomial in domain coordinates")


def map_from_data(data, path: str = "<string>") -> CoordMap:
    """
    Raises:
        ParseError: on schema violations, unknown coordinates or an invalid map
    """
    images_line = None
    if isinstance(data, dict) and isinstance(data.get("images"), dict):
        data = dict(data)
        images_line = data["images"].get(LINE_KEY)
        data["images"] = {k: str(v) for k, v in data["images"].items() if k != LINE_KEY}
    spec = validate(MapFile, data, path)
    domain = coordinates_from_spec(spec.domain, path)
    codomain = coordinates_from_spec(spec.codomain, path)
    order = spec.order if spec.order is not None else get_settings().default_order
    images: Dict[int, PolyField] = {}
    for name, text in spec.images.items():
        try:
            index = codomain.index(name)
        except InvalidInputError as e:
            raise ParseError(e.message, path, images_line)
        images[index] = parse_field(text, domain, order, path, images_line)
    try:
        result = CoordMap.build(domain, codomain, images, order)
    except ParseError:
        raise
    except InvalidInputError as e:
        raise ParseError(e.message, path, spec.line, **e.context)
    log_with_context(logger, "debug", "coordinate map loaded", path=path, order=order)
    return result


def load_map(path: Union[str, Path]) -> CoordMap:
    return map_from_data(load_yaml(path), str(path))


def parse_map(text: str, path: str = "<string>") -> CoordMap:
    return map_from_data(parse_yaml(text, path), path)


def map_to_data(f_map: CoordMap) -> dict:
    names = f_map.codomain.names()
    domain = {"model": f_map.domain.model, **coordinates_to_data(f_map.domain)}
    codomain = {"model": f_map.codomain.model, **coordinates_to_data(f_map.codomain)}
    return {
        "kind": "map",
        "order": f_map.order,
        "domain": domain,
        "codomain": codomain,
        "images": {names[k]: format_field(image) for k, image in enumerate(f_map.images)},
    }


def dump_map(f_map: CoordMap, path: Union[str, Path, None] = None) -> str:
    return dump_yaml(map_to_data(f_map), path)
