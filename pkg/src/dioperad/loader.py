"""
Presentation files.

A presentation file is YAML::

    name: lie1bi
    description: Lie 1-bialgebras
    generators:
      - {name: delta, arity: [2, 1], degree: 0, outputs: sign}
      - {name: bracket, arity: [1, 2], degree: 1}
    relations:
      - name: jacobi
        slot: [1, 3]
        terms:
          - coeff: 1
            tree: "bracket(out:[1], in:[bracket(out:[*], in:[1,2]), 3])"
            symmetrize: {inputs: trivial}

Coefficients are integers or "p/q" strings. ``symmetrize`` replaces a term by
the sum of its images under all permutations of the named sides, weighted by
the given character.
"""

from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..exactalg.scalars import format_rational, to_rational
from ..exceptions import DioperadError, InvalidInputError, ParseError
from ..logging_config import get_logger, log_with_context
from ..treespace import Combination, add_into, format_term, parse_term, term_arity
from ..yamlio import LINE_KEY, dump_yaml, load_yaml, parse_yaml, validate
from .collection import ArityComponent, BimoduleCollection, character_component
from .free import symmetrize
from .quadratic import Presentation

logger = get_logger("dioperad.loader")

CATALOGUE = ("lie", "com", "lie1bi", "liebi", "tf", "tf_wedge", "tf_sym")


class _FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    line: Optional[int] = Field(default=None, alias=LINE_KEY)


class GeneratorSpec(_FileModel):
    name: str = Field(..., description="Generator name used in tree terms")
    arity: Tuple[int, int] = Field(..., description="(outputs, inputs)")
    degree: int = Field(0, description="Cohomological degree")
    outputs: Literal["trivial", "sign", "regular", "regular_sign"] = "trivial"
    inputs: Literal["trivial", "sign", "regular", "regular_sign"] = "trivial"


class SymmetrizeSpec(_FileModel):
    outputs: Optional[Literal["trivial", "sign"]] = None
    inputs: Optional[Literal["trivial", "sign"]] = None


class TermSpec(_FileModel):
    coeff: Union[int, str] = 1
    tree: str
    symmetrize: Optional[SymmetrizeSpec] = None


class RelationSpec(_FileModel):
    name: str
    slot: Tuple[int, int]
    terms: List[TermSpec]


class PresentationFile(_FileModel):
    name: str
    description: str = ""
    generators: List[GeneratorSpec]
    relations: List[RelationSpec] = Field(default_factory=list)


def build_collection(specs: List[GeneratorSpec], path: str) -> BimoduleCollection:
    collection = BimoduleCollection()
    for spec in specs:
        m, n = spec.arity
        try:
            collection.add(
                character_component(spec.name, m, n, spec.degree, spec.outputs, spec.inputs)
            )
        except ParseError:
            raise
        except DioperadError as e:
            raise ParseError(e.message, path, spec.line)
    return collection


def build_relation(
    spec: RelationSpec, collection: BimoduleCollection, path: str
) -> Combination:
    vector: Combination = {}
    for term_spec in spec.terms:
        line = term_spec.line or spec.line
        term = parse_term(term_spec.tree, path, line)
        if term_arity(term) != tuple(spec.slot):
            raise ParseError(
                f"term of relation {spec.name!r} has arity {term_arity(term)}, "
                f"expected {tuple(spec.slot)}",
                path,
                line,
            )
        coefficient = to_rational(term_spec.coeff)
        try:
            piece = {term: coefficient}
            if term_spec.symmetrize is not None:
                piece = symmetrize(
                    collection,
                    piece,
                    term_spec.symmetrize.outputs,
                    term_spec.symmetrize.inputs,
                )
        except DioperadError as e:
            raise ParseError(e.message, path, line)
        add_into(vector, piece)
    return vector


def presentation_from_data(data, path: str = "<string>") -> Presentation:
    """
    Build a presentation from loaded YAML data.

    Raises:
        ParseError: on schema violations, malformed trees or unknown generators
    """
    spec = validate(PresentationFile, data, path)
    collection = build_collection(spec.generators, path)
    relations: Dict[Tuple[int, int], List[Combination]] = {}
    for relation in spec.relations:
        vector = build_relation(relation, collection, path)
        relations.setdefault(tuple(relation.slot), []).append(vector)
    try:
        presentation = Presentation(spec.name, collection, relations, spec.description)
    except InvalidInputError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(e.message, path, spec.line)
    log_with_context(
        logger,
        "debug",
        "presentation loaded",
        presentation=spec.name,
        generators=len(spec.generators),
        relations=len(spec.relations),
    )
    return presentation


def load_presentation(path: Union[str, Path]) -> Presentation:
    return presentation_from_data(load_yaml(path), str(path))


def parse_presentation(text: str, path: str = "<string>") -> Presentation:
    return presentation_from_data(parse_yaml(text, path), path)


def catalogue_dir() -> Path:
    configured = get_settings().presentations_dir
    if configured:
        return Path(configured)
    return Path(__file__).resolve().parents[2] / "data" / "presentations"


def catalogue() -> List[str]:
    """Names of the shipped presentations found on disk."""
    directory = catalogue_dir()
    return sorted(p.stem for p in directory.glob("*.yaml"))


def load_named(name_or_path: str) -> Presentation:
    """
    Load a catalogue presentation by name, or a presentation file by path.

    Raises:
        InvalidInputError: if the name is neither a catalogue entry nor a file
    """
    candidate = Path(name_or_path)
    if candidate.suffix in (".yaml", ".yml") or candidate.exists():
        return load_presentation(candidate)
    path = catalogue_dir() / f"{name_or_path}.yaml"
    if not path.exists():
        raise InvalidInputError(
            f"unknown presentation {name_or_path!r}", known=catalogue()
        )
    return load_presentation(path)


def _side_character(component: ArityComponent, index: int, actions) -> str:
    characters = set()
    for tau in actions:
        column = tau.column(index)
        if column == {index: 1}:
            characters.add("trivial")
        elif column == {index: -1}:
            characters.add("sign")
        elif len(column) == 1 and list(column.values()) == [1]:
            characters.add("regular")
        elif len(column) == 1 and list(column.values()) == [-1]:
            characters.add("regular_sign")
        else:
            characters.add("other")
    if not characters:
        return "trivial"
    if len(characters) != 1 or "other" in characters:
        raise InvalidInputError(
            "generator action is not a character or a regular pair",
            generator=component.generators[index].name,
        )
    return characters.pop()


def presentation_to_data(presentation: Presentation) -> dict:
    """
    Plain data for a presentation whose generators are characters or
    regular Σ_2 pairs, relations written term by term in canonical form.

    Raises:
        InvalidInputError: if a generator action has no file representation
    """
    generators = []
    for (m, n), component in sorted(presentation.generators.components.items()):
        for index, g in enumerate(component.generators):
            if g.name.endswith(".t"):
                continue
            generators.append(
                {
                    "name": g.name,
                    "arity": [m, n],
                    "degree": g.degree,
                    "outputs": _side_character(component, index, component.out_actions),
                    "inputs": _side_character(component, index, component.in_actions),
                }
            )
    relations = []
    for (m, n), vectors in sorted(presentation.relations.items()):
        for k, vector in enumerate(vectors):
            relations.append(
                {
                    "name": f"r{m}{n}_{k + 1}",
                    "slot": [m, n],
                    "terms": [
                        {"coeff": format_rational(c), "tree": format_term(t)}
                        for t, c in sorted(vector.items())
                    ],
                }
            )
    return {
        "name": presentation.name,
        "description": presentation.description,
        "generators": generators,
        "relations": relations,
    }


def dump_presentation(presentation: Presentation, path: Union[str, Path, None] = None) -> str:
    return dump_yaml(presentation_to_data(presentation), path)
