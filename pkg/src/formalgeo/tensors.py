"""
Tensor collections and their assembly into fields.

A collection stores coefficients μ^{β1..βm}_{α1..αn} keyed by (m, n) and by
the index tuples (0-based internally, 1-based in files). Entries related by
permuting the α's (and, except for ``tf``, the β's) describe one
coefficient of the assembled field; each tuple carries a sign

    lie1bi  (-1)^ε times the Koszul sign of ordering t^α ψ_β, where
            ε = Σ_k |e_{α_k}|(2 - m + Σ_{i<=k} |e_{α_i}|)
              + Σ_k (|e_{β_k}| + 1) Σ_{i>k} |e_{β_i}|   (k, i over 1..m)
    liebi   the Koszul sign alone
    tf      (-1)^ε times the Koszul sign of ordering the t^α, with
            ε = Σ_k |e_{α_k}|(1 + Σ_{i<=k} |e_{α_i}|)        for ð
            ε = |e_{β_2}|(|e_{β_1}| + 1) + Σ_k Σ_{i<=k} |e_{α_k}||e_{α_i}|  for φ

and value × sign must agree across an orbit. The assembled coefficient is
(orbit size / m! n!) × value × sign (n! alone for tf).
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..exactalg.graded import GradedSpace
from ..exactalg.scalars import format_rational, to_rational
from ..exceptions import InvalidInputError, ParseError
from ..logging_config import get_logger, log_with_context
from ..yamlio import LINE_KEY, dump_yaml, load_yaml, parse_yaml, validate
from .brackets import TensorField2, VectorField
from .coordinates import Coordinates, model_coordinates
from .polynomial import Monomial, PolyField, normalize

logger = get_logger("formalgeo.tensors")

MODELS = ("lie1bi", "tf", "liebi")

IndexKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass
class TensorCollection:
    """Sparse coefficient arrays of a structure on a graded space."""

    space: GradedSpace
    model: str
    entries: Dict[Tuple[int, int], Dict[IndexKey, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidInputError(f"unknown model {self.model!r}", allowed=list(MODELS))

    def set(self, m: int, n: int, betas, alphas, value) -> "TensorCollection":
        """Record one coefficient; indices are 0-based."""
        key = (tuple(betas), tuple(alphas))
        _check_key(self, m, n, key)
        value = to_rational(value) if not isinstance(value, Fraction) else value
        if value:
            self.entries.setdefault((m, n), {})[key] = value
        return self

    def slots(self) -> List[Tuple[int, int]]:
        return sorted(slot for slot, values in self.entries.items() if values)

    def is_zero(self) -> bool:
        return not self.slots()


@dataclass(frozen=True)
class TfStructure:
    """The degree 1 vector field ð and the degree 0 two-tensor φ."""

    vector: VectorField
    tensor: TensorField2


def _check_key(tc: TensorCollection, m: int, n: int, key: IndexKey) -> None:
    betas, alphas = key
    if len(betas) != m or len(alphas) != n:
        raise InvalidInputError("index tuples do not match the slot", slot=(m, n), key=key)
    d = tc.space.dim
    if any(not 0 <= k < d for k in betas + alphas):
        raise InvalidInputError("basis index out of range", key=key, dim=d)
    if m < 1 or n < 1:
        raise InvalidInputError("slots need m, n >= 1", slot=(m, n))
    if tc.model == "tf" and m > 2:
        raise InvalidInputError("tf structures only have m = 1 and m = 2", slot=(m, n))
    if tc.model == "liebi" and m + n < 3:
        raise InvalidInputError("liebi structures start at m+n = 3", slot=(m, n))
    degrees = tc.space.degrees
    shift = sum(degrees[b] for b in betas) - sum(degrees[a] for a in alphas)
    expected = map_degree(tc.model, m, n)
    if shift != expected:
        raise InvalidInputError(
            "coefficient breaks the degree balance",
            slot=(m, n),
            key=key,
            map_degree=shift,
            expected=expected,
        )


def map_degree(model: str, m: int, n: int) -> int:
    """Degree of μ_{m,n} as a map ⊙^n V -> (outputs)."""
    if model == "lie1bi":
        return 2 - m
    if model == "liebi":
        return 3 - m - n
    return 1 if m == 1 else 0


def _epsilon(model: str, degrees: List[int], m: int, betas, alphas) -> int:
    a = [degrees[k] for k in alphas]
    b = [degrees[k] for k in betas]
    if model == "lie1bi":
        first = sum(a[k] * (2 - m + sum(a[: k + 1])) for k in range(len(a)))
        second = sum((b[k] + 1) * sum(b[k + 1 :]) for k in range(len(b)))
        return first + second
    if model == "tf":
        if m == 1:
            return sum(a[k] * (1 + sum(a[: k + 1])) for k in range(len(a)))
        pairs = sum(a[k] * a[i] for k in range(len(a)) for i in range(k + 1))
        return b[1] * (b[0] + 1) + pairs
    return 0


def orbit_sign(
    tc: TensorCollection, coords: Coordinates, m: int, betas, alphas
) -> Tuple[int, Hashable]:
    """Sign of an index tuple and the key of the assembled coefficient it feeds; sign 0 when that coefficient vanishes identically."""
    d = tc.space.dim
    eps = _epsilon(tc.model, tc.space.degrees, m, betas, alphas)
    twist = -1 if eps % 2 else 1
    if tc.model == "tf":
        sign, monomial = normalize(coords, list(alphas))
        return sign * twist, (monomial, tuple(betas))
    word = list(alphas) + [d + k for k in betas]
    sign, monomial = normalize(coords, word)
    return sign * twist, monomial


def _orbit_size(tc: TensorCollection, betas, alphas) -> int:
    def arrangements(indices) -> int:
        total = factorial(len(indices))
        for k in set(indices):
            total //= factorial(indices.count(k))
        return total

    size = arrangements(list(alphas))
    if tc.model != "tf":
        size *= arrangements(list(betas))
    return size


def _normalization(tc: TensorCollection, m: int, n: int) -> int:
    return factorial(n) if tc.model == "tf" else factorial(m) * factorial(n)


def _invariants(tc: TensorCollection, coords: Coordinates) -> Dict[Tuple[int, int], Dict[Hashable, Tuple[Fraction, IndexKey]]]:
    """
    value × sign per orbit, checked for consistency.

    Raises:
        InvalidInputError: when two entries of one orbit disagree, or an entry
            sits on an orbit whose coefficient vanishes identically
    """
    result: Dict[Tuple[int, int], Dict[Hashable, Tuple[Fraction, IndexKey]]] = {}
    for (m, n), values in tc.entries.items():
        slot: Dict[Hashable, Tuple[Fraction, IndexKey]] = {}
        for (betas, alphas), value in sorted(values.items()):
            sign, key = orbit_sign(tc, coords, m, betas, alphas)
            if not sign:
                raise InvalidInputError(
                    "coefficient violates the symmetry of its slot",
                    slot=(m, n),
                    key=_one_based((betas, alphas)),
                )
            invariant = value * sign
            if key in slot and slot[key][0] != invariant:
                raise InvalidInputError(
                    "coefficients related by symmetry disagree",
                    slot=(m, n),
                    first=_one_based(slot[key][1]),
                    second=_one_based((betas, alphas)),
                )
            slot.setdefault(key, (invariant, (betas, alphas)))
        result[(m, n)] = slot
    return result


def _one_based(key: IndexKey) -> str:
    betas, alphas = key
    return f"{','.join(str(b + 1) for b in betas)}|{','.join(str(a + 1) for a in alphas)}"


def assemble(
    tc: TensorCollection, order: Optional[int] = None
) -> Union[PolyField, TfStructure]:
    """
    Γ = Σ Γ_m for lie1bi (odd model), f for liebi (even model), or the
    pair (ð, φ) for tf (flat model).

    Raises:
        InvalidInputError: on symmetry violations
    """
    coords = model_coordinates(tc.space, tc.model)
    invariants = _invariants(tc, coords)
    if tc.model == "tf":
        return _assemble_tf(tc, coords, invariants, order)
    terms: Dict[Monomial, Fraction] = {}
    for (m, n), slot in invariants.items():
        for monomial, (invariant, (betas, alphas)) in slot.items():
            weight = Fraction(_orbit_size(tc, betas, alphas), _normalization(tc, m, n))
            terms[monomial] = terms.get(monomial, Fraction(0)) + weight * invariant
    result = PolyField(coords, terms, order)
    log_with_context(
        logger, "debug", "tensor collection assembled", model=tc.model, terms=len(result)
    )
    return result


def _assemble_tf(tc, coords, invariants, order) -> TfStructure:
    vector: Dict[int, Dict[Monomial, Fraction]] = {}
    tensor: Dict[Tuple[int, int], Dict[Monomial, Fraction]] = {}
    for (m, n), slot in invariants.items():
        for (monomial, betas), (invariant, (_, alphas)) in slot.items():
            weight = Fraction(_orbit_size(tc, betas, alphas), _normalization(tc, m, n))
            target = vector.setdefault(betas[0], {}) if m == 1 else tensor.setdefault(betas, {})
            target[monomial] = target.get(monomial, Fraction(0)) + weight * invariant
    return TfStructure(
        VectorField.build(coords, {k: PolyField(coords, v, order) for k, v in vector.items()}, 1),
        TensorField2.build(coords, {k: PolyField(coords, v, order) for k, v in tensor.items()}, 0),
    )


def _representative(tc: TensorCollection, coords: Coordinates, m: int, key: Hashable) -> Tuple[int, IndexKey]:
    d = tc.space.dim
    if tc.model == "tf":
        monomial, betas = key
        alphas = tuple(monomial)
    else:
        alphas = tuple(s for s in key if s < d)
        betas = tuple(s - d for s in key if s >= d)
    sign, _ = orbit_sign(tc, coords, m, betas, alphas)
    return sign, (betas, alphas)


def extract(
    structure: Union[PolyField, TfStructure], tc_template: TensorCollection, m: int, n: int
) -> Dict[IndexKey, Fraction]:
    """
    Coefficients of slot (m,n) at sorted index tuples; the inverse of assemble
    on collections given at sorted tuples.
    """
    coords = model_coordinates(tc_template.space, tc_template.model)
    d = tc_template.space.dim
    found: Dict[IndexKey, Fraction] = {}
    if isinstance(structure, TfStructure):
        if m == 1:
            pieces = [((monomial, (beta,)), value) for beta, comp in structure.vector.components for monomial, value in comp.items()]
        else:
            pieces = [((monomial, betas), value) for betas, comp in structure.tensor.components for monomial, value in comp.items()]
        pieces = [(key, value) for key, value in pieces if len(key[0]) == n]
    else:
        pieces = [
            (monomial, value)
            for monomial, value in structure.items()
            if sum(1 for s in monomial if s >= d) == m and sum(1 for s in monomial if s < d) == n
        ]
    for key, value in pieces:
        sign, (betas, alphas) = _representative(tc_template, coords, m, key)
        weight = Fraction(_normalization(tc_template, m, n), _orbit_size(tc_template, betas, alphas))
        found[(betas, alphas)] = value * weight * sign
    return found


def canonical_entries(tc: TensorCollection) -> TensorCollection:
    """The same collection with every orbit stored once at sorted index tuples."""
    coords = model_coordinates(tc.space, tc.model)
    result = TensorCollection(tc.space, tc.model)
    for (m, _), slot in _invariants(tc, coords).items():
        for key, (invariant, _) in slot.items():
            sign, (betas, alphas) = _representative(tc, coords, m, key)
            if invariant:
                result.entries.setdefault((m, len(alphas)), {})[(betas, alphas)] = invariant * sign
    return result


def extract_all(structure: Union[PolyField, TfStructure], tc_template: TensorCollection) -> TensorCollection:
    """Every slot present in the structure, as a collection."""
    result = TensorCollection(tc_template.space, tc_template.model)
    d = tc_template.space.dim
    slots = set()
    if isinstance(structure, TfStructure):
        slots |= {(1, len(mono)) for _, comp in structure.vector.components for mono, _ in comp.items()}
        slots |= {(2, len(mono)) for _, comp in structure.tensor.components for mono, _ in comp.items()}
    else:
        for monomial, _ in structure.items():
            fibers = sum(1 for s in monomial if s >= d)
            slots.add((fibers, len(monomial) - fibers))
    for m, n in sorted(slots):
        values = extract(structure, tc_template, m, n)
        if values:
            result.entries[(m, n)] = values
    return result


# files

_KEY = re.compile(r"^\s*mu\[(\d+),(\d+)\]\[([\d,\s]*)\|([\d,\s]*)\]\s*$")


class _FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    line: Optional[int] = Field(default=None, alias=LINE_KEY)


class BasisSpec(_FileModel):
    name: str
    degree: int = 0


class TensorFile(_FileModel):
    kind: str = Field("tensors", description="File kind")
    model: str = Field(..., description="lie1bi, tf or liebi")
    order: Optional[int] = Field(None, description="Truncation order N")
    basis: List[BasisSpec] = Field(..., description="Graded basis of V")
    coefficients: Dict[str, Union[int, str]] = Field(
        default_factory=dict, description="mu[m,n][beta...|alpha...] = p/q, 1-based"
    )


def _indices(text: str) -> Tuple[int, ...]:
    return tuple(int(k) - 1 for k in text.replace(" ", "").split(",") if k)


def tensors_from_data(data, path: str = "<string>") -> Tuple[TensorCollection, Optional[int]]:
    """
    Raises:
        ParseError: on schema violations, malformed keys or coefficients
    """
    if isinstance(data, dict) and isinstance(data.get("coefficients"), dict):
        data = dict(data)
        coefficient_line = data["coefficients"].get(LINE_KEY)
        data["coefficients"] = {k: v for k, v in data["coefficients"].items() if k != LINE_KEY}
    else:
        coefficient_line = None
    spec = validate(TensorFile, data, path)
    if spec.model not in MODELS:
        raise ParseError(f"unknown model {spec.model!r}", path, spec.line)
    space = GradedSpace.from_pairs((b.name, b.degree) for b in spec.basis)
    tc = TensorCollection(space, spec.model)
    for key, value in spec.coefficients.items():
        match = _KEY.match(key)
        if not match:
            raise ParseError(f"malformed coefficient key {key!r}", path, coefficient_line)
        m, n = int(match.group(1)), int(match.group(2))
        try:
            tc.set(m, n, _indices(match.group(3)), _indices(match.group(4)), to_rational(value))
        except ParseError as e:
            raise ParseError(e.message, path, coefficient_line)
        except InvalidInputError as e:
            raise ParseError(f"{key}: {e.message}", path, coefficient_line)
    _invariants(tc, model_coordinates(space, spec.model))
    return tc, spec.order


def load_tensors(path: Union[str, Path]) -> Tuple[TensorCollection, Optional[int]]:
    return tensors_from_data(load_yaml(path), str(path))


def parse_tensors(text: str, path: str = "<string>") -> Tuple[TensorCollection, Optional[int]]:
    return tensors_from_data(parse_yaml(text, path), path)


def tensors_to_data(tc: TensorCollection, order: Optional[int] = None) -> dict:
    data: dict = {"kind": "tensors", "model": tc.model}
    if order is not None:
        data["order"] = order
    data["basis"] = [{"name": name, "degree": degree} for name, degree in tc.space.basis]
    coefficients = {}
    for (m, n) in tc.slots():
        for (betas, alphas), value in sorted(tc.entries[(m, n)].items()):
            coefficients[f"mu[{m},{n}][{_one_based((betas, alphas))}]"] = format_rational(value)
    data["coefficients"] = coefficients
    return data


def dump_tensors(
    tc: TensorCollection, path: Union[str, Path, None] = None, order: Optional[int] = None
) -> str:
    return dump_yaml(tensors_to_data(tc, order), path)


