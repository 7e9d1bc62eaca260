"""
Coordinate systems on the formal graded manifolds built from a graded space.

* odd model, V ⊕ V*[1]: base symbols ``t{k}`` of degree -|e_k| and fiber
  symbols ``psi{k}`` of degree |e_k|+1; each pair sums to 1 and the
  bracket has degree -1.
* even model, V[1] ⊕ V*[1]: ``t{k}`` of degree 1-|e_k| and ``psi{k}`` of
  degree 1+|e_k|; pairs sum to 2 and the bracket has degree -2.
* flat model, V alone: only the ``t{k}``, used for vector and tensor fields.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exactalg.graded import GradedSpace
from ..exceptions import InvalidInputError

BASE = "base"
FIBER = "fiber"
MODELS = ("odd", "even", "flat")
SHIFTS = {"odd": 1, "even": 2, "flat": 0}


@dataclass(frozen=True)
class Symbol:
    name: str
    degree: int
    side: str

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class Coordinates:
    """
    Ordered symbols plus the Darboux pairs (base index, fiber index).

    Monomials sort symbols by position, so every base symbol listed before
    every fiber symbol puts t's first in normal form.
    """

    model: str
    symbols: Tuple[Symbol, ...]
    pairs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.model not in MODELS:
            raise InvalidInputError(f"unknown coordinate model {self.model!r}", allowed=MODELS)
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise InvalidInputError("coordinate names must be unique", names=names)
        shift = SHIFTS[self.model]
        for base, fiber in self.pairs:
            if self.symbols[base].side != BASE or self.symbols[fiber].side != FIBER:
                raise InvalidInputError(
                    "pairs must join a base symbol to a fiber symbol",
                    pair=(self.symbols[base].name, self.symbols[fiber].name),
                )
            if self.symbols[base].degree + self.symbols[fiber].degree != shift:
                raise InvalidInputError(
                    "paired degrees must add up to the pairing degree",
                    pair=(self.symbols[base].name, self.symbols[fiber].name),
                    expected=shift,
                )

    @property
    def shift(self) -> int:
        return SHIFTS[self.model]

    @property
    def size(self) -> int:
        return len(self.symbols)

    def degree(self, index: int) -> int:
        return self.symbols[index].degree

    def degrees(self) -> List[int]:
        return [s.degree for s in self.symbols]

    def index(self, name: str) -> int:
        for position, symbol in enumerate(self.symbols):
            if symbol.name == name:
                return position
        raise InvalidInputError(
            f"unknown coordinate {name!r}", known=[s.name for s in self.symbols]
        )

    def names(self) -> List[str]:
        return [s.name for s in self.symbols]

    def side_indices(self, side: str) -> List[int]:
        return [k for k, s in enumerate(self.symbols) if s.side == side]

    def partner(self, index: int) -> Optional[int]:
        for base, fiber in self.pairs:
            if base == index:
                return fiber
            if fiber == index:
                return base
        return None

    def require_bracket(self) -> None:
        if self.model == "flat" or not self.pairs:
            raise InvalidInputError("the flat model carries no Poisson bracket", model=self.model)


def _standard(space: GradedSpace, model: str, base_shift: int, fiber_shift: int) -> Coordinates:
    d = space.dim
    symbols = [Symbol(f"t{k + 1}", base_shift - space.degree(k), BASE) for k in range(d)]
    if model != "flat":
        symbols += [Symbol(f"psi{k + 1}", fiber_shift + space.degree(k), FIBER) for k in range(d)]
        pairs = tuple((k, d + k) for k in range(d))
    else:
        pairs = ()
    return Coordinates(model, tuple(symbols), pairs)


def odd_model(space: GradedSpace) -> Coordinates:
    return _standard(space, "odd", 0, 1)


def even_model(space: GradedSpace) -> Coordinates:
    return _standard(space, "even", 1, 1)


def flat_model(space: GradedSpace) -> Coordinates:
    return _standard(space, "flat", 0, 0)


def model_coordinates(space: GradedSpace, model: str) -> Coordinates:
    """Coordinates for a structure family: lie1bi lives on the odd model, liebi on the even one, tf on the flat one."""
    builders = {"lie1bi": odd_model, "liebi": even_model, "tf": flat_model}
    if model not in builders:
        raise InvalidInputError(f"unknown model {model!r}", allowed=sorted(builders))
    return builders[model](space)


def custom_coordinates(
    model: str,
    entries: Iterable[Tuple[str, int, str]],
    pairs: Sequence[Tuple[str, str]] = (),
) -> Coordinates:
    """Coordinates from (name, degree, side) triples and named pairs."""
    symbols = tuple(Symbol(name, int(degree), side) for name, degree, side in entries)
    for symbol in symbols:
        if symbol.side not in (BASE, FIBER):
            raise InvalidInputError(f"unknown side {symbol.side!r}", symbol=symbol.name)
    position: Dict[str, int] = {s.name: k for k, s in enumerate(symbols)}
    try:
        indexed = tuple((position[a], position[b]) for a, b in pairs)
    except KeyError as e:
        raise InvalidInputError(f"pair names an unknown coordinate {e.args[0]!r}")
    return Coordinates(model, symbols, indexed)
