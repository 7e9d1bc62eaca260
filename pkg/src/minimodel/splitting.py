"""
Cohomological splitting of the quadratic part of a structure.

The quadratic part Γ₂ of a degree 2 function on the odd model acts on
linear base coordinates by t ↦ {Γ₂ • t}. Per degree the base coordinates
split into x (a complement of the kernel), y = δx and z (a complement of
the image inside the kernel). Adapted coordinates are x, y, z followed by
their partners ψ, φ, ξ, so that Γ₂ becomes Σ y^a ψ_a.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..exactalg.linalg import Echelon, Vector, quotient_basis, rank_kernel, solve_in_basis
from ..exactalg.matrix import SignedMatrix
from ..exceptions import InvalidInputError
from ..formalgeo.brackets import poisson_bracket
from ..formalgeo.coordinates import BASE, FIBER, Coordinates, Symbol
from ..formalgeo.polynomial import PolyField
from ..logging_config import get_logger, log_with_context

logger = get_logger("minimodel.splitting")

LinearMap = Dict[int, Vector]


@dataclass(frozen=True)
class Splitting:
    """
    Adapted coordinates for a quadratic part.

    ``rows[j]`` expresses the j-th adapted base coordinate as a combination
    of source base symbols; the index tuples point into ``target``.
    """

    source: Coordinates
    target: Coordinates
    rows: Tuple[Vector, ...]
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    z: Tuple[int, ...]
    psi: Tuple[int, ...]
    phi: Tuple[int, ...]
    xi: Tuple[int, ...]

    @property
    def dims(self) -> Dict[str, int]:
        return {"H": len(self.z), "B": len(self.x)}

    @property
    def minimal_symbols(self) -> Tuple[int, ...]:
        return self.z + self.xi

    @property
    def contractible_symbols(self) -> Tuple[int, ...]:
        return self.x + self.y + self.psi + self.phi


def linear_differential(gamma: PolyField, symbols: Sequence[int]) -> LinearMap:
    """s ↦ linear part of {Γ₂ • s} for the given symbols."""
    coords = gamma.coords
    quadratic = gamma.part(2)
    result: LinearMap = {}
    for symbol in symbols:
        image = poisson_bracket(quadratic, PolyField(coords, {(symbol,): Fraction(1)}, gamma.order))
        result[symbol] = {monomial[0]: value for monomial, value in image.part(1).items()}
    return result


def apply_linear(differential: LinearMap, vector: Vector) -> Vector:
    out: Vector = {}
    for symbol, coefficient in vector.items():
        for target, value in differential.get(symbol, {}).items():
            total = out.get(target, Fraction(0)) + coefficient * value
            if total:
                out[target] = total
            else:
                out.pop(target, None)
    return out


def kernel(differential: LinearMap, symbols: Sequence[int], size: int) -> List[Vector]:
    """Kernel of the differential on the span of the symbols, lexicographic basis."""
    if not symbols:
        return []
    entries = {
        (target, column): value
        for column, symbol in enumerate(symbols)
        for target, value in differential.get(symbol, {}).items()
    }
    _, vectors = rank_kernel(SignedMatrix(size, len(symbols), entries))
    return [{symbols[k]: v for k, v in vector.items()} for vector in vectors]


def image(differential: LinearMap, symbols: Sequence[int]) -> Echelon:
    return Echelon(differential.get(s, {}) for s in symbols)


def split_quadratic(gamma: PolyField) -> Splitting:
    """
    Raises:
        InvalidInputError: for a field off the odd model or a quadratic part
            whose differential does not square to zero
    """
    source = gamma.coords
    if source.model != "odd":
        raise InvalidInputError("splittings are built on the odd model", model=source.model)
    bases = source.side_indices(BASE)
    differential = linear_differential(gamma, bases)
    for symbol in bases:
        if apply_linear(differential, differential[symbol]):
            raise InvalidInputError(
                "quadratic part does not square to zero",
                symbol=source.symbols[symbol].name,
            )

    blocks: Dict[int, List[int]] = {}
    for symbol in bases:
        blocks.setdefault(source.degree(symbol), []).append(symbol)

    xs: List[Tuple[int, Vector]] = []
    ys: List[Tuple[int, Vector]] = []
    zs: List[Tuple[int, Vector]] = []
    incoming: Dict[int, List[Vector]] = {}
    for degree in sorted(blocks):
        block = blocks[degree]
        closed = kernel(differential, block, source.size)
        echelon = Echelon({block.index(s): v for s, v in vector.items()} for vector in closed)
        for position in quotient_basis(len(block), echelon):
            x = {block[position]: Fraction(1)}
            y = apply_linear(differential, x)
            xs.append((degree, x))
            ys.append((degree + 1, y))
            incoming.setdefault(degree + 1, []).append(y)
        exact = Echelon(incoming.get(degree, []))
        for vector in closed:
            if exact.add(vector):
                zs.append((degree, vector))

    symbols: List[Symbol] = []
    rows: List[Vector] = []
    for prefix, group in (("x", xs), ("y", ys), ("z", zs)):
        for k, (degree, vector) in enumerate(group):
            symbols.append(Symbol(f"{prefix}{k + 1}", degree, BASE))
            rows.append(vector)
    count = len(symbols)
    if count != len(bases):
        raise InvalidInputError("splitting does not span the base coordinates", found=count, expected=len(bases))
    for prefix, group in (("psi", xs), ("phi", ys), ("xi", zs)):
        for k, (degree, _) in enumerate(group):
            symbols.append(Symbol(f"{prefix}{k + 1}", source.shift - degree, FIBER))
    target = Coordinates("odd", tuple(symbols), tuple((j, count + j) for j in range(count)))

    nx, ny = len(xs), len(ys)
    x = tuple(range(nx))
    y = tuple(range(nx, nx + ny))
    z = tuple(range(nx + ny, count))
    splitting = Splitting(
        source=source,
        target=target,
        rows=tuple(rows),
        x=x,
        y=y,
        z=z,
        psi=tuple(count + k for k in x),
        phi=tuple(count + k for k in y),
        xi=tuple(count + k for k in z),
    )
    log_with_context(logger, "debug", "quadratic part split", **splitting.dims)
    return splitting


def linear_images(splitting: Splitting, order: int) -> Dict[int, PolyField]:
    """
    Source symbols in adapted coordinates: t = P t' with P the inverse of
    the row matrix, and ψ = Pᵀ⁻¹ ψ'.
    """
    source, target = splitting.source, splitting.target
    images: Dict[int, PolyField] = {}
    count = len(splitting.rows)
    for base in source.side_indices(BASE):
        coefficients = solve_in_basis(splitting.rows, {base: Fraction(1)})
        if coefficients is None:
            raise InvalidInputError("adapted coordinates are not invertible", symbol=source.symbols[base].name)
        images[base] = PolyField(target, {(j,): c for j, c in coefficients.items()}, order)
        fiber = source.partner(base)
        if fiber is not None:
            terms = {(count + j,): row[base] for j, row in enumerate(splitting.rows) if base in row}
            images[fiber] = PolyField(target, terms, order)
    return images


def contractible_part(splitting: Splitting, order: int) -> PolyField:
    """Γ₁ = Σ y^a ψ_a."""
    target = splitting.target
    terms = {(y, psi): Fraction(1) for y, psi in zip(splitting.y, splitting.psi)}
    return PolyField(target, terms, order)
