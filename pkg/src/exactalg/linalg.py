"""
Exact linear algebra kernel.

Vectors are sparse ``{index: Fraction}`` dicts. ``Echelon`` keeps an
incrementally built row-echelon basis whose pivots are the smallest column
of each row; reducing a vector against it yields a unique normal form
supported on non-pivot columns, which is what quotient spaces use.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exceptions import InvalidInputError
from .matrix import SignedMatrix

Vector = Dict[int, Fraction]


def clean(vector: Dict[int, Fraction]) -> Vector:
    return {k: Fraction(v) for k, v in vector.items() if v}


def axpy(target: Vector, factor: Fraction, source: Vector) -> None:
    """target += factor * source, in place, dropping zeros."""
    if not factor:
        return
    for k, v in source.items():
        value = target.get(k, Fraction(0)) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class Echelon:
    """Row-echelon basis of a subspace of Q^n with incremental insertion."""

    def __init__(self, vectors: Iterable[Vector] = ()):
        self.rows: Dict[int, Vector] = {}
        for vector in vectors:
            self.add(vector)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, vector: Vector) -> Vector:
        """Normal form of a vector modulo the span."""
        result = clean(vector)
        while True:
            hits = [k for k in result if k in self.rows]
            if not hits:
                return result
            pivot = min(hits)
            axpy(result, -result[pivot], self.rows[pivot])

    def add(self, vector: Vector) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        residue = self.reduce(vector)
        if not residue:
            return False
        pivot = min(residue)
        scale = 1 / residue[pivot]
        self.rows[pivot] = {k: v * scale for k, v in residue.items()}
        return True

    def contains(self, vector: Vector) -> bool:
        return not self.reduce(vector)

    def basis(self) -> List[Vector]:
        return [dict(self.rows[p]) for p in self.pivots]

    def fully_reduced(self) -> Dict[int, Vector]:
        """Reduced row echelon rows keyed by pivot."""
        pivots = self.pivots
        reduced = {p: dict(self.rows[p]) for p in pivots}
        for p in reversed(pivots):
            for q in pivots:
                if q < p and p in reduced[q]:
                    axpy(reduced[q], -reduced[q][p], reduced[p])
        return reduced


def rank_kernel(m: SignedMatrix) -> Tuple[int, List[Vector]]:
    """
    Rank and kernel basis of a matrix by exact Gaussian elimination.

    Returns:
        (rank, kernel vectors indexed by column); rank + len(kernel) == m.cols
    """
    echelon = Echelon(row for row in m.row_vectors() if row)
    reduced = echelon.fully_reduced()
    pivots = set(reduced)
    kernel: List[Vector] = []
    for free in range(m.cols):
        if free in pivots:
            continue
        vector: Vector = {free: Fraction(1)}
        for p, row in reduced.items():
            if free in row:
                vector[p] = -row[free]
        kernel.append(vector)
    return echelon.rank, kernel


def rank(m: SignedMatrix) -> int:
    return Echelon(row for row in m.row_vectors() if row).rank


def span_rank(vectors: Iterable[Vector]) -> int:
    return Echelon(vectors).rank


def annihilator(
    subspace: Sequence[Vector], ambient_dim: int, pairing: SignedMatrix
) -> List[Vector]:
    """
    Basis of {f : <f, v> = 0 for all v in subspace}.

    ``pairing[a, b]`` is <e*_a, e_b>; f is expressed in the first index.

    Raises:
        InvalidInputError: if the pairing is not a nondegenerate square matrix
    """
    if pairing.rows != ambient_dim or pairing.cols != ambient_dim:
        raise InvalidInputError(
            "pairing must be square of the ambient dimension",
            shape=(pairing.rows, pairing.cols),
            ambient_dim=ambient_dim,
        )
    if rank(pairing) != ambient_dim:
        raise InvalidInputError("pairing is degenerate", ambient_dim=ambient_dim)
    constraints = [pairing.apply(v) for v in subspace]
    constraint_matrix = SignedMatrix(
        len(constraints),
        ambient_dim,
        {(r, c): value for r, row in enumerate(constraints) for c, value in row.items()},
    )
    _, kernel = rank_kernel(constraint_matrix)
    return kernel


def quotient_basis(ambient_dim: int, subspace: Echelon) -> List[int]:
    """Indices of basis vectors spanning a complement: the non-pivot columns."""
    pivots = set(subspace.rows)
    return [k for k in range(ambient_dim) if k not in pivots]


def solve_in_basis(
    basis: Sequence[Vector], target: Vector
) -> Optional[Dict[int, Fraction]]:
    """Coefficients expressing target in the given vectors, or None if outside the span."""
    tagged = Echelon()
    offset = 1 + max([k for v in list(basis) + [target] for k in v] + [0])
    for position, vector in enumerate(basis):
        augmented = dict(vector)
        augmented[offset + position] = Fraction(1)
        tagged.add(augmented)
    residue = tagged.reduce(target)
    if any(k < offset for k in residue):
        return None
    return {k - offset: -v for k, v in residue.items()}
