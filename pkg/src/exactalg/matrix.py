"""Sparse exact matrices."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from ..exceptions import InvalidInputError

Entry = Tuple[int, int]


@dataclass(frozen=True)
class SignedMatrix:
    """
    A rows x cols matrix over Q stored as a sparse (row, col) -> value map.

    Zero entries are never stored. Columns are read as images of basis
    vectors: ``M[r, c]`` is the coefficient of basis vector r in M(e_c).
    """

    rows: int
    cols: int
    entries: Dict[Entry, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[Entry, Fraction] = {}
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidInputError(
                    "matrix index out of range", row=r, col=c, shape=(self.rows, self.cols)
                )
            value = Fraction(value)
            if value:
                clean[(r, c)] = value
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "SignedMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {
            (r, c): Fraction(dense[r][c])
            for r in range(rows)
            for c in range(cols)
            if dense[r][c]
        }
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "SignedMatrix":
        return cls(n, n, {(k, k): Fraction(1) for k in range(n)})

    @classmethod
    def scalar(cls, n: int, value) -> "SignedMatrix":
        return cls(n, n, {(k, k): Fraction(value) for k in range(n)})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Dict[int, Fraction]]) -> "SignedMatrix":
        entries = {(r, c): v for c, column in enumerate(columns) for r, v in column.items()}
        return cls(rows, len(columns), entries)

    def get(self, r: int, c: int) -> Fraction:
        return self.entries.get((r, c), Fraction(0))

    def to_dense(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            dense[r][c] = value
        return dense

    def transpose(self) -> "SignedMatrix":
        return SignedMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def scaled(self, factor) -> "SignedMatrix":
        factor = Fraction(factor)
        return SignedMatrix(
            self.rows, self.cols, {k: v * factor for k, v in self.entries.items()}
        )

    def column(self, c: int) -> Dict[int, Fraction]:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def row_vectors(self) -> List[Dict[int, Fraction]]:
        rows: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            rows[r][c] = value
        return rows

    def apply(self, vector: Dict[int, Fraction]) -> Dict[int, Fraction]:
        """Matrix times a sparse column vector."""
        result: Dict[int, Fraction] = {}
        for (r, c), value in self.entries.items():
            if c in vector:
                result[r] = result.get(r, Fraction(0)) + value * vector[c]
        return {k: v for k, v in result.items() if v}

    def __matmul__(self, other: "SignedMatrix") -> "SignedMatrix":
        if self.cols != other.rows:
            raise InvalidInputError(
                "matrix shapes do not compose",
                left=(self.rows, self.cols),
                right=(other.rows, other.cols),
            )
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), value in other.entries.items():
            by_row.setdefault(r, []).append((c, value))
        product: Dict[Entry, Fraction] = {}
        for (r, k), left in self.entries.items():
            for c, right in by_row.get(k, ()):
                product[(r, c)] = product.get((r, c), Fraction(0)) + left * right
        return SignedMatrix(self.rows, other.cols, product)

    def __add__(self, other: "SignedMatrix") -> "SignedMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInputError("matrix shapes differ")
        total = dict(self.entries)
        for key, value in other.entries.items():
            total[key] = total.get(key, Fraction(0)) + value
        return SignedMatrix(self.rows, self.cols, total)

    def __sub__(self, other: "SignedMatrix") -> "SignedMatrix":
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(sorted(self.entries.items()))))


def block_diagonal(blocks: Iterable[SignedMatrix]) -> SignedMatrix:
    entries: Dict[Entry, Fraction] = {}
    r0 = c0 = 0
    for block in blocks:
        for (r, c), value in block.entries.items():
            entries[(r0 + r, c0 + c)] = value
        r0 += block.rows
        c0 += block.cols
    return SignedMatrix(r0, c0, entries)
