"""Finite-dimensional graded vector spaces."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from ..exceptions import InvalidInputError


@dataclass(frozen=True)
class GradedSpace:
    """
    A vector space with an ordered homogeneous basis.

    Degrees are cohomological; ``shift(p)`` subtracts p from every degree so
    that a generator of 1[m-2] sits in degree 2-m.
    """

    basis: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise InvalidInputError("graded space labels must be unique", labels=labels)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> "GradedSpace":
        return cls(tuple((str(label), int(degree)) for label, degree in pairs))

    @classmethod
    def concentrated(cls, dim: int, degree: int = 0, prefix: str = "e") -> "GradedSpace":
        """Space of the given dimension with every basis vector in one degree."""
        return cls(tuple((f"{prefix}{k + 1}", degree) for k in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.basis]

    @property
    def degrees(self) -> List[int]:
        return [degree for _, degree in self.basis]

    def degree(self, index: int) -> int:
        return self.basis[index][1]

    def index(self, label: str) -> int:
        for position, (name, _) in enumerate(self.basis):
            if name == label:
                return position
        raise InvalidInputError(f"unknown basis label {label!r}", labels=self.labels)

    def shift(self, p: int) -> "GradedSpace":
        return GradedSpace(tuple((label, degree - p) for label, degree in self.basis))

    def dual(self) -> "GradedSpace":
        return GradedSpace(tuple((f"{label}*", -degree) for label, degree in self.basis))

    def is_ungraded(self) -> bool:
        return all(degree == 0 for _, degree in self.basis)

    def degree_blocks(self) -> Dict[int, List[int]]:
        """Basis indices grouped by degree."""
        blocks: Dict[int, List[int]] = {}
        for position, (_, degree) in enumerate(self.basis):
            blocks.setdefault(degree, []).append(position)
        return blocks
