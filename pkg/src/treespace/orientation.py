"""Orientation line det(T) of a tree: its internal edges in a chosen order."""

from dataclasses import dataclass
from typing import Hashable, Iterable, Tuple

from ..exactalg.signs import sort_sign
from .tree import EDGE, Tree


@dataclass(frozen=True)
class OrientationLine:
    """
    An ordered edge word together with the reference ordering of its line.

    The associated scalar of ``word`` is the parity of the permutation taking
    it to ``reference``.
    """

    word: Tuple[Hashable, ...]
    reference: Tuple[Hashable, ...]

    def sign(self) -> int:
        position = {item: k for k, item in enumerate(self.reference)}
        return sort_sign([position[item] for item in self.word])

    def reordered(self, word: Iterable[Hashable]) -> "OrientationLine":
        return OrientationLine(tuple(word), self.reference)


def det_reference(tree: Tree, reversed_order: bool = False) -> Tuple[Hashable, ...]:
    """Internal edge tokens by increasing edge id, or decreasing when reversed."""
    word = tuple((EDGE, e) for _, _, e in tree.internal_edges)
    return tuple(reversed(word)) if reversed_order else word


def det_line(tree: Tree, reversed_order: bool = False) -> OrientationLine:
    reference = det_reference(tree, reversed_order)
    return OrientationLine(reference, reference)
