"""Permutation parities and Koszul signs."""

from itertools import combinations
from typing import Hashable, List, Sequence

from ..exceptions import InvalidInputError


def _check_permutation(permutation: Sequence[int]) -> None:
    n = len(permutation)
    if sorted(permutation) != list(range(1, n + 1)):
        raise InvalidInputError(
            "permutation must be a bijection on 1..n", permutation=list(permutation)
        )


def permutation_sign(permutation: Sequence[int]) -> int:
    """Parity sign of a permutation given in one-line notation on 1..n."""
    _check_permutation(permutation)
    inversions = sum(
        1 for a, b in combinations(permutation, 2) if a > b
    )
    return -1 if inversions % 2 else 1


def koszul_sign(permutation: Sequence[int], degrees: Sequence[int]) -> int:
    """
    Koszul sign of rearranging graded factors.

    The factors x_1..x_n have the given degrees and are rearranged into
    (x_{σ(1)}, ..., x_{σ(n)}); every pair of odd factors whose relative
    order flips contributes -1.

    Raises:
        InvalidInputError: on a length mismatch or a non-permutation
    """
    if len(permutation) != len(degrees):
        raise InvalidInputError(
            "permutation and degrees must have the same length",
            permutation=list(permutation),
            degrees=list(degrees),
        )
    _check_permutation(permutation)
    sign = 1
    for p, q in combinations(range(len(permutation)), 2):
        a, b = permutation[p], permutation[q]
        if a > b and degrees[a - 1] % 2 and degrees[b - 1] % 2:
            sign = -sign
    return sign


def sort_sign(word: Sequence[Hashable], reverse: bool = False) -> int:
    """Parity of the permutation sorting a word of distinct keys."""
    keys: List = list(word)
    if len(set(keys)) != len(keys):
        raise InvalidInputError("word must have distinct entries", word=keys)
    inversions = 0
    for a, b in combinations(keys, 2):
        if (a > b) != reverse:
            inversions += 1
    return -1 if inversions % 2 else 1


def shuffle_sign(first: Sequence[int], second: Sequence[int]) -> int:
    """Sign of the shuffle that concatenates two sorted blocks and sorts them."""
    return sort_sign(list(first) + list(second))
