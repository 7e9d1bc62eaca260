"""
Generators of the three explicit minimal resolutions.

* ``lie1bi``: one generator per (m,n), m+n >= 3, of degree 2-m, skew in its
  outputs and symmetric in its inputs.
* ``tf``: a degree 1 generator in (1,n), n >= 2, and a degree 0 pair
  (the regular representation of Σ_2 on the outputs) in (2,n), n >= 1.
* ``liebi``: the ⟨1⟩-shifted Lie bialgebra resolution, one generator per
  (m,n) of degree 3-2m, symmetric on both sides.

Generator (m,n) is named ``e{m}_{n}``; the swapped element of a regular
pair is ``e{m}_{n}.t``.
"""

from typing import Iterator, List, Tuple

from ..dioperad.collection import Arity, BimoduleCollection, character_component
from ..exceptions import InvalidInputError

RESOLUTIONS = ("lie1bi", "tf", "liebi")

# presentation whose minimal model each resolution is
TARGETS = {"lie1bi": "lie1bi", "tf": "tf", "liebi": "liebi"}


def generator_name(m: int, n: int) -> str:
    return f"e{m}_{n}"


def _check(resolution: str) -> None:
    if resolution not in RESOLUTIONS:
        raise InvalidInputError(f"unknown resolution {resolution!r}", known=list(RESOLUTIONS))


def generator_arities(resolution: str, window: int) -> Iterator[Arity]:
    """Arities (m,n) carrying generators with 3 <= m+n <= window."""
    _check(resolution)
    for total in range(3, window + 1):
        for m in range(1, total):
            n = total - m
            if resolution == "tf" and m > 2:
                continue
            yield m, n


def generator_degree(resolution: str, m: int, n: int) -> int:
    _check(resolution)
    if resolution == "lie1bi":
        return 2 - m
    if resolution == "tf":
        return 1 if m == 1 else 0
    return 3 - 2 * m


def resolution_collection(resolution: str, window: int) -> BimoduleCollection:
    """
    All generators of a resolution inside the window.

    Raises:
        InvalidInputError: for an unknown resolution or a window below 3
    """
    _check(resolution)
    if window < 3:
        raise InvalidInputError("the arity window must be at least 3", window=window)
    collection = BimoduleCollection()
    for m, n in generator_arities(resolution, window):
        degree = generator_degree(resolution, m, n)
        if resolution == "lie1bi":
            outputs = "sign" if m > 1 else "trivial"
        elif resolution == "tf":
            outputs = "regular" if m == 2 else "trivial"
        else:
            outputs = "trivial"
        inputs = "trivial"
        collection.add(character_component(generator_name(m, n), m, n, degree, outputs, inputs))
    return collection


def generator_labels(collection: BimoduleCollection) -> List[Tuple[str, Arity]]:
    """Every basis label with its arity, ordered by arity then name."""
    labels = []
    for (m, n) in collection.support():
        for name in collection.names(m, n):
            labels.append((name, (m, n)))
    return labels
