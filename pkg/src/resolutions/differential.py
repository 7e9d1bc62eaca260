"""
Closed-form differentials of the minimal resolutions.

Each formula sums two-vertex trees: a lower corolla whose chosen output is
grafted into the first input of an upper corolla, then relabeled so that
the lower and upper legs carry the index sets of the splitting. The skew
and regular resolutions carry an extra (-1)^m on d(e_{m,n}); with the new
edge read first in the output word this is what makes d square to zero
under the Koszul rule for vertex order.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from ..dioperad.collection import BimoduleCollection
from ..dioperad.free import act
from ..dioperad.quadratic import substitute
from ..exactalg.signs import shuffle_sign
from ..exceptions import InvalidInputError
from ..treespace import Combination, Term, add_into, add_term, canonicalize, corolla, graft_terms
from .generators import generator_name

Split = Tuple[List[int], List[int]]


def splittings(size: int) -> Iterator[Split]:
    """Ordered pairs (A, B) of sorted complementary subsets of 1..size."""
    labels = list(range(1, size + 1))
    for k in range(size + 1):
        for first in combinations(labels, k):
            second = [x for x in labels if x not in first]
            yield list(first), second


def _legal(m: int, n: int) -> bool:
    return m >= 1 and n >= 1 and m + n >= 3


def two_vertex(
    collection: BimoduleCollection,
    upper: str,
    lower: str,
    i: int,
    outputs: Sequence[int],
    inputs: Sequence[int],
) -> Combination:
    """
    Output i of the lower corolla grafted into input 1 of the upper one, the
    composite legs relabeled by ``outputs`` and ``inputs`` (one-line).
    """
    upper_arity = collection.arity_of(upper)
    lower_arity = collection.arity_of(lower)
    raw = graft_terms(
        corolla(upper, *upper_arity), i, corolla(lower, *lower_arity), 1, upper_arity, lower_arity
    )
    return act(collection, {raw: Fraction(1)}, outputs, inputs)


def d_lie1bi(collection: BimoduleCollection, m: int, n: int) -> Combination:
    """
    d e_{m,n} = (-1)^m Σ (-1)^{σ(I1⊔I2) + |I1||I2|} (lower: outputs I1 then
    the edge, inputs J1; upper: outputs I2, inputs the edge then J2) over
    |I2| >= 1, |J1| >= 1 with both corollas of arity at least three.

    The (-1)^m prefactor is this engine's sign convention for the Lie
    1-bialgebra resolution: every term of the double sum is multiplied by it.

    Raises:
        InvalidInputError: for m+n < 3
    """
    if not _legal(m, n):
        raise InvalidInputError("generators need m, n >= 1 and m+n >= 3", m=m, n=n)
    result: Combination = {}
    for first, second in splittings(m):
        if not second:
            continue
        for j1, j2 in splittings(n):
            lower_arity = (len(first) + 1, len(j1))
            upper_arity = (len(second), len(j2) + 1)
            if not (_legal(*lower_arity) and _legal(*upper_arity)):
                continue
            # convention: (-1)^m on every term of d(e_{m,n})
            sign = (-1) ** m * shuffle_sign(first, second) * (-1) ** (len(first) * len(second))
            term = two_vertex(
                collection,
                generator_name(*upper_arity),
                generator_name(*lower_arity),
                len(first) + 1,
                first + second,
                j1 + j2,
            )
            add_into(result, term, sign)
    return result


def d_liebi(collection: BimoduleCollection, m: int, n: int) -> Combination:
    """
    The unsigned double sum over the same splittings as ``d_lie1bi``; every
    generator is odd and symmetric on both sides.

    Raises:
        InvalidInputError: for m+n < 3
    """
    if not _legal(m, n):
        raise InvalidInputError("generators need m, n >= 1 and m+n >= 3", m=m, n=n)
    result: Combination = {}
    for first, second in splittings(m):
        if not second:
            continue
        for j1, j2 in splittings(n):
            lower_arity = (len(first) + 1, len(j1))
            upper_arity = (len(second), len(j2) + 1)
            if not (_legal(*lower_arity) and _legal(*upper_arity)):
                continue
            term = two_vertex(
                collection,
                generator_name(*upper_arity),
                generator_name(*lower_arity),
                len(first) + 1,
                first + second,
                j1 + j2,
            )
            add_into(result, term)
    return result


def d_tf(collection: BimoduleCollection, m: int, n: int) -> Combination:
    """
    d of the (1,n) generator, or of the first element of the (2,n) pair.

    (1,n): minus the sum over J1 ⊔ J2 with |J1| >= 2, |J2| >= 1 of the
    (1,|J1|) corolla feeding the (1,|J2|+1) corolla.

    (2,n): the (1,|J1|) corolla feeding the (2,|J2|+1) pair element over
    |J1| >= 2, |J2| >= 0, minus, over |J1| >= 1, |J2| >= 1, the (2,|J1|)
    pair element whose second output (resp. first output) feeds a
    (1,|J2|+1) corolla carrying output 2 (resp. 1).

    Raises:
        InvalidInputError: for m not in {1, 2} or n below the generator range
    """
    if m == 1 and n >= 2:
        result: Combination = {}
        for j1, j2 in splittings(n):
            if len(j1) >= 2 and len(j2) >= 1:
                term = two_vertex(
                    collection,
                    generator_name(1, len(j2) + 1),
                    generator_name(1, len(j1)),
                    1,
                    [1],
                    j1 + j2,
                )
                add_into(result, term, -1)
        return result
    if m == 2 and n >= 1:
        result = {}
        for j1, j2 in splittings(n):
            if len(j1) >= 2:
                term = two_vertex(
                    collection,
                    generator_name(2, len(j2) + 1),
                    generator_name(1, len(j1)),
                    1,
                    [1, 2],
                    j1 + j2,
                )
                add_into(result, term)
            if len(j1) >= 1 and len(j2) >= 1:
                for edge_output in (2, 1):
                    term = two_vertex(
                        collection,
                        generator_name(1, len(j2) + 1),
                        generator_name(2, len(j1)),
                        edge_output,
                        [1, 2],
                        j1 + j2,
                    )
                    add_into(result, term, -1)
        return result
    raise InvalidInputError("TF generators live in (1,n), n >= 2 and (2,n), n >= 1", m=m, n=n)


FORMULAS = {"lie1bi": d_lie1bi, "tf": d_tf, "liebi": d_liebi}


def generator_differentials(resolution: str, collection: BimoduleCollection) -> Dict[str, Combination]:
    """
    d on every generator basis label of the collection; the swapped element
    of a regular pair gets the swapped image.

    Raises:
        InvalidInputError: for an unknown resolution
    """
    if resolution not in FORMULAS:
        raise InvalidInputError(f"unknown resolution {resolution!r}", known=sorted(FORMULAS))
    formula = FORMULAS[resolution]
    images: Dict[str, Combination] = {}
    for (m, n) in collection.support():
        name = generator_name(m, n)
        images[name] = formula(collection, m, n)
        swapped = f"{name}.t"
        if collection.has(swapped):
            images[swapped] = act(collection, images[name], [2, 1], None)
    return images


def apply_derivation(
    collection: BimoduleCollection,
    images: Mapping[str, Mapping[Term, Fraction]],
    combination: Mapping[Term, Fraction],
) -> Combination:
    """
    Extend d from generators to trees as a degree one derivation: the vertex
    at position p picks up (-1)^{sum of the degrees before it}.
    """
    raw: Combination = {}
    for term, coefficient in combination.items():
        passed = 0
        for position, (label, _, _) in enumerate(term):
            image = images.get(label)
            if image:
                sign = -1 if passed % 2 else 1
                for piece, factor in substitute(term, position, image).items():
                    add_term(raw, piece, sign * coefficient * factor)
            passed += collection.degree(label)
    return canonicalize(raw, collection)
