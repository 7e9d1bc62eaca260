"""Free dioperads in a bounded arity window."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Mapping, Optional, Sequence

from ..exactalg.linalg import Vector
from ..exactalg.signs import permutation_sign
from ..exceptions import InvalidInputError
from ..logging_config import get_logger, log_with_context
from ..treespace import (
    IN,
    OUT,
    Combination,
    Term,
    Tree,
    add_into,
    add_term,
    canonicalize,
    enumerate_trees,
    graft_terms,
    relabel_term,
    term_arity,
)
from .collection import BimoduleCollection

logger = get_logger("dioperad.free")


@dataclass
class TreeSlotSpace:
    """Basis of Free(E)(m,n) inside a vertex cap: canonical decorated trees."""

    m: int
    n: int
    basis: List[Term]
    degrees: List[int]
    index: Dict[Term, int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {term: k for k, term in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vector(self, combination: Mapping[Term, Fraction]) -> Vector:
        """
        Coordinates of a canonical combination.

        Raises:
            InvalidInputError: if a term lies outside this slot's basis
        """
        result: Vector = {}
        for term, coefficient in combination.items():
            if term not in self.index:
                raise InvalidInputError(
                    "term is not a canonical basis tree of this slot", slot=(self.m, self.n)
                )
            if coefficient:
                result[self.index[term]] = Fraction(coefficient)
        return result

    def combination(self, vector: Mapping[int, Fraction]) -> Combination:
        return {self.basis[k]: Fraction(v) for k, v in vector.items() if v}


def decorations(tree: Tree, collection: BimoduleCollection) -> List[Term]:
    """All decorations of a canonical tree by generator basis elements."""
    choices = [collection.names(len(outs), len(ins)) for outs, ins in tree.vertices]
    terms = []
    for labels in product(*choices):
        terms.append(
            tuple((label, outs, ins) for label, (outs, ins) in zip(labels, tree.vertices))
        )
    return terms


def term_degree(term: Term, collection: BimoduleCollection) -> int:
    return sum(collection.degree(label) for label, _, _ in term)


def free_slot(
    collection: BimoduleCollection,
    m: int,
    n: int,
    max_vertices: int,
    exact_vertices: Optional[int] = None,
) -> TreeSlotSpace:
    """
    Free(E)(m,n): all canonical decorated (m,n)-trees with vertex arities in
    the support of E and at most ``max_vertices`` vertices.
    """
    support = collection.support()
    basis: List[Term] = []
    if support and m >= 1 and n >= 1:
        for tree in enumerate_trees(m, n, support, max_vertices, exact_vertices):
            basis.extend(decorations(tree, collection))
    degrees = [term_degree(term, collection) for term in basis]
    log_with_context(logger, "debug", "free slot built", slot=f"{m},{n}", dim=len(basis))
    return TreeSlotSpace(m, n, basis, degrees)


def act(
    collection: BimoduleCollection,
    combination: Mapping[Term, Fraction],
    outputs: Optional[Sequence[int]] = None,
    inputs: Optional[Sequence[int]] = None,
) -> Combination:
    """
    Relabel legs by permutations in one-line notation (leg k becomes
    ``outputs[k-1]``) and return the canonical result.
    """
    mapping = {}
    if outputs is not None:
        mapping.update({(OUT, k + 1): (OUT, v) for k, v in enumerate(outputs)})
    if inputs is not None:
        mapping.update({(IN, k + 1): (IN, v) for k, v in enumerate(inputs)})
    relabeled: Combination = {}
    for term, coefficient in combination.items():
        add_term(relabeled, relabel_term(term, mapping), coefficient)
    return canonicalize(relabeled, collection)


def symmetrize(
    collection: BimoduleCollection,
    combination: Mapping[Term, Fraction],
    outputs: Optional[str] = None,
    inputs: Optional[str] = None,
) -> Combination:
    """
    Σ χ(σ) σ·x over the permutations of the named sides, where each side's
    character is "trivial" or "sign"; an unnamed side is left alone.
    """
    arities = {term_arity(t) for t in combination}
    if not arities:
        return {}
    if len(arities) != 1:
        raise InvalidInputError("elements must be homogeneous in arity")
    m, n = arities.pop()

    def perms(size: int, character: Optional[str]):
        if character is None:
            return [(None, 1)]
        if character not in ("trivial", "sign"):
            raise InvalidInputError(f"unknown character {character!r}")
        return [
            (list(p), permutation_sign(p) if character == "sign" else 1)
            for p in permutations(range(1, size + 1))
        ]

    result: Combination = {}
    for out_perm, out_sign in perms(m, outputs):
        for in_perm, in_sign in perms(n, inputs):
            image = act(collection, combination, out_perm, in_perm)
            add_into(result, image, out_sign * in_sign)
    return result


def transposition(size: int, k: int) -> List[int]:
    """One-line notation of the transposition swapping k and k+1 (1-based)."""
    perm = list(range(1, size + 1))
    perm[k - 1], perm[k] = perm[k], perm[k - 1]
    return perm


def compose(
    collection: BimoduleCollection,
    a: Mapping[Term, Fraction],
    i: int,
    b: Mapping[Term, Fraction],
    j: int,
) -> Combination:
    """
    a ᵢ∘ⱼ b: output i of b is grafted into input j of a.

    Bilinear; the composite lists a's vertices before b's.

    Raises:
        InvalidInputError: on an empty element, mixed arities or bad indices
    """
    if not a or not b:
        return {}
    arities_a = {term_arity(t) for t in a}
    arities_b = {term_arity(t) for t in b}
    if len(arities_a) != 1 or len(arities_b) != 1:
        raise InvalidInputError("elements must be homogeneous in arity")
    (m1, n1), (m2, n2) = arities_a.pop(), arities_b.pop()
    if not (1 <= i <= m2 and 1 <= j <= n1):
        raise InvalidInputError(
            "composition index out of range", i=i, j=j, upper=(m1, n1), lower=(m2, n2)
        )
    raw: Combination = {}
    for upper, x in a.items():
        for lower, y in b.items():
            add_term(raw, graft_terms(upper, i, lower, j, (m1, n1), (m2, n2)), x * y)
    return canonicalize(raw, collection)
