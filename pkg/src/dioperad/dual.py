"""
Quadratic duals.

Free(E∨) and Free(E) share their tree shapes, and their canonical bases are
listed in the same order, so the pairing between the three-leg slots is
diagonal. A basis tree pairs with its dual-labeled twin by the product of the
label pairings, the Koszul sign of interleaving the two label words, and an
orientation sign: the flags of the upper vertex, then of the lower vertex,
sorted into outputs, inputs and finally the contracted edge.
"""

from fractions import Fraction
from typing import Dict, List

from ..exactalg.linalg import annihilator
from ..exactalg.matrix import SignedMatrix
from ..exactalg.signs import sort_sign
from ..exceptions import InvalidInputError
from ..logging_config import get_logger, log_with_context
from ..treespace import IN, OUT, Combination, Term, bare_tree
from .collection import Arity, BimoduleCollection, dual_name
from .free import free_slot
from .quadratic import RELATION_SLOTS, Presentation

logger = get_logger("dioperad.dual")


def orientation_sign(term: Term) -> int:
    """Sign of a two-vertex tree read upper vertex first."""
    (lower, upper, _), = bare_tree(term).internal_edges
    word = []
    for vertex in (upper, lower):
        _, outs, ins = term[vertex]
        for side, tokens in (("out", outs), ("in", ins)):
            for kind, label in tokens:
                if kind == OUT:
                    word.append((0, label))
                elif kind == IN:
                    word.append((1, label))
                else:
                    word.append((2, 0 if side == "out" else 1))
    return sort_sign(word)


def label_pairing(
    functional: Term, term: Term, dual: BimoduleCollection, primal: BimoduleCollection
) -> int:
    """<f_1 ⊗ ... ⊗ f_k, x_1 ⊗ ... ⊗ x_k> for terms of one shape."""
    sign = 1
    for (label_f, _, _), (label_x, _, _) in zip(functional, term):
        if label_f != dual_name(label_x):
            return 0
    degrees_f = [dual.degree(label) for label, _, _ in functional]
    degrees_x = [primal.degree(label) for label, _, _ in term]
    for q in range(len(term)):
        for p in range(q):
            if degrees_f[q] % 2 and degrees_x[p] % 2:
                sign = -sign
    return sign


def pairing_matrix(
    presentation: Presentation, dual: BimoduleCollection, arity: Arity
) -> SignedMatrix:
    """pairing[a, b] = <f_a, x_b> between Free(E∨)(a,b) and Free(E)(a,b)."""
    m, n = arity
    primal = presentation.generators
    space = free_slot(primal, m, n, 2, exact_vertices=2)
    dual_space = free_slot(dual, m, n, 2, exact_vertices=2)
    if space.dim != dual_space.dim:
        raise InvalidInputError("dual free slot does not match", arity=arity)
    entries = {}
    for k, (f, x) in enumerate(zip(dual_space.basis, space.basis)):
        value = label_pairing(f, x, dual, primal)
        if not value:
            raise InvalidInputError("dual free slot bases are misaligned", arity=arity)
        entries[(k, k)] = Fraction(value * orientation_sign(x))
    return SignedMatrix(space.dim, space.dim, entries)


def dual_relations(
    presentation: Presentation, dual: BimoduleCollection, arity: Arity
) -> List[Combination]:
    m, n = arity
    space = free_slot(presentation.generators, m, n, 2, exact_vertices=2)
    if not space.dim:
        return []
    dual_space = free_slot(dual, m, n, 2, exact_vertices=2)
    relations = [space.vector(v) for v in presentation.closed_relations(arity)]
    perp = annihilator(relations, space.dim, pairing_matrix(presentation, dual, arity))
    return [dual_space.combination(v) for v in perp]


def dual_presentation_name(name: str) -> str:
    return name[:-1] if name.endswith("!") else f"{name}!"


def quadratic_dual(presentation: Presentation) -> Presentation:
    """
    P! = Free(E∨)/<R⊥> with E∨ = sgn ⊗ E* ⊗ sgn.

    A relation slot with no relations dualizes to the whole free slot.
    """
    dual = presentation.generators.dual()
    relations: Dict[Arity, List[Combination]] = {}
    for arity in RELATION_SLOTS:
        relations[arity] = dual_relations(presentation, dual, arity)
    result = Presentation(
        dual_presentation_name(presentation.name),
        dual,
        relations,
        description=f"quadratic dual of {presentation.name}",
    )
    log_with_context(
        logger,
        "debug",
        "quadratic dual built",
        presentation=presentation.name,
        relations={f"{a},{b}": len(v) for (a, b), v in relations.items()},
    )
    return result
