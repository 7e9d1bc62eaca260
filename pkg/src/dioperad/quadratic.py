"""
Quadratic presentations and their quotient dioperads inside an arity window.

With generators in arities (1,2) and (2,1) every (m,n)-tree of Free(E) has
exactly m+n-2 vertices, so each slot is homogeneous. The ideal slot is the
span of all substitutions of Σ-closed relation vectors into a vertex of a
decorated tree with one vertex fewer.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from ..exactalg.linalg import Echelon, Vector, quotient_basis
from ..exactalg.matrix import SignedMatrix
from ..exceptions import InvalidInputError, WindowInsufficientError
from ..logging_config import get_logger, log_with_context
from ..treespace import (
    EDGE,
    IN,
    OUT,
    Combination,
    Term,
    add_term,
    canonicalize,
    enumerate_trees,
    is_reduced,
    term_arity,
)
from ..treespace.tree import max_edge_id
from .collection import Arity, ArityComponent, BimoduleCollection, component_from_matrices
from .free import TreeSlotSpace, act, free_slot, transposition

logger = get_logger("dioperad.quadratic")

GENERATOR_SLOTS: Tuple[Arity, ...] = ((1, 2), (2, 1))
RELATION_SLOTS: Tuple[Arity, ...] = ((1, 3), (2, 2), (3, 1))


@dataclass
class Presentation:
    """Free(E)/Ideal<R> with E in arities (1,2), (2,1) and R in the three-leg slots."""

    name: str
    generators: BimoduleCollection
    relations: Dict[Arity, List[Combination]]
    description: str = ""
    _slots: Dict[Tuple[int, int, int], "QuotientSlot"] = field(
        default_factory=dict, repr=False, compare=False
    )
    _closed: Dict[Arity, List[Combination]] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self):
        for arity in self.generators.support():
            if arity not in GENERATOR_SLOTS:
                raise InvalidInputError(
                    "quadratic generators live in arities (1,2) and (2,1)",
                    presentation=self.name,
                    arity=arity,
                )
        relations: Dict[Arity, List[Combination]] = {}
        for arity, vectors in self.relations.items():
            arity = tuple(arity)
            if arity not in RELATION_SLOTS:
                raise InvalidInputError(
                    "relations live in slots (1,3), (2,2) and (3,1)",
                    presentation=self.name,
                    arity=arity,
                )
            canonical = []
            for vector in vectors:
                for term in vector:
                    if term_arity(term) != arity or len(term) != 2:
                        raise InvalidInputError(
                            "relation terms must be two-vertex trees of the relation slot",
                            presentation=self.name,
                            arity=arity,
                        )
                    for label, _, _ in term:
                        self.generators.degree(label)
                reduced = canonicalize(vector, self.generators)
                if reduced:
                    canonical.append(reduced)
            relations[arity] = canonical
        self.relations = relations

    def relation_count(self) -> int:
        return sum(len(v) for v in self.relations.values())

    def closed_relations(self, arity: Arity) -> List[Combination]:
        """Basis of the Σ_a x Σ_b-closure of the relations in one slot."""
        if arity not in self._closed:
            self._closed[arity] = _sigma_closure(
                self.generators, arity, self.relations.get(arity, [])
            )
        return self._closed[arity]


def _sigma_closure(
    collection: BimoduleCollection, arity: Arity, vectors: List[Combination]
) -> List[Combination]:
    if not vectors:
        return []
    m, n = arity
    space = free_slot(collection, m, n, 2, exact_vertices=2)
    echelon = Echelon()
    pending = [space.vector(v) for v in vectors]
    moves = [(transposition(m, k), None) for k in range(1, m)]
    moves += [(None, transposition(n, k)) for k in range(1, n)]
    while pending:
        vector = pending.pop()
        if not echelon.add(vector):
            continue
        combination = space.combination(vector)
        for outputs, inputs in moves:
            pending.append(space.vector(act(collection, combination, outputs, inputs)))
    return [space.combination(row) for row in echelon.basis()]


def substitute(term: Term, position: int, inner: Mapping[Term, Fraction]) -> Combination:
    """
    Replace the node at ``position`` by a combination of trees whose legs
    match that node's slots in order; the inserted nodes keep their order
    and take the replaced node's place.
    """
    _, outs, ins = term[position]
    offset = max_edge_id(term)
    result: Combination = {}
    for piece, coefficient in inner.items():
        mapping = {(OUT, k + 1): token for k, token in enumerate(outs)}
        mapping.update({(IN, k + 1): token for k, token in enumerate(ins)})
        nodes = []
        for label, piece_outs, piece_ins in piece:
            nodes.append(
                (
                    label,
                    tuple(
                        (EDGE, t[1] + offset) if t[0] == EDGE else mapping[t]
                        for t in piece_outs
                    ),
                    tuple(
                        (EDGE, t[1] + offset) if t[0] == EDGE else mapping[t]
                        for t in piece_ins
                    ),
                )
            )
        add_term(result, term[:position] + tuple(nodes) + term[position + 1 :], coefficient)
    return result


def vertices_needed(m: int, n: int) -> int:
    return m + n - 2


def ideal_slot(
    presentation: Presentation, space: TreeSlotSpace, max_vertices: int
) -> Echelon:
    """Span of Ideal<R> inside a free slot."""
    m, n = space.m, space.n
    k = vertices_needed(m, n)
    echelon = Echelon()
    closed = {a: presentation.closed_relations(a) for a in RELATION_SLOTS}
    holes = [a for a, vectors in closed.items() if vectors]
    if k < 2 or not holes or not space.dim:
        return echelon
    collection = presentation.generators
    arities = set(collection.support()) | set(holes)
    skeletons = enumerate_trees(m, n, arities, k - 1, exact_vertices=k - 1)
    for skeleton in skeletons:
        hole_positions = [
            v for v, arity in enumerate(skeleton.arities) if arity in holes
        ]
        if len(hole_positions) != 1:
            continue
        hole = hole_positions[0]
        choices = []
        for v, (outs, ins) in enumerate(skeleton.vertices):
            if v == hole:
                choices.append([None])
            else:
                choices.append(collection.names(len(outs), len(ins)))
        for labels in product(*choices):
            frame = tuple(
                (label if label is not None else "", outs, ins)
                for label, (outs, ins) in zip(labels, skeleton.vertices)
            )
            for relation in closed[skeleton.arities[hole]]:
                raw = substitute(frame, hole, relation)
                echelon.add(space.vector(canonicalize(raw, collection)))
    return echelon


@dataclass
class QuotientSlot:
    """P(m,n) = Free(E)(m,n) / Ideal(m,n) with lifted basis on non-pivot trees."""

    m: int
    n: int
    collection: BimoduleCollection
    free: TreeSlotSpace
    ideal: Echelon
    columns: List[int]

    @property
    def dim(self) -> int:
        return len(self.columns)

    @property
    def ideal_dim(self) -> int:
        return self.ideal.rank

    def lifts(self) -> List[Combination]:
        return [{self.free.basis[c]: Fraction(1)} for c in self.columns]

    def lift(self, index: int) -> Combination:
        return {self.free.basis[self.columns[index]]: Fraction(1)}

    @property
    def degrees(self) -> List[int]:
        return [self.free.degrees[c] for c in self.columns]

    def normal_form(self, combination: Mapping[Term, Fraction]) -> Vector:
        """Coordinates of the class of a canonical combination in the quotient basis."""
        residue = self.ideal.reduce(self.free.vector(combination))
        position = {c: k for k, c in enumerate(self.columns)}
        return {position[c]: v for c, v in residue.items()}

    def out_action(self, k: int) -> SignedMatrix:
        return self._action(transposition(self.m, k), None)

    def in_action(self, k: int) -> SignedMatrix:
        return self._action(None, transposition(self.n, k))

    def _action(self, outputs, inputs) -> SignedMatrix:
        columns = [
            self.normal_form(act(self.collection, lift, outputs, inputs))
            for lift in self.lifts()
        ]
        return SignedMatrix.from_columns(self.dim, columns)

    def component(self, prefix: str) -> ArityComponent:
        """This slot as a bimodule with basis names ``prefix.m.n.k``."""
        names = [f"{prefix}.{self.m}.{self.n}.{k}" for k in range(self.dim)]
        return component_from_matrices(
            names,
            self.m,
            self.n,
            self.degrees,
            [self.out_action(k) for k in range(1, self.m)],
            [self.in_action(k) for k in range(1, self.n)],
        )


def quotient_slot(
    presentation: Presentation, m: int, n: int, max_vertices: int
) -> QuotientSlot:
    """
    Dimension and lifted basis of P(m,n).

    Raises:
        InvalidInputError: for m or n below 1
        WindowInsufficientError: when the vertex cap cannot hold the slot's trees
    """
    if m < 1 or n < 1:
        raise InvalidInputError("slots need m, n >= 1", m=m, n=n)
    key = (m, n, max_vertices)
    if key in presentation._slots:
        return presentation._slots[key]
    collection = presentation.generators
    k = vertices_needed(m, n)
    if k > max_vertices:
        raise WindowInsufficientError(
            "vertex cap too small to hold the slot's trees",
            presentation=presentation.name,
            slot=f"{m},{n}",
            needed=k,
            max_vertices=max_vertices,
        )
    if k < 1:
        space = TreeSlotSpace(m, n, [], [])
    else:
        space = free_slot(collection, m, n, max_vertices, exact_vertices=k)
    ideal = ideal_slot(presentation, space, max_vertices)
    slot = QuotientSlot(m, n, collection, space, ideal, quotient_basis(space.dim, ideal))
    presentation._slots[key] = slot
    log_with_context(
        logger,
        "debug",
        "quotient slot computed",
        presentation=presentation.name,
        slot=f"{m},{n}",
        free_dim=space.dim,
        ideal_dim=ideal.rank,
        dim=slot.dim,
    )
    return slot


def window_slots(max_arity: int) -> List[Arity]:
    """All (m,n) with m, n >= 1 and 3 <= m+n <= max_arity."""
    return [(m, total - m) for total in range(3, max_arity + 1) for m in range(1, total)]


def dioperad_slots(
    presentation: Presentation, max_arity: int, max_vertices: int
) -> Dict[Arity, QuotientSlot]:
    return {
        (m, n): quotient_slot(presentation, m, n, max_vertices)
        for m, n in window_slots(max_arity)
    }


def dioperad_collection(
    presentation: Presentation, max_arity: int, max_vertices: int
) -> BimoduleCollection:
    """The computed slots of P as a collection of bimodules."""
    components = [
        slot.component(presentation.name)
        for slot in dioperad_slots(presentation, max_arity, max_vertices).values()
        if slot.dim
    ]
    return BimoduleCollection(components, check=False)


def operadic_parts(presentation: Presentation) -> Tuple[Presentation, Presentation]:
    """
    P_L = Free(E(1,2))/<R(1,3)> and the (*,1) part Free(E(2,1))/<R(3,1)>.
    """
    left = Presentation(
        f"{presentation.name}_L",
        presentation.generators.restricted([(1, 2)]),
        {(1, 3): presentation.relations.get((1, 3), [])},
    )
    right = Presentation(
        f"{presentation.name}_R",
        presentation.generators.restricted([(2, 1)]),
        {(3, 1): presentation.relations.get((3, 1), [])},
    )
    return left, right


def diamond_arities(m: int, n: int) -> List[Arity]:
    """Vertex arities carried by P_L ⋄ P_R^op inside an (m,n) slot."""
    return [(1, k) for k in range(2, n + 1)] + [(k, 1) for k in range(2, m + 1)]


def underline_free_dim(
    left: Presentation,
    right: Presentation,
    m: int,
    n: int,
    max_vertices: Optional[int] = None,
) -> int:
    """
    Dimension of the sum over reduced (m,n)-trees of the tensor products of
    P_L(1,k) and P_R(k,1) decorations.
    """
    if m < 1 or n < 1:
        raise InvalidInputError("slots need m, n >= 1", m=m, n=n)
    cap = max_vertices if max_vertices is not None else m + n - 2
    dims: Dict[Arity, int] = {}

    def decoration_dim(arity: Arity) -> int:
        if arity not in dims:
            a, b = arity
            source = left if a == 1 else right
            dims[arity] = quotient_slot(source, a, b, a + b - 2).dim
        return dims[arity]

    arities = diamond_arities(m, n)
    if not arities:
        return 0
    total = 0
    for tree in enumerate_trees(m, n, arities, max(cap, 1)):
        if not is_reduced(tree):
            continue
        size = 1
        for arity in tree.arities:
            size *= decoration_dim(arity)
            if not size:
                break
        total += size
    log_with_context(
        logger, "debug", "underline free dimension", slot=f"{m},{n}", dim=total
    )
    return total


def slot_dimensions(
    presentation: Presentation, slots: Iterable[Arity], max_vertices: int
) -> Dict[Arity, int]:
    return {(m, n): quotient_slot(presentation, m, n, max_vertices).dim for m, n in slots}
