"""
Canonical forms of trees and decorated terms.

Every slot of a vertex sees a nonempty set of legs beyond it, and these sets
partition the legs, so slots are ordered by their smallest leg and vertices
by the sorted tuple of their slot leg sets. Leg-labeled trees whose vertices
all have at least three slots have no automorphisms, which makes the layout
unique. Internal edges are renumbered by (source index, target index) in the
canonical vertex order.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Protocol, Tuple

from ..exactalg.signs import koszul_sign
from .tree import (
    EDGE,
    Combination,
    Node,
    Term,
    Token,
    Tree,
    add_term,
    bare_tree,
    leg_key,
)

LegSet = FrozenSet[Tuple[int, int]]


class SlotActions(Protocol):
    """Degrees and adjacent-transposition actions of vertex labels."""

    def degree(self, label: str) -> int: ...

    def act_out(self, label: str, k: int) -> Mapping[str, Fraction]: ...

    def act_in(self, label: str, k: int) -> Mapping[str, Fraction]: ...


@dataclass(frozen=True)
class Layout:
    """
    How to reach canonical form.

    ``vertex_order[p]`` is the old index of the vertex placed at p;
    ``out_order[v][s]`` the old position of the slot placed at s on vertex v
    (same for ``in_order``); ``edge_map`` sends old edge ids to new ones.
    """

    vertex_order: Tuple[int, ...]
    out_order: Tuple[Tuple[int, ...], ...]
    in_order: Tuple[Tuple[int, ...], ...]
    edge_map: Dict[int, int]

    def is_identity(self) -> bool:
        return (
            list(self.vertex_order) == list(range(len(self.vertex_order)))
            and all(list(o) == list(range(len(o))) for o in self.out_order)
            and all(list(o) == list(range(len(o))) for o in self.in_order)
            and all(k == v for k, v in self.edge_map.items())
        )


def _slot_leg_sets(tree: Tree) -> List[Tuple[List[LegSet], List[LegSet]]]:
    vertices = tree.vertices
    endpoints: Dict[int, Tuple[int, int]] = {
        e: (s, t) for s, t, e in tree.internal_edges
    }
    memo: Dict[Tuple[int, int], LegSet] = {}

    def beyond(v: int, e: int) -> LegSet:
        if (v, e) in memo:
            return memo[(v, e)]
        source, target = endpoints[e]
        w = target if source == v else source
        legs = set()
        outs, ins = vertices[w]
        for token in outs + ins:
            if token[0] == EDGE:
                if token[1] != e:
                    legs |= beyond(w, token[1])
            else:
                legs.add(leg_key(token))
        memo[(v, e)] = frozenset(legs)
        return memo[(v, e)]

    def slot_set(v: int, token: Token) -> LegSet:
        if token[0] == EDGE:
            return beyond(v, token[1])
        return frozenset([leg_key(token)])

    return [
        ([slot_set(v, t) for t in outs], [slot_set(v, t) for t in ins])
        for v, (outs, ins) in enumerate(vertices)
    ]


def canonical_layout(tree: Tree) -> Layout:
    leg_sets = _slot_leg_sets(tree)
    out_order: List[Tuple[int, ...]] = []
    in_order: List[Tuple[int, ...]] = []
    keys = []
    for v, (out_sets, in_sets) in enumerate(leg_sets):
        out_order.append(tuple(sorted(range(len(out_sets)), key=lambda s: min(out_sets[s]))))
        in_order.append(tuple(sorted(range(len(in_sets)), key=lambda s: min(in_sets[s]))))
        keys.append(
            (
                tuple(sorted(tuple(sorted(s)) for s in out_sets)),
                tuple(sorted(tuple(sorted(s)) for s in in_sets)),
            )
        )
    vertex_order = tuple(sorted(range(len(keys)), key=lambda v: keys[v]))
    new_index = {old: new for new, old in enumerate(vertex_order)}
    edges = sorted(
        tree.internal_edges, key=lambda edge: (new_index[edge[0]], new_index[edge[1]])
    )
    edge_map = {e: position + 1 for position, (_, _, e) in enumerate(edges)}
    return Layout(vertex_order, tuple(out_order), tuple(in_order), edge_map)


def _rename(token: Token, edge_map: Dict[int, int]) -> Token:
    return (EDGE, edge_map[token[1]]) if token[0] == EDGE else token


def apply_layout(tree: Tree, layout: Layout) -> Tree:
    vertices = []
    for old in layout.vertex_order:
        outs, ins = tree.vertices[old]
        vertices.append(
            (
                tuple(_rename(outs[s], layout.edge_map) for s in layout.out_order[old]),
                tuple(_rename(ins[s], layout.edge_map) for s in layout.in_order[old]),
            )
        )
    return Tree(tuple(vertices))


def canonical_form(tree: Tree) -> Tuple[Tree, Layout]:
    """
    Canonical representative of a tree's isomorphism class.

    Returns:
        (canonical tree, layout recording the vertex, slot and edge permutations)
    """
    layout = canonical_layout(tree)
    return apply_layout(tree, layout), layout


def canonical_tree(tree: Tree) -> Tree:
    return canonical_form(tree)[0]


def _bubble_to(order: Tuple[int, ...], vector: Dict[str, Fraction], act) -> Dict[str, Fraction]:
    """Sort slot positions into ``order`` with adjacent swaps, acting on the label."""
    rank = {old: new for new, old in enumerate(order)}
    current = list(range(len(order)))
    changed = True
    while changed:
        changed = False
        for k in range(len(current) - 1):
            if rank[current[k]] > rank[current[k + 1]]:
                current[k], current[k + 1] = current[k + 1], current[k]
                moved: Dict[str, Fraction] = {}
                for label, coefficient in vector.items():
                    for image, factor in act(label, k).items():
                        value = moved.get(image, Fraction(0)) + coefficient * factor
                        if value:
                            moved[image] = value
                        else:
                            moved.pop(image, None)
                vector = moved
                changed = True
    return vector


def canonicalize_term(term: Term, actions: SlotActions) -> Tuple[Combination, Dict[int, int]]:
    """
    Rewrite a decorated term as a combination of canonical decorated terms.

    Slot reorderings act on labels through the adjacent transpositions
    (``(g, (..a, b..)) = (τ_k g, (..b, a..))``); vertex reorderings carry the
    Koszul sign of the label degrees.

    Returns:
        (combination of canonical terms, old-to-new internal edge id map)
    """
    tree = bare_tree(term)
    layout = canonical_layout(tree)
    per_vertex: List[Dict[str, Fraction]] = []
    for v, (label, _, _) in enumerate(term):
        vector = {label: Fraction(1)}
        vector = _bubble_to(layout.out_order[v], vector, actions.act_out)
        vector = _bubble_to(layout.in_order[v], vector, actions.act_in)
        per_vertex.append(vector)

    slots = []
    for old in layout.vertex_order:
        _, outs, ins = term[old]
        slots.append(
            (
                tuple(_rename(outs[s], layout.edge_map) for s in layout.out_order[old]),
                tuple(_rename(ins[s], layout.edge_map) for s in layout.in_order[old]),
            )
        )

    permutation = [old + 1 for old in layout.vertex_order]
    result: Combination = {}
    options = [sorted(per_vertex[old].items()) for old in range(len(term))]
    for choice in product(*options):
        degrees = [actions.degree(label) for label, _ in choice]
        coefficient = Fraction(1)
        for _, factor in choice:
            coefficient *= factor
        sign = koszul_sign(permutation, degrees)
        nodes: List[Node] = []
        for position, old in enumerate(layout.vertex_order):
            outs, ins = slots[position]
            nodes.append((choice[old][0], outs, ins))
        add_term(result, tuple(nodes), sign * coefficient)
    return result, layout.edge_map


def canonicalize(combination: Mapping[Term, Fraction], actions: SlotActions) -> Combination:
    result: Combination = {}
    for term, coefficient in combination.items():
        canonical, _ = canonicalize_term(term, actions)
        for image, factor in canonical.items():
            add_term(result, image, coefficient * factor)
    return result


def is_canonical_term(term: Term) -> bool:
    return canonical_layout(bare_tree(term)).is_identity()
