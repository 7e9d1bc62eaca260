"""
Directed genus-0 (m,n)-trees with labeled legs.

A vertex is a pair ``(outs, ins)`` of slot tokens. A token is one of

* ``("o", k)``: output leg k (a root),
* ``("i", k)``: input leg k (a leaf),
* ``("e", id)``: an internal edge.

An internal edge is an output slot of its lower (source) vertex and an input
slot of its upper (target) vertex; flow runs from inputs at the bottom to
outputs at the top. Decorated trees replace each vertex by a node
``(label, outs, ins)`` where the label names a generator basis element
attached to the slots in the given order.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from ..exceptions import InvalidInputError

Token = Tuple[str, int]
Slots = Tuple[Token, ...]
Vertex = Tuple[Slots, Slots]
Node = Tuple[str, Slots, Slots]
Term = Tuple[Node, ...]
Combination = Dict[Term, Fraction]

OUT, IN, EDGE = "o", "i", "e"


def leg_key(token: Token) -> Tuple[int, int]:
    """Sort key of a leg: outputs before inputs, then by label."""
    kind, label = token
    if kind == OUT:
        return (0, label)
    if kind == IN:
        return (1, label)
    raise InvalidInputError(f"token {token!r} is not a leg")


@dataclass(frozen=True)
class Tree:
    """An (m,n)-tree given by its ordered vertices."""

    vertices: Tuple[Vertex, ...]

    def __post_init__(self):
        self.validate()

    @property
    def m(self) -> int:
        return sum(1 for outs, _ in self.vertices for t in outs if t[0] == OUT)

    @property
    def n(self) -> int:
        return sum(1 for _, ins in self.vertices for t in ins if t[0] == IN)

    @property
    def arities(self) -> List[Tuple[int, int]]:
        return [(len(outs), len(ins)) for outs, ins in self.vertices]

    @property
    def output_legs(self) -> Dict[int, int]:
        return {
            t[1]: v for v, (outs, _) in enumerate(self.vertices) for t in outs if t[0] == OUT
        }

    @property
    def input_legs(self) -> Dict[int, int]:
        return {
            t[1]: v for v, (_, ins) in enumerate(self.vertices) for t in ins if t[0] == IN
        }

    @property
    def internal_edges(self) -> List[Tuple[int, int, int]]:
        """(source vertex, target vertex, edge id) sorted by edge id."""
        sources = {t[1]: v for v, (outs, _) in enumerate(self.vertices) for t in outs if t[0] == EDGE}
        targets = {t[1]: v for v, (_, ins) in enumerate(self.vertices) for t in ins if t[0] == EDGE}
        return [(sources[e], targets[e], e) for e in sorted(sources)]

    def validate(self) -> None:
        if not self.vertices:
            raise InvalidInputError("a tree needs at least one vertex")
        out_edges: Dict[int, int] = {}
        in_edges: Dict[int, int] = {}
        outs_seen: List[int] = []
        ins_seen: List[int] = []
        for v, (outs, ins) in enumerate(self.vertices):
            if not outs or not ins:
                raise InvalidInputError(
                    "every vertex needs an outgoing and an incoming slot", vertex=v
                )
            for kind, label in outs:
                if kind == OUT:
                    outs_seen.append(label)
                elif kind == EDGE:
                    if label in out_edges:
                        raise InvalidInputError("edge leaves two vertices", edge=label)
                    out_edges[label] = v
                else:
                    raise InvalidInputError("input leg in an output slot", vertex=v)
            for kind, label in ins:
                if kind == IN:
                    ins_seen.append(label)
                elif kind == EDGE:
                    if label in in_edges:
                        raise InvalidInputError("edge enters two vertices", edge=label)
                    in_edges[label] = v
                else:
                    raise InvalidInputError("output leg in an input slot", vertex=v)
        if sorted(outs_seen) != list(range(1, len(outs_seen) + 1)):
            raise InvalidInputError("output legs must be labeled 1..m", legs=outs_seen)
        if sorted(ins_seen) != list(range(1, len(ins_seen) + 1)):
            raise InvalidInputError("input legs must be labeled 1..n", legs=ins_seen)
        if set(out_edges) != set(in_edges):
            raise InvalidInputError("dangling internal edge")
        if len(out_edges) != len(self.vertices) - 1:
            raise InvalidInputError(
                "a genus-0 tree has one internal edge fewer than vertices",
                vertices=len(self.vertices),
                edges=len(out_edges),
            )
        # connectivity: with |E| = |V| - 1 this also rules out cycles
        adjacency: Dict[int, List[int]] = {v: [] for v in range(len(self.vertices))}
        for e, source in out_edges.items():
            adjacency[source].append(in_edges[e])
            adjacency[in_edges[e]].append(source)
        seen = {0}
        stack = [0]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise InvalidInputError("tree is disconnected")

    def encoding(self) -> Tuple[Vertex, ...]:
        return self.vertices


def bare_tree(term: Term) -> Tree:
    return Tree(tuple((outs, ins) for _, outs, ins in term))


def term_arity(term: Term) -> Tuple[int, int]:
    tree = bare_tree(term)
    return tree.m, tree.n


def corolla(label: str, m: int, n: int) -> Term:
    """Single-vertex term with legs in standard order."""
    return (
        (
            label,
            tuple((OUT, k) for k in range(1, m + 1)),
            tuple((IN, k) for k in range(1, n + 1)),
        ),
    )


def relabel_term(term: Term, mapping: Mapping[Token, Token]) -> Term:
    """Replace slot tokens according to a mapping; unmapped tokens are kept."""
    return tuple(
        (
            label,
            tuple(mapping.get(t, t) for t in outs),
            tuple(mapping.get(t, t) for t in ins),
        )
        for label, outs, ins in term
    )


def max_edge_id(term: Term) -> int:
    ids = [t[1] for _, outs, ins in term for t in outs + ins if t[0] == EDGE]
    return max(ids, default=0)


def shift_edges(term: Term, offset: int) -> Term:
    mapping = {
        t: (EDGE, t[1] + offset)
        for _, outs, ins in term
        for t in outs + ins
        if t[0] == EDGE
    }
    return relabel_term(term, mapping)


# -- linear combinations of decorated terms ---------------------------------


def add_term(target: Combination, term: Term, coefficient) -> None:
    coefficient = Fraction(coefficient)
    if not coefficient:
        return
    value = target.get(term, Fraction(0)) + coefficient
    if value:
        target[term] = value
    else:
        target.pop(term, None)


def add_into(target: Combination, source: Mapping[Term, Fraction], factor=1) -> None:
    factor = Fraction(factor)
    for term, coefficient in source.items():
        add_term(target, term, coefficient * factor)


def combine(parts: Iterable[Tuple[Mapping[Term, Fraction], Fraction]]) -> Combination:
    result: Combination = {}
    for part, factor in parts:
        add_into(result, part, factor)
    return result


def scale(source: Mapping[Term, Fraction], factor) -> Combination:
    result: Combination = {}
    add_into(result, source, factor)
    return result
