"""Enumeration of labeled (m,n)-trees with prescribed vertex arities."""

from itertools import count, product
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from ..exceptions import DioperadError, InvalidInputError
from ..logging_config import get_logger, log_with_context
from .canonical import canonical_tree
from .isomorphism import isomorphism_classes
from .tree import EDGE, IN, OUT, Token, Tree, Vertex

logger = get_logger("treespace.enumerate")

# (token, side) where side is the slot side on the vertex holding the token
Slot = Tuple[Token, str]


def _set_partitions(items: Sequence) -> Iterator[List[List]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for k in range(len(partition)):
            yield partition[:k] + [[first] + partition[k]] + partition[k + 1 :]


def _rooted(
    slots: List[Slot],
    anchor: Slot,
    arities: Set[Tuple[int, int]],
    budget: int,
    fresh: Iterator[int],
) -> List[List[Vertex]]:
    """All trees on ``slots`` listed root-first, the root holding ``anchor``."""
    if budget < 1:
        return []
    rest = [s for s in slots if s != anchor]
    results: List[List[Vertex]] = []
    for partition in _set_partitions(rest):
        choices = []
        for block in partition:
            options = [("out", block), ("in", block)]
            if len(block) == 1:
                options.insert(0, ("direct", block))
            choices.append(options)
        for choice in product(*choices):
            outs: List[Token] = [anchor[0]] if anchor[1] == "out" else []
            ins: List[Token] = [anchor[0]] if anchor[1] == "in" else []
            hanging = []
            for kind, block in choice:
                if kind == "direct":
                    token, side = block[0]
                    (outs if side == "out" else ins).append(token)
                else:
                    edge = (EDGE, next(fresh))
                    (outs if kind == "out" else ins).append(edge)
                    # the subtree sees the edge on the opposite side
                    subtree_anchor = (edge, "in" if kind == "out" else "out")
                    hanging.append((block + [subtree_anchor], subtree_anchor))
            if (len(outs), len(ins)) not in arities:
                continue
            if 1 + len(hanging) > budget:
                continue
            subtree_lists = []
            for block_slots, block_anchor in hanging:
                options = _rooted(
                    block_slots, block_anchor, arities, budget - len(hanging), fresh
                )
                if not options:
                    break
                subtree_lists.append(options)
            else:
                root: Vertex = (tuple(outs), tuple(ins))
                for combo in product(*subtree_lists):
                    size = 1 + sum(len(sub) for sub in combo)
                    if size <= budget:
                        vertices = [root]
                        for sub in combo:
                            vertices.extend(sub)
                        results.append(vertices)
    return results


def enumerate_trees(
    m: int,
    n: int,
    arities: Iterable[Tuple[int, int]],
    max_vertices: int,
    exact_vertices: Optional[int] = None,
    cross_check: bool = False,
) -> List[Tree]:
    """
    One canonical representative per isomorphism class of (m,n)-trees.

    Args:
        m: number of output legs
        n: number of input legs
        arities: allowed vertex arities (outputs, inputs)
        max_vertices: vertex cap
        exact_vertices: if given, keep only trees with this many vertices
        cross_check: match the representatives pairwise as graphs

    Returns:
        canonical trees sorted by vertex count, then encoding

    Raises:
        InvalidInputError: for m or n below 1 or an empty arity set
        DioperadError: if the cross-check finds two isomorphic representatives
    """
    allowed = set(arities)
    if m < 1 or n < 1:
        raise InvalidInputError("trees need m, n >= 1", m=m, n=n)
    if not allowed:
        raise InvalidInputError("allowed vertex arity set is empty")
    slots: List[Slot] = [((OUT, k), "out") for k in range(1, m + 1)] + [
        ((IN, k), "in") for k in range(1, n + 1)
    ]
    fresh = count(1)
    seen = {}
    for vertices in _rooted(slots, slots[0], allowed, max_vertices, fresh):
        tree = canonical_tree(Tree(tuple(vertices)))
        if exact_vertices is not None and len(tree.vertices) != exact_vertices:
            continue
        seen.setdefault(tree.encoding(), tree)
    trees = sorted(seen.values(), key=lambda t: (len(t.vertices), t.encoding()))
    if cross_check:
        merged = [group for group in isomorphism_classes(trees) if len(group) > 1]
        if merged:
            raise DioperadError(
                "two canonical representatives are isomorphic", slot=f"{m},{n}", classes=merged
            )
    log_with_context(
        logger, "debug", "enumerated trees", slot=f"{m},{n}", count=len(trees)
    )
    return trees


def enumerate_trivalent_trees(m: int, n: int, max_vertices: int) -> List[Tree]:
    """Trees whose vertices all have arity three or more."""
    arities = {(a, b) for a in range(1, m + 1) for b in range(1, n + 1) if a + b >= 3}
    return enumerate_trees(m, n, arities, max_vertices)
