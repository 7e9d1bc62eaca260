"""Grafting of trees and the reduced-tree predicate."""

from typing import Dict, Tuple

from ..exactalg.signs import sort_sign
from ..exceptions import InvalidInputError
from .canonical import canonical_form
from .tree import EDGE, IN, OUT, Term, Token, Tree, max_edge_id, relabel_term, shift_edges


def graft_mappings(
    upper_arity: Tuple[int, int],
    i: int,
    lower_arity: Tuple[int, int],
    j: int,
    edge: Token,
) -> Tuple[Dict[Token, Token], Dict[Token, Token]]:
    """
    Leg relabelings for plugging output i of the lower piece into input j of
    the upper piece.

    The composite's outputs are the lower outputs before i, then the upper
    outputs, then the lower outputs after i; its inputs are the upper inputs
    before j, then the lower inputs, then the upper inputs after j.
    """
    m1, n1 = upper_arity
    m2, n2 = lower_arity
    if not (1 <= i <= m2 and 1 <= j <= n1):
        raise InvalidInputError(
            "graft index out of range", i=i, j=j, upper=upper_arity, lower=lower_arity
        )
    upper: Dict[Token, Token] = {}
    lower: Dict[Token, Token] = {}
    for k in range(1, m1 + 1):
        upper[(OUT, k)] = (OUT, k + i - 1)
    for k in range(1, m2 + 1):
        if k < i:
            lower[(OUT, k)] = (OUT, k)
        elif k > i:
            lower[(OUT, k)] = (OUT, k + m1 - 1)
        else:
            lower[(OUT, k)] = edge
    for k in range(1, n1 + 1):
        if k < j:
            upper[(IN, k)] = (IN, k)
        elif k > j:
            upper[(IN, k)] = (IN, k + n2 - 1)
        else:
            upper[(IN, k)] = edge
    for k in range(1, n2 + 1):
        lower[(IN, k)] = (IN, k + j - 1)
    return upper, lower


def graft_terms(upper: Term, i: int, lower: Term, j: int, upper_arity, lower_arity) -> Term:
    """Concatenate two decorated terms along a new edge, upper nodes first."""
    offset = max_edge_id(upper)
    lower_shifted = shift_edges(lower, offset)
    edge = (EDGE, offset + max_edge_id(lower) + 1)
    upper_map, lower_map = graft_mappings(upper_arity, i, lower_arity, j, edge)
    return relabel_term(upper, upper_map) + relabel_term(lower_shifted, lower_map)


def graft(upper: Tree, i: int, lower: Tree, j: int) -> Tuple[Tree, int]:
    """
    Graft output i of ``lower`` into input j of ``upper``.

    Returns:
        (canonical composite tree, sign of reordering the edge word
        (upper edges, lower edges, new edge) into the canonical edge order)

    Raises:
        InvalidInputError: if an index is out of range
    """
    upper_term = tuple(("", outs, ins) for outs, ins in upper.vertices)
    lower_term = tuple(("", outs, ins) for outs, ins in lower.vertices)
    composite = graft_terms(upper_term, i, lower_term, j, (upper.m, upper.n), (lower.m, lower.n))
    tree = Tree(tuple((outs, ins) for _, outs, ins in composite))
    canonical, layout = canonical_form(tree)
    offset = max_edge_id(upper_term)
    word = [e for _, _, e in upper.internal_edges]
    word += [e + offset for _, _, e in lower.internal_edges]
    word.append(offset + max_edge_id(lower_term) + 1)
    sign = sort_sign([layout.edge_map[e] for e in word])
    return canonical, sign


def is_reduced(tree: Tree) -> bool:
    """
    True when every vertex has (a root or at least two outgoing internal
    edges) and (a leaf or at least two incoming internal edges).
    """
    for outs, ins in tree.vertices:
        out_edges = sum(1 for t in outs if t[0] == EDGE)
        in_edges = sum(1 for t in ins if t[0] == EDGE)
        has_root = any(t[0] == OUT for t in outs)
        has_leaf = any(t[0] == IN for t in ins)
        if not (has_root or out_edges >= 2):
            return False
        if not (has_leaf or in_edges >= 2):
            return False
    return True
