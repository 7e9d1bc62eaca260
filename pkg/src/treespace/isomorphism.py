"""Brute-force isomorphism testing of leg-labeled trees via networkx."""

from typing import List

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .tree import EDGE, IN, OUT, Tree


def to_digraph(tree: Tree) -> nx.DiGraph:
    """
    Directed graph with one node per vertex and per leg.

    Edges point in the flow direction (leaf -> vertex -> root). Leg nodes carry
    their label so matching must respect them.
    """
    graph = nx.DiGraph()
    for v, (outs, ins) in enumerate(tree.vertices):
        graph.add_node(("v", v), label="vertex")
        for kind, label in outs:
            if kind == OUT:
                graph.add_node((OUT, label), label=f"out{label}")
                graph.add_edge(("v", v), (OUT, label))
        for kind, label in ins:
            if kind == IN:
                graph.add_node((IN, label), label=f"in{label}")
                graph.add_edge((IN, label), ("v", v))
    for source, target, _ in tree.internal_edges:
        graph.add_edge(("v", source), ("v", target))
    return graph


def are_isomorphic(first: Tree, second: Tree) -> bool:
    matcher = DiGraphMatcher(
        to_digraph(first),
        to_digraph(second),
        node_match=lambda a, b: a["label"] == b["label"],
    )
    return matcher.is_isomorphic()


def isomorphism_classes(trees: List[Tree]) -> List[List[int]]:
    """Group tree indices into isomorphism classes by exhaustive matching."""
    classes: List[List[int]] = []
    for index, tree in enumerate(trees):
        for group in classes:
            if are_isomorphic(trees[group[0]], tree):
                group.append(index)
                break
        else:
            classes.append([index])
    return classes


def edge_count(tree: Tree) -> int:
    return sum(1 for outs, _ in tree.vertices for t in outs if t[0] == EDGE)
