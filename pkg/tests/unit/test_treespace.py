"""Unit tests for tree enumeration, canonical forms, grafting and syntax."""

import pytest
import networkx as nx

from src.exceptions import DioperadError, InvalidInputError, ParseError
from src.treespace import (
    EDGE,
    IN,
    OUT,
    Tree,
    are_isomorphic,
    bare_tree,
    canonical_tree,
    corolla,
    det_line,
    enumerate_trees,
    enumerate_trivalent_trees,
    format_term,
    graft,
    is_reduced,
    isomorphism_classes,
    parse_term,
    term_arity,
)
from src.treespace.isomorphism import to_digraph

BINARY = {(1, 2)}
TRIVALENT = {(1, 2), (2, 1)}


def binary_tree(edge: int = 1, swap: bool = False) -> Tree:
    """bracket(bracket(1, 2), 3) with a chosen edge id and vertex order."""
    upper = (((OUT, 1),), ((EDGE, edge), (IN, 3)))
    lower = (((EDGE, edge),), ((IN, 1), (IN, 2)))
    return Tree((lower, upper) if swap else (upper, lower))


def four_leaf_tree() -> Tree:
    return Tree(
        (
            (((OUT, 1),), ((EDGE, 1), (EDGE, 2))),
            (((EDGE, 1),), ((IN, 1), (IN, 2))),
            (((EDGE, 2),), ((IN, 3), (IN, 4))),
        )
    )


@pytest.mark.unit
class TestTree:
    """Test tree validation."""

    def test_arities(self):
        tree = binary_tree()
        assert (tree.m, tree.n) == (1, 3)
        assert sorted(tree.arities) == [(1, 2), (1, 2)]
        assert tree.internal_edges == [(1, 0, 1)]

    def test_rejects_dangling_edge(self):
        with pytest.raises(InvalidInputError):
            Tree(((((OUT, 1),), ((EDGE, 1), (IN, 1))),))

    def test_rejects_bad_leg_labels(self):
        with pytest.raises(InvalidInputError):
            Tree(((((OUT, 2),), ((IN, 1),)),))

    def test_rejects_empty_vertex_side(self):
        with pytest.raises(InvalidInputError):
            Tree((((), ((IN, 1),)),))


@pytest.mark.unit
class TestEnumeration:
    """Test enumeration of isomorphism classes against networkx matching."""

    @pytest.mark.parametrize("n, expected", [(2, 1), (3, 3), (4, 15)])
    def test_binary_trees_with_labeled_leaves(self, n, expected):
        trees = enumerate_trees(1, n, BINARY, max_vertices=n - 1)
        assert len(trees) == expected

    def test_two_two_trivalent_trees(self):
        assert len(enumerate_trees(2, 2, TRIVALENT, max_vertices=2)) == 5

    def test_exact_vertex_filter(self):
        trees = enumerate_trees(2, 2, TRIVALENT | {(2, 2)}, max_vertices=2, exact_vertices=1)
        assert len(trees) == 1

    @pytest.mark.parametrize("m, n", [(1, 4), (2, 2), (2, 3), (3, 2)])
    def test_representatives_are_pairwise_non_isomorphic(self, m, n):
        trees = enumerate_trivalent_trees(m, n, max_vertices=m + n - 2)
        assert trees
        classes = isomorphism_classes(trees)
        assert len(classes) == len(trees)

    def test_cross_check_accepts_canonical_enumeration(self):
        assert len(enumerate_trees(2, 2, TRIVALENT, max_vertices=2, cross_check=True)) == 5

    def test_cross_check_rejects_merged_classes(self, mocker):
        mocker.patch("src.treespace.enumerate.isomorphism_classes", return_value=[[0, 1], [2]])
        with pytest.raises(DioperadError) as excinfo:
            enumerate_trees(1, 3, BINARY, max_vertices=2, cross_check=True)
        assert excinfo.value.context["classes"] == [[0, 1]]

    def test_networkx_matcher_sees_equal_leg_labels(self):
        first, second = binary_tree(), binary_tree(edge=7, swap=True)
        matcher = nx.algorithms.isomorphism.DiGraphMatcher(
            to_digraph(first), to_digraph(second), node_match=lambda a, b: a["label"] == b["label"]
        )
        assert matcher.is_isomorphic()

    def test_invalid_requests(self):
        with pytest.raises(InvalidInputError):
            enumerate_trees(0, 2, BINARY, 2)
        with pytest.raises(InvalidInputError):
            enumerate_trees(1, 2, set(), 2)


@pytest.mark.unit
class TestCanonicalForm:
    """Test canonical representatives."""

    def test_independent_of_layout(self):
        assert canonical_tree(binary_tree()) == canonical_tree(binary_tree(edge=9, swap=True))

    def test_distinguishes_leg_labels(self):
        other = Tree(
            (
                (((OUT, 1),), ((EDGE, 1), (IN, 1))),
                (((EDGE, 1),), ((IN, 2), (IN, 3))),
            )
        )
        assert not are_isomorphic(binary_tree(), other)
        assert canonical_tree(binary_tree()) != canonical_tree(other)

    def test_idempotent(self):
        tree = canonical_tree(four_leaf_tree())
        assert canonical_tree(tree) == tree


@pytest.mark.unit
class TestGraft:
    """Test grafting."""

    def test_graft_two_corollas(self):
        bracket = bare_tree(corolla("", 1, 2))
        tree, sign = graft(bracket, 1, bracket, 1)
        assert (tree.m, tree.n) == (1, 3)
        assert len(tree.vertices) == 2
        assert sign in (1, -1)
        assert are_isomorphic(tree, binary_tree())

    def test_graft_out_of_range(self):
        bracket = bare_tree(corolla("", 1, 2))
        with pytest.raises(InvalidInputError):
            graft(bracket, 2, bracket, 1)

    def test_reduced_predicate(self):
        assert is_reduced(bare_tree(corolla("", 2, 2)))
        assert not is_reduced(binary_tree())


@pytest.mark.unit
class TestOrientation:
    """Test det lines."""

    def test_reference_word_has_sign_one(self):
        assert det_line(four_leaf_tree()).sign() == 1

    def test_swapping_edges_flips_sign(self):
        line = det_line(four_leaf_tree())
        assert line.reordered(tuple(reversed(line.word))).sign() == -1

    def test_reversed_reference(self):
        forward = det_line(four_leaf_tree())
        backward = det_line(four_leaf_tree(), reversed_order=True)
        assert backward.reference == tuple(reversed(forward.reference))

    def test_reference_follows_edge_ids(self):
        tree = Tree(
            (
                (((OUT, 1),), ((EDGE, 5), (EDGE, 2))),
                (((EDGE, 5),), ((IN, 1), (IN, 2))),
                (((EDGE, 2),), ((IN, 3), (IN, 4))),
            )
        )
        line = det_line(tree)
        assert line.reference == ((EDGE, 2), (EDGE, 5))
        assert line.reordered([(EDGE, 5), (EDGE, 2)]).sign() == -1
        assert det_line(tree, reversed_order=True).reordered([(EDGE, 5), (EDGE, 2)]).sign() == 1


@pytest.mark.unit
class TestSyntax:
    """Test the term syntax."""

    def test_parse_nested_term(self):
        term = parse_term("bracket(out:[1], in:[bracket(out:[*], in:[1, 2]), 3])")
        assert term_arity(term) == (1, 3)
        assert sorted(label for label, _, _ in term) == ["bracket", "bracket"]

    def test_format_then_parse_gives_same_tree(self):
        term = parse_term("delta(out:[1, 2], in:[bracket(out:[*], in:[1, 2])])")
        again = parse_term(format_term(term))
        assert canonical_tree(bare_tree(again)) == canonical_tree(bare_tree(term))

    def test_parse_error_reports_location(self):
        with pytest.raises(ParseError) as excinfo:
            parse_term("bracket(out:[1], in:[1, 2", path="p.yaml", line=4)
        assert "p.yaml:4" in str(excinfo.value)
