"""Unit tests for exact scalars, signs, graded spaces and linear algebra."""

import random
from fractions import Fraction

import pytest
import sympy

from src.exactalg import (
    Echelon,
    GradedSpace,
    SignedMatrix,
    annihilator,
    block_diagonal,
    format_rational,
    koszul_sign,
    permutation_sign,
    quotient_basis,
    rank,
    rank_kernel,
    shuffle_sign,
    solve_in_basis,
    sort_sign,
    span_rank,
    to_rational,
)
from src.exceptions import InvalidInputError, ParseError


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.5) -> SignedMatrix:
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                entries[(r, c)] = Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3]))
    return SignedMatrix(rows, cols, entries)


@pytest.mark.unit
class TestScalars:
    """Test rational parsing and printing."""

    def test_parse_forms(self):
        assert to_rational(3) == Fraction(3)
        assert to_rational("-2/4") == Fraction(-1, 2)
        assert to_rational(" 7 ") == Fraction(7)
        assert to_rational(Fraction(5, 3)) == Fraction(5, 3)

    @pytest.mark.parametrize("bad", [0.5, "1/0", "abc", True, "1.5"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ParseError):
            to_rational(bad)

    def test_format(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-3, 6)) == "-1/2"


@pytest.mark.unit
class TestSigns:
    """Test permutation parities and Koszul signs."""

    def test_permutation_sign(self):
        assert permutation_sign([1, 2, 3]) == 1
        assert permutation_sign([2, 1, 3]) == -1
        assert permutation_sign([2, 3, 1]) == 1

    def test_permutation_sign_rejects_non_bijections(self):
        with pytest.raises(InvalidInputError):
            permutation_sign([1, 1, 2])

    def test_koszul_sign_only_counts_odd_pairs(self):
        assert koszul_sign([2, 1], [1, 1]) == -1
        assert koszul_sign([2, 1], [1, 0]) == 1
        assert koszul_sign([3, 2, 1], [1, 1, 1]) == -1
        assert koszul_sign([3, 2, 1], [0, 0, 0]) == 1

    def test_koszul_sign_agrees_with_parity_when_all_odd(self):
        rng = random.Random(7)
        for _ in range(20):
            perm = list(range(1, 6))
            rng.shuffle(perm)
            assert koszul_sign(perm, [1] * 5) == permutation_sign(perm)

    def test_koszul_sign_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            koszul_sign([1, 2], [1])

    def test_sort_and_shuffle_signs(self):
        assert sort_sign([3, 1, 2]) == 1
        assert sort_sign([2, 1]) == -1
        assert sort_sign([2, 1], reverse=True) == 1
        assert shuffle_sign([1, 3], [2]) == -1
        with pytest.raises(InvalidInputError):
            sort_sign([1, 1])


@pytest.mark.unit
class TestGradedSpace:
    """Test graded spaces."""

    def test_shift_and_dual(self):
        space = GradedSpace.from_pairs([("a", 0), ("b", 1)])
        assert space.shift(1).degrees == [-1, 0]
        assert space.dual().degrees == [0, -1]
        assert space.dual().labels == ["a*", "b*"]

    def test_blocks_and_lookup(self):
        space = GradedSpace.from_pairs([("a", 0), ("b", 1), ("c", 0)])
        assert space.degree_blocks() == {0: [0, 2], 1: [1]}
        assert space.index("c") == 2
        assert not space.is_ungraded()
        assert GradedSpace.concentrated(3).is_ungraded()
        with pytest.raises(InvalidInputError):
            space.index("z")

    def test_duplicate_labels_rejected(self):
        with pytest.raises(InvalidInputError):
            GradedSpace.from_pairs([("a", 0), ("a", 1)])


@pytest.mark.unit
class TestSignedMatrix:
    """Test sparse matrices."""

    def test_zero_entries_are_dropped(self):
        m = SignedMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(2)})
        assert m.entries == {(1, 1): Fraction(2)}

    def test_out_of_range(self):
        with pytest.raises(InvalidInputError):
            SignedMatrix(1, 1, {(1, 0): 1})

    def test_product_matches_dense(self):
        a = SignedMatrix.from_dense([[1, 2], [0, 1]])
        b = SignedMatrix.from_dense([[1, 0], [3, 1]])
        assert (a @ b).to_dense() == [[7, 2], [3, 1]]
        assert (a - a).is_zero()
        assert a.transpose().get(1, 0) == 2

    def test_block_diagonal(self):
        m = block_diagonal([SignedMatrix.identity(1), SignedMatrix.scalar(2, 3)])
        assert m.rows == m.cols == 3
        assert m.get(2, 2) == 3 and m.get(0, 1) == 0


@pytest.mark.unit
class TestLinearAlgebra:
    """Test exact elimination against sympy."""

    @pytest.mark.parametrize("seed", range(8))
    def test_rank_matches_sympy(self, seed):
        rng = random.Random(seed)
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        oracle = sympy.Matrix(m.to_dense()).rank()
        assert rank(m) == oracle

    @pytest.mark.parametrize("seed", range(5))
    def test_kernel_is_a_kernel(self, seed):
        rng = random.Random(100 + seed)
        m = random_matrix(rng, 4, 6)
        r, kernel = rank_kernel(m)
        assert r + len(kernel) == m.cols
        for vector in kernel:
            assert m.apply(vector) == {}
        assert span_rank(kernel) == len(kernel)

    def test_echelon_membership(self):
        e = Echelon([{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}])
        assert e.rank == 2
        assert e.contains({0: Fraction(3)})
        assert not e.add({0: Fraction(1)})
        assert e.pivots == [0, 1]

    def test_quotient_basis_is_complement(self):
        e = Echelon([{1: Fraction(1), 2: Fraction(1)}])
        assert quotient_basis(3, e) == [0, 2]

    def test_annihilator(self):
        subspace = [{0: Fraction(1)}]
        result = annihilator(subspace, 2, SignedMatrix.identity(2))
        assert len(result) == 1
        assert result[0].get(0, 0) == 0

    def test_annihilator_needs_nondegenerate_pairing(self):
        with pytest.raises(InvalidInputError):
            annihilator([], 2, SignedMatrix(2, 2, {(0, 0): 1}))

    def test_solve_in_basis(self):
        basis = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1)}]
        assert solve_in_basis(basis, {0: Fraction(2), 1: Fraction(5)}) == {0: 2, 1: 3}
        assert solve_in_basis([{0: Fraction(1)}], {1: Fraction(1)}) is None
