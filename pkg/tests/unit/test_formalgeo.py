"""Unit tests for polynomial fields, brackets, tensor files and structure checks."""

import random
from fractions import Fraction

import pytest

from src.exactalg import GradedSpace
from src.exceptions import InvalidInputError, ParseError
from src.formalgeo import (
    PolyField,
    ProductField,
    TensorCollection,
    TfStructure,
    VectorField,
    assemble,
    canonical_entries,
    collection_axiom_check,
    custom_coordinates,
    dump_field,
    dump_tensors,
    even_bracket,
    even_model,
    exp_adjoint,
    extract,
    extract_all,
    flat_model,
    format_field,
    hm_bracket,
    lie1bi_axiom_check,
    liebi_axiom_check,
    liebi_check,
    load_field,
    load_tensors,
    mc_check,
    mc_residual,
    normalize,
    odd_bracket,
    odd_model,
    parse_field,
    parse_field_file,
    parse_tensors,
    poisson_bracket,
    relation_residuals,
    tf_axiom_check,
    tf_check,
)
from src.formalgeo.checks import bracket_map, cobracket_map
from src.minimodel.samples import monomials

ORDER = 6


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def random_field(coords, rng: random.Random, degree: int) -> PolyField:
    terms = {}
    for monomial in monomials(coords, degree, range(1, 4), mixed=False):
        if rng.random() < 0.5:
            terms[monomial] = Fraction(rng.randint(-3, 3))
    return PolyField(coords, terms, ORDER)


def homogeneous_triple(coords, seed: int):
    rng = random.Random(seed)
    candidates = [d for d in range(-2, 5) if monomials(coords, d, range(1, 4), mixed=False)]
    fields = []
    while len(fields) < 3:
        degree = rng.choice(candidates)
        field = random_field(coords, rng, degree)
        if not field.is_zero():
            fields.append((field, degree))
    return fields


@pytest.fixture
def odd_coords():
    return odd_model(GradedSpace.from_pairs([("e1", 0), ("e2", 1)]))


@pytest.fixture
def even_coords():
    return even_model(GradedSpace.from_pairs([("e1", 0), ("e2", 1)]))


@pytest.mark.unit
class TestPolynomials:
    """Test truncated superfunctions."""

    def test_odd_symbols_square_to_zero(self, odd_coords):
        t2 = odd_coords.index("t2")
        assert normalize(odd_coords, [t2, t2])[0] == 0
        assert PolyField.from_word(odd_coords, [t2, t2]).is_zero()

    def test_reordering_odd_symbols_flips_sign(self, odd_coords):
        t2, psi1 = odd_coords.index("t2"), odd_coords.index("psi1")
        forward, _ = normalize(odd_coords, [t2, psi1])
        backward, _ = normalize(odd_coords, [psi1, t2])
        assert forward == -backward

    def test_even_symbols_commute(self, odd_coords):
        t1, psi2 = odd_coords.index("t1"), odd_coords.index("psi2")
        assert PolyField.from_word(odd_coords, [t1, psi2]) == PolyField.from_word(odd_coords, [psi2, t1])

    def test_truncation_drops_high_orders(self, odd_coords):
        field = parse_field("t1 + t1*t1*t1", odd_coords, order=2)
        assert field.orders() == [1]

    def test_format_then_parse(self, odd_coords):
        field = parse_field("2*t1*psi2 - 1/2*t2*psi1*psi2 + t1^2*psi2", odd_coords, order=4)
        assert parse_field(format_field(field), odd_coords, order=4) == field
        assert field.degree() == 2

    def test_left_and_right_derivatives(self, odd_coords):
        t2, psi1 = odd_coords.index("t2"), odd_coords.index("psi1")
        field = PolyField.from_word(odd_coords, [t2, psi1])
        assert field.right_derivative(psi1) == PolyField.symbol(odd_coords, "t2")
        assert field.left_derivative(psi1) == -PolyField.symbol(odd_coords, "t2")

    def test_parse_error_reports_unknown_symbol(self, odd_coords):
        with pytest.raises(ParseError) as excinfo:
            parse_field("t1*q7", odd_coords, path="f.yaml", line=3)
        assert "f.yaml:3" in str(excinfo.value)

    def test_fields_from_different_models_do_not_mix(self, odd_coords, even_coords):
        with pytest.raises(InvalidInputError):
            PolyField.symbol(odd_coords, "t1") + PolyField.symbol(even_coords, "t1")


@pytest.mark.unit
class TestOddBracket:
    """Test the degree -1 bracket."""

    def test_darboux_pairs(self, odd_coords):
        t1 = PolyField.symbol(odd_coords, "t1")
        psi1 = PolyField.symbol(odd_coords, "psi1")
        assert poisson_bracket(psi1, t1) == PolyField.constant(odd_coords, 1)
        assert poisson_bracket(t1, t1).is_zero()
        assert poisson_bracket(psi1, psi1).is_zero()

    @pytest.mark.parametrize("seed", range(6))
    def test_graded_symmetry(self, odd_coords, seed):
        (f, a), (g, b), _ = homogeneous_triple(odd_coords, seed)
        assert odd_bracket(f, g) == odd_bracket(g, f).scaled(sign(a * b + a + b))

    @pytest.mark.parametrize("seed", range(6))
    def test_jacobi(self, odd_coords, seed):
        (f, a), (g, b), (h, _) = homogeneous_triple(odd_coords, 50 + seed)
        left = odd_bracket(f, odd_bracket(g, h))
        right = odd_bracket(odd_bracket(f, g), h) + odd_bracket(g, odd_bracket(f, h)).scaled(
            sign((a + 1) * (b + 1))
        )
        assert left == right

    @pytest.mark.parametrize("seed", range(4))
    def test_leibniz(self, odd_coords, seed):
        (f, a), (g, b), (h, _) = homogeneous_triple(odd_coords, 90 + seed)
        left = odd_bracket(f, g * h)
        right = odd_bracket(f, g) * h + (g * odd_bracket(f, h)).scaled(sign((a + 1) * b))
        assert left == right

    def test_flat_model_has_no_bracket(self):
        coords = flat_model(GradedSpace.concentrated(2))
        t1 = PolyField.symbol(coords, "t1")
        with pytest.raises(InvalidInputError):
            poisson_bracket(t1, t1)

    def test_model_mismatch(self, odd_coords, even_coords):
        with pytest.raises(InvalidInputError):
            even_bracket(PolyField.symbol(odd_coords, "t1"), PolyField.symbol(odd_coords, "t1"))


@pytest.mark.unit
class TestEvenBracket:
    """Test the degree -2 bracket."""

    def test_darboux_pair(self, even_coords):
        t1 = PolyField.symbol(even_coords, "t1")
        psi1 = PolyField.symbol(even_coords, "psi1")
        assert even_bracket(psi1, t1) == PolyField.constant(even_coords, 1)

    @pytest.mark.parametrize("seed", range(6))
    def test_symmetry_and_jacobi(self, even_coords, seed):
        (f, a), (g, b), (h, _) = homogeneous_triple(even_coords, 200 + seed)
        assert even_bracket(f, g) == even_bracket(g, f).scaled(-sign(a * b))
        left = even_bracket(f, even_bracket(g, h))
        right = even_bracket(even_bracket(f, g), h) + even_bracket(g, even_bracket(f, h)).scaled(sign(a * b))
        assert left == right


@pytest.mark.unit
class TestExpAdjoint:
    """Test exp(ad_b)."""

    def test_first_terms(self, odd_coords):
        b = parse_field("t1*t1*psi1 + t1*t2*psi2", odd_coords, order=4)
        gamma = parse_field("t1*psi2", odd_coords, order=4)
        moved = exp_adjoint(b, gamma)
        difference = moved - gamma - poisson_bracket(b, gamma)
        assert difference.is_zero() or difference.lowest_order() >= 4

    def test_keeps_maurer_cartan(self, odd_coords):
        b = parse_field("t1*t1*psi1 + t1*t2*psi2", odd_coords, order=5)
        gamma = parse_field("t1*psi2", odd_coords, order=5)
        assert mc_residual(exp_adjoint(b, gamma)).is_zero()

    def test_zero_generator(self, odd_coords):
        gamma = parse_field("t1*psi2", odd_coords, order=4)
        assert exp_adjoint(PolyField.zero(odd_coords, 4), gamma) == gamma

    def test_rejects_quadratic_generator(self, odd_coords):
        b = parse_field("t1*psi1", odd_coords, order=4)
        with pytest.raises(InvalidInputError):
            exp_adjoint(b, b)


@pytest.mark.unit
class TestTensorCollections:
    """Test tensor files, assembly and extraction."""

    def test_load_example(self, examples_dir):
        tc, order = load_tensors(examples_dir / "lie_coalgebra.tensors.yaml")
        assert (tc.model, order, tc.space.dim) == ("lie1bi", 4, 2)
        assert tc.entries[(2, 1)] == {((0, 1), (1,)): Fraction(1)}

    def test_extract_inverts_assemble(self, examples_dir):
        tc, order = load_tensors(examples_dir / "broken_coalgebra.tensors.yaml")
        gamma = assemble(tc, order)
        assert extract(gamma, tc, 2, 1) == canonical_entries(tc).entries[(2, 1)]

    def test_extract_all_recovers_collection(self, examples_dir):
        tc, order = load_tensors(examples_dir / "lie_bialgebra.tensors.yaml")
        template = TensorCollection(tc.space, tc.model)
        assert extract_all(assemble(tc, order), template).entries == canonical_entries(tc).entries

    def test_dump_then_parse(self, examples_dir):
        tc, order = load_tensors(examples_dir / "lie_bialgebra.tensors.yaml")
        again, again_order = parse_tensors(dump_tensors(tc, order=order))
        assert again_order == order
        assert canonical_entries(again).entries == canonical_entries(tc).entries

    def test_unknown_model(self):
        with pytest.raises((ParseError, InvalidInputError)):
            TensorCollection(GradedSpace.concentrated(1), "nope")

    @pytest.mark.parametrize(
        "coefficients",
        ['"mu[2,1][1,2]": 1', '"mu[2,1][1,2|9]": 1', '"mu[2,1][1,2|1]": 0.5'],
    )
    def test_malformed_coefficients(self, coefficients):
        text = (
            "kind: tensors\nmodel: lie1bi\nbasis:\n  - {name: e1}\n  - {name: e2}\n"
            f"coefficients:\n  {coefficients}\n"
        )
        with pytest.raises(ParseError) as excinfo:
            parse_tensors(text, "bad.tensors.yaml")
        assert "bad.tensors.yaml" in str(excinfo.value)


@pytest.mark.unit
class TestMaurerCartan:
    """Test the Maurer-Cartan check."""

    @pytest.mark.parametrize(
        "name, expected",
        [("lie_coalgebra", True), ("broken_coalgebra", False), ("zero", True)],
    )
    def test_examples(self, examples_dir, name, expected):
        tc, order = load_tensors(examples_dir / f"{name}.tensors.yaml")
        report = mc_check(assemble(tc, order))
        assert report.is_solution is expected
        assert (report.residual_terms == 0) is expected

    def test_failing_components(self, examples_dir):
        tc, order = load_tensors(examples_dir / "broken_coalgebra.tensors.yaml")
        report = mc_check(assemble(tc, order))
        assert report.components
        assert sum(report.components.values()) == report.residual_terms
        assert all(key.count(",") == 1 for key in report.components)

    def test_quadratic_part_is_a_differential(self):
        coords = odd_model(GradedSpace.from_pairs([("e1", 0), ("e2", 1), ("e3", 2)]))
        assert mc_check(parse_field("t1*psi2", coords, order=4)).is_solution
        report = mc_check(parse_field("t1*psi2 + t2*psi3", coords, order=4))
        assert not report.is_solution
        assert report.first_failing_order == 2

    def test_wrong_degree(self, odd_coords):
        with pytest.raises(InvalidInputError):
            mc_check(parse_field("t1*psi1", odd_coords, order=4))

    def test_must_vanish_on_both_sides(self, odd_coords):
        with pytest.raises(InvalidInputError):
            mc_check(parse_field("psi2", odd_coords, order=4))

    def test_model_mismatch(self, odd_coords):
        with pytest.raises(InvalidInputError):
            mc_check(parse_field("t1*psi2", odd_coords, order=4), "liebi")

    def test_poisson_germ(self):
        plane = odd_model(GradedSpace.concentrated(2))
        assert mc_check(parse_field("t1*t2*psi1*psi2", plane, order=5)).is_solution
        with pytest.raises(InvalidInputError):
            mc_check(parse_field("t1*t2*psi1*psi2 + t1*psi1", plane, order=5))

    def test_lie_bialgebra_example(self, examples_dir):
        tc, order = load_tensors(examples_dir / "lie_bialgebra.tensors.yaml")
        assert liebi_check(assemble(tc, order)).is_solution
        assert collection_axiom_check(tc).passed


@pytest.mark.unit
class TestAxiomChecks:
    """Test the axiom checks and their agreement with the Maurer-Cartan check."""

    def test_coalgebra_examples(self, examples_dir):
        good, _ = load_tensors(examples_dir / "lie_coalgebra.tensors.yaml")
        bad, _ = load_tensors(examples_dir / "broken_coalgebra.tensors.yaml")
        assert collection_axiom_check(good).passed
        report = collection_axiom_check(bad)
        assert not report.passed
        assert report.checks["co_jacobi"] is False

    def test_explicit_cobracket(self):
        space = GradedSpace.concentrated(2)
        cobracket = cobracket_map([(2, 1, 2, 1), (2, 2, 1, -1)])
        assert lie1bi_axiom_check(space, cobracket, {}).passed

    def test_ungraded_space_has_no_odd_bracket(self):
        space = GradedSpace.concentrated(2)
        report = lie1bi_axiom_check(space, {}, bracket_map([(1, 1, 1, 1)]))
        assert report.checks["degrees"] is False

    def test_ordinary_lie_bialgebra(self):
        space = GradedSpace.concentrated(2)
        bracket = bracket_map([(1, 2, 2, 1), (2, 1, 2, -1)])
        cobracket = cobracket_map([(2, 1, 2, 1), (2, 2, 1, -1)])
        assert liebi_axiom_check(space, cobracket, bracket).passed

    @pytest.mark.parametrize("variant", ["tf", "tf_wedge", "tf_sym"])
    def test_zero_tf_structure(self, variant):
        assert tf_axiom_check(GradedSpace.concentrated(2), {}, {}, variant).passed

    def test_unknown_tf_variant(self):
        with pytest.raises(InvalidInputError):
            tf_axiom_check(GradedSpace.concentrated(1), {}, {}, "tf_odd")

    def test_relation_residuals_of_coalgebras(self, examples_dir):
        good, _ = load_tensors(examples_dir / "lie_coalgebra.tensors.yaml")
        bad, _ = load_tensors(examples_dir / "broken_coalgebra.tensors.yaml")
        assert not any(relation_residuals(good, 4).values())
        residuals = relation_residuals(bad, 4)
        assert residuals["3,1"] > 0
        assert list(residuals) == sorted(residuals, key=lambda key: tuple(map(int, key.split(","))))

    def test_relation_residuals_window_below_three(self, examples_dir):
        good, _ = load_tensors(examples_dir / "lie_coalgebra.tensors.yaml")
        with pytest.raises(InvalidInputError):
            relation_residuals(good, 2)

    @pytest.fixture
    def four_leg_collection(self):
        """δ(v4) = v1∧v2 and μ22(v3, v3) = v3∧v4 on an ungraded V of dimension 4."""
        tc = TensorCollection(GradedSpace.concentrated(4), "lie1bi")
        tc.set(2, 1, (0, 1), (3,), 1)
        tc.set(2, 2, (2, 3), (2, 2), 1)
        return tc

    def test_four_leg_relation_fails_above_binary_slots(self, four_leg_collection):
        assert not any(relation_residuals(four_leg_collection, 4).values())
        residuals = relation_residuals(four_leg_collection, 5)
        assert residuals["3,2"] > 0
        assert all(count == 0 for key, count in residuals.items() if key != "3,2")

    def test_axiom_check_sees_four_leg_relations(self, four_leg_collection):
        report = collection_axiom_check(four_leg_collection)
        assert report.checks["co_jacobi"] is True
        assert report.checks["higher_relations"] is False
        assert report.relations["3,2"] > 0
        assert not report.passed
        mc = mc_check(assemble(four_leg_collection, 5))
        assert not mc.is_solution
        assert mc.components.get("3,2", 0) > 0

    def test_binary_collections_skip_higher_relations(self, examples_dir):
        good, _ = load_tensors(examples_dir / "lie_coalgebra.tensors.yaml")
        report = collection_axiom_check(good)
        assert report.checks["higher_relations"] is True
        assert report.relations == {}

    @pytest.mark.parametrize("seed", range(8))
    def test_agrees_with_maurer_cartan(self, seed):
        rng = random.Random(seed)
        tc = TensorCollection(GradedSpace.concentrated(3), "lie1bi")
        for betas in [(0, 1), (0, 2), (1, 2)]:
            for alpha in range(3):
                if rng.random() < 0.25:
                    tc.set(2, 1, betas, (alpha,), rng.choice([-1, 1]))
        verdict = mc_check(assemble(tc, 4)).is_solution
        assert collection_axiom_check(tc).passed is verdict


@pytest.mark.unit
class TestFManifold:
    """Test the quadratic bracket of a product."""

    @pytest.fixture
    def plane(self):
        return flat_model(GradedSpace.concentrated(2))

    def unit(self, coords, index):
        return VectorField.build(coords, {index: PolyField.constant(coords, 1)}, 0)

    def test_worked_example(self, plane):
        mu = ProductField.build(plane, {(0, 0, 0): PolyField.symbol(plane, "t2")})
        d1, d2 = self.unit(plane, 0), self.unit(plane, 1)
        result = hm_bracket(mu, d1, d1, d1, d2)
        assert result.component(0) == PolyField.symbol(plane, "t2")
        assert result.component(1).is_zero()

    def test_zero_product(self, plane):
        mu = ProductField.build(plane, {})
        d1, d2 = self.unit(plane, 0), self.unit(plane, 1)
        assert hm_bracket(mu, d1, d2, d1, d2).is_zero()

    def test_constant_product(self, plane):
        mu = ProductField.constant(plane, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
        d1, d2 = self.unit(plane, 0), self.unit(plane, 1)
        assert hm_bracket(mu, d1, d2, d2, d1).is_zero()

    def test_needs_ungraded_flat_model(self, odd_coords):
        with pytest.raises(InvalidInputError):
            ProductField.build(odd_coords, {})


@pytest.mark.unit
class TestFieldFiles:
    """Test field files."""

    def test_load_example(self, examples_dir):
        field = load_field(examples_dir / "split.field.yaml")
        assert field.coords.model == "odd"
        assert len(field) == 2
        assert field.order == 4

    def test_dump_then_parse(self, examples_dir):
        field = load_field(examples_dir / "split.field.yaml")
        assert parse_field_file(dump_field(field)) == field

    def test_explicit_coordinates(self):
        text = (
            "kind: field\nmodel: odd\norder: 3\n"
            "coordinates:\n  - {name: x, degree: 0, side: base}\n  - {name: xi, degree: 1, side: fiber}\n"
            "pairs: [[x, xi]]\nfield: \"x*xi\"\n"
        )
        field = parse_field_file(text)
        expected = custom_coordinates("odd", [("x", 0, "base"), ("xi", 1, "fiber")], [("x", "xi")])
        assert field.coords == expected
        assert field.degree() == 1

    def test_unknown_symbol(self):
        text = "kind: field\nmodel: odd\nbasis:\n  - {name: e1}\nfield: \"t7\"\n"
        with pytest.raises(ParseError):
            parse_field_file(text, "bad.field.yaml")


@pytest.mark.unit
class TestTfStructures:
    """Test TF structures on the flat model of V = <e1 (deg 0), e2 (deg 1)>."""

    @pytest.fixture
    def space(self):
        return GradedSpace.from_pairs([("e1", 0), ("e2", 1)])

    def collection(self, space, with_tensor: bool) -> TensorCollection:
        tc = TensorCollection(space, "tf")
        tc.set(1, 2, (1,), (0, 0), 1)
        if with_tensor:
            tc.set(2, 1, (0, 0), (0,), 1)
        return tc

    def test_vector_part_squares_to_zero(self, space):
        report = tf_check(assemble(self.collection(space, False), 4))
        assert report.bracket_closed
        assert report.passed

    def test_tensor_not_preserved(self, space):
        report = tf_check(assemble(self.collection(space, True), 4))
        assert report.bracket_closed
        assert not report.invariant
        assert report.residual_terms > 0

    @pytest.mark.parametrize("with_tensor", [False, True])
    def test_axiom_check_agrees(self, space, with_tensor):
        tc = self.collection(space, with_tensor)
        assert collection_axiom_check(tc).passed is tf_check(assemble(tc, 4)).passed

    def test_invariant_cobracket_on_the_bracket_image(self):
        space = GradedSpace.from_pairs([("e1", 0), ("e2", 1), ("e3", 2)])
        tc = TensorCollection(space, "tf")
        tc.set(1, 2, (1,), (0, 0), 1)
        tc.set(2, 1, (1, 1), (2,), 1)
        assert tf_check(assemble(tc, 4)).passed
        assert collection_axiom_check(tc).passed

    def test_extract_all_recovers_collection(self, space):
        tc = self.collection(space, True)
        structure = assemble(tc, 4)
        assert extract_all(structure, TensorCollection(space, "tf")).entries == canonical_entries(tc).entries

    def test_must_vanish_at_origin(self, space):
        coords = flat_model(space)
        constant = VectorField.build(coords, {0: PolyField.constant(coords, 1, 4)}, 0)
        structure = assemble(self.collection(space, False), 4)
        with pytest.raises(InvalidInputError):
            tf_check(TfStructure(constant, structure.tensor))
