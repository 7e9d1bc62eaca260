"""Acceptance-scale runs: wider windows and the random decomposition suite."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import List, Tuple

import pytest

from src.cli import cli
from src.cobar import koszulness_report
from src.dioperad import load_named
from src.exactalg import GradedSpace
from src.exceptions import InvalidInputError
from src.formalgeo import (
    PolyField,
    TensorCollection,
    assemble,
    collection_axiom_check,
    even_bracket,
    even_model,
    liebi_check,
    load_field,
    load_tensors,
    mc_check,
    model_coordinates,
    odd_bracket,
    odd_model,
    tf_check,
)
from src.formalgeo.tensors import orbit_sign
from src.minimodel import (
    decompose,
    decomposition_report,
    delta_homotopy,
    delta_operator,
    morphism_check,
    projection,
    pullback,
    random_mc_structure,
    split_quadratic,
)
from src.minimodel.samples import monomials
from src.resolutions import RESOLUTIONS, resolution_report

Key = Tuple[int, int, Tuple[int, ...], Tuple[int, ...]]


@pytest.mark.integration
@pytest.mark.slow
class TestWideWindows:
    """Test the cobar and resolution checks at the default window sizes."""

    @pytest.mark.parametrize("name", sorted(RESOLUTIONS))
    def test_resolutions_square_to_zero(self, name):
        report = resolution_report(name, 6)
        assert all(count == 0 for count in report.d_squared.values())
        assert report.passed

    @pytest.mark.parametrize("name", ["lie1bi", "tf", "liebi", "lie", "com"])
    def test_koszul_in_window_five(self, name):
        report = koszulness_report(load_named(name), 5)
        assert report.verdict == "koszul-in-window"
        assert all(slot.d_squared_zero for slot in report.slots)

    def test_reversed_filtration_agrees(self):
        presentation = load_named("lie1bi")
        forward = koszulness_report(presentation, 5, with_criterion=False)
        backward = koszulness_report(presentation, 5, reversed_order=True, with_criterion=False)
        assert [s.cohomology for s in forward.slots] == [s.cohomology for s in backward.slots]


@pytest.mark.integration
@pytest.mark.slow
class TestRandomDecompositions:
    """Test decompositions of random Maurer-Cartan structures."""

    @pytest.mark.parametrize("seed", range(20))
    def test_decomposition_post_conditions(self, seed):
        gamma, _ = random_mc_structure(seed, order=4)
        result = decompose(gamma)
        assert pullback(result.f_map, gamma) == result.adapted
        assert result.minimal.uses_only(result.splitting.minimal_symbols)
        assert morphism_check(result.f_map, result.adapted, gamma).passed
        assert decomposition_report(result, gamma).passed
        if not result.minimal.is_zero():
            assert mc_check(result.reduced_minimal()).is_solution


def admissible_keys(space: GradedSpace, model: str) -> List[Key]:
    """(1,2) and (2,1) index tuples whose coefficient survives assembly."""
    coords = model_coordinates(space, model)
    keys = []
    for m, n in [(1, 2), (2, 1)]:
        if model == "tf" and m == 2:
            outputs = product(range(space.dim), repeat=m)
        else:
            outputs = combinations_with_replacement(range(space.dim), m)
        for betas in outputs:
            for alphas in combinations_with_replacement(range(space.dim), n):
                trial = TensorCollection(space, model)
                try:
                    trial.set(m, n, betas, alphas, 1)
                except InvalidInputError:
                    continue
                if orbit_sign(trial, coords, m, betas, alphas)[0]:
                    keys.append((m, n, betas, alphas))
    return keys


def random_collection(model: str, seed: int) -> TensorCollection:
    """Random (1,2) and (2,1) coefficients on a graded V of dimension at most 3, never all zero."""
    rng = random.Random(seed)
    keys: List[Key] = []
    while not keys:
        dim = rng.randint(1, 3)
        space = GradedSpace.from_pairs((f"e{k + 1}", rng.choice([-1, 0, 1])) for k in range(dim))
        keys = admissible_keys(space, model)
    tc = TensorCollection(space, model)
    chosen = [key for key in keys if rng.random() < 0.4] or [rng.choice(keys)]
    for m, n, betas, alphas in chosen:
        tc.set(m, n, betas, alphas, rng.choice([-2, -1, 1, 2]))
    return tc


def mc_verdict(tc: TensorCollection) -> bool:
    structure = assemble(tc, 4)
    if tc.model == "tf":
        return tf_check(structure).passed
    if tc.model == "liebi":
        return liebi_check(structure).is_solution
    return mc_check(structure).is_solution


def tf_collection(degrees, entries) -> TensorCollection:
    space = GradedSpace.from_pairs((f"e{k + 1}", degree) for k, degree in enumerate(degrees))
    tc = TensorCollection(space, "tf")
    for m, n, betas, alphas in entries:
        tc.set(m, n, betas, alphas, 1)
    return tc


@pytest.mark.integration
@pytest.mark.slow
class TestEquivalenceSuites:
    """Test that the Maurer-Cartan verdict agrees with the axiom checks."""

    @pytest.mark.parametrize("seed", range(50))
    def test_lie1bi(self, seed):
        tc = random_collection("lie1bi", seed)
        assert not tc.is_zero()
        assert mc_verdict(tc) is collection_axiom_check(tc).passed

    @pytest.mark.parametrize("seed", range(50))
    def test_liebi(self, seed):
        tc = random_collection("liebi", 1000 + seed)
        assert not tc.is_zero()
        assert mc_verdict(tc) is collection_axiom_check(tc).passed

    @pytest.mark.parametrize("seed", range(50))
    def test_tf(self, seed):
        tc = random_collection("tf", 2000 + seed)
        assert not tc.is_zero()
        assert mc_verdict(tc) is collection_axiom_check(tc).passed

    @pytest.mark.parametrize(
        "name, expected",
        [("lie_coalgebra", True), ("broken_coalgebra", False), ("lie_bialgebra", True)],
    )
    def test_shipped_collections(self, examples_dir, name, expected):
        tc, _ = load_tensors(examples_dir / f"{name}.tensors.yaml")
        assert mc_verdict(tc) is expected
        assert collection_axiom_check(tc).passed is expected

    @pytest.mark.parametrize(
        "degrees, entries, expected",
        [
            ((0, 1, 2), [(1, 2, (1,), (0, 0)), (2, 1, (1, 1), (2,))], True),
            ((0, 1), [(1, 2, (1,), (0, 0)), (2, 1, (0, 0), (0,))], False),
            ((0, 1), [(1, 2, (1,), (0, 0))], True),
        ],
    )
    def test_known_tf_collections(self, degrees, entries, expected):
        tc = tf_collection(degrees, entries)
        assert mc_verdict(tc) is expected
        assert collection_axiom_check(tc).passed is expected


@pytest.mark.integration
@pytest.mark.slow
class TestHomotopyExhaustive:
    """Test δH + Hδ = id - π on every monomial of order at most five."""

    def test_every_monomial(self, examples_dir):
        gamma = load_field(examples_dir / "split.field.yaml").with_order(5)
        splitting = split_quadratic(gamma)
        target = splitting.target
        for order in range(1, 6):
            for word in combinations_with_replacement(range(target.size), order):
                f = PolyField.from_word(target, word, 1, 5)
                if f.is_zero():
                    continue
                left = delta_operator(delta_homotopy(f, splitting), splitting) + delta_homotopy(
                    delta_operator(f, splitting), splitting
                )
                assert left == f - projection(f, splitting), word


@pytest.mark.integration
@pytest.mark.slow
class TestDeterminism:
    """Test byte-identical structured reports."""

    def test_koszul_report(self, runner):
        args = ["--format", "structured", "koszul", "lie1bi", "--window", "5"]
        first = runner.invoke(cli, args, obj={})
        second = runner.invoke(cli, args, obj={})
        assert first.exit_code == 0
        assert first.stdout == second.stdout


BRACKET_ORDER = 5


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def homogeneous_fields(coords, seed: int, count: int, orders: range):
    """Nonzero random homogeneous fields with their degrees."""
    rng = random.Random(seed)
    candidates = [d for d in range(-2, 5) if monomials(coords, d, orders, mixed=False)]
    fields = []
    while len(fields) < count:
        degree = rng.choice(candidates)
        terms = {
            monomial: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
            for monomial in monomials(coords, degree, orders, mixed=False)
            if rng.random() < 0.5
        }
        field = PolyField(coords, terms, BRACKET_ORDER)
        if not field.is_zero():
            fields.append((field, degree))
    return fields


@pytest.mark.integration
@pytest.mark.slow
class TestBracketIdentities:
    """Test the graded identities of both brackets on random fields at N = 5."""

    SPACE = GradedSpace.from_pairs([("e1", 0), ("e2", 1)])

    @pytest.mark.parametrize("seed", range(200))
    def test_odd_bracket(self, seed):
        coords = odd_model(self.SPACE)
        (f, a), (g, b), (h, _) = homogeneous_fields(coords, seed, 3, range(1, 4))
        assert odd_bracket(f, g) == odd_bracket(g, f).scaled(sign(a * b + a + b))
        left = odd_bracket(f, odd_bracket(g, h))
        right = odd_bracket(odd_bracket(f, g), h) + odd_bracket(g, odd_bracket(f, h)).scaled(
            sign((a + 1) * (b + 1))
        )
        assert left == right
        (f, a), (g, b), (h, _) = homogeneous_fields(coords, 10_000 + seed, 3, range(1, 3))
        assert odd_bracket(f, g * h) == odd_bracket(f, g) * h + (g * odd_bracket(f, h)).scaled(
            sign((a + 1) * b)
        )

    @pytest.mark.parametrize("seed", range(200))
    def test_even_bracket(self, seed):
        coords = even_model(self.SPACE)
        (f, a), (g, b), (h, _) = homogeneous_fields(coords, 20_000 + seed, 3, range(1, 4))
        assert even_bracket(f, g) == even_bracket(g, f).scaled(-sign(a * b))
        left = even_bracket(f, even_bracket(g, h))
        right = even_bracket(even_bracket(f, g), h) + even_bracket(g, even_bracket(f, h)).scaled(sign(a * b))
        assert left == right
        (f, a), (g, b), (h, _) = homogeneous_fields(coords, 30_000 + seed, 3, range(1, 3))
        assert even_bracket(f, g * h) == even_bracket(f, g) * h + (g * even_bracket(f, h)).scaled(sign(a * b))
