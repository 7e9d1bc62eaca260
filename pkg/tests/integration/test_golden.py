"""Comparisons against hand-computed golden files in tests/fixtures."""

import re
from collections import Counter

import pytest
from click.testing import CliRunner

from src.cli import cli
from src.cli.reporting import HEADER
from src.cobar import WindowDioperad, cohomology_slot
from src.dioperad import load_named, quadratic_dual
from src.resolutions import generator_differentials, resolution_collection
from src.treespace import format_term

LABEL = re.compile(r"\b(e\d+_\d+(?:\.t)?)\(")


def shapes(image) -> Counter:
    """Vertex labels of each term, read back from its tree syntax."""
    return Counter(" ".join(sorted(LABEL.findall(format_term(term)))) for term in image)


@pytest.mark.integration
class TestGoldenDimensions:
    """Test dual slot dimensions and cobar ranks."""

    @pytest.mark.parametrize("name", ["tf", "lie1bi"])
    def test_dual_slot_dimensions(self, golden, name):
        expected = golden("dual_dims.yaml")[name]
        dual = WindowDioperad(quadratic_dual(load_named(name)), 4)
        assert {f"{m},{n}": dual.dim(m, n) for m, n in ((1, 2), (2, 1), (1, 3), (2, 2), (3, 1))} == expected

    @pytest.mark.parametrize("slot", [(1, 3), (2, 2), (3, 1)])
    @pytest.mark.parametrize("reversed_order", [False, True])
    def test_lie1bi_dual_cobar(self, golden, lie1bi, slot, reversed_order):
        expected = golden("lie1bi_dual_cobar.yaml")["{},{}".format(*slot)]
        dual = WindowDioperad(quadratic_dual(lie1bi), 4)
        result = cohomology_slot(dual, *slot, expected["cohomology"][0], reversed_order)
        assert result.chain_dims == expected["chain_dims"]
        assert result.ranks == expected["ranks"]
        assert result.cohomology == expected["cohomology"]
        assert result.passed


@pytest.mark.integration
class TestGoldenResolutions:
    """Test the closed-form differentials term by term."""

    @pytest.mark.parametrize("resolution", ["lie1bi", "liebi"])
    def test_generator_images(self, golden, resolution):
        expected = golden("resolution_shapes.yaml")[resolution]
        images = generator_differentials(resolution, resolution_collection(resolution, 5))
        assert set(images) == set(expected)
        for name, image in images.items():
            assert shapes(image) == Counter(expected[name]), name
            assert all(abs(c) == 1 for c in image.values()), name


@pytest.mark.integration
class TestGoldenReports:
    """Test structured CLI reports line for line."""

    def test_koszul_lie1bi(self, golden):
        expected = golden("koszul_lie1bi_window4.txt").splitlines()
        result = CliRunner().invoke(
            cli, ["--format", "structured", "koszul", "lie1bi", "--window", "4"], obj={}
        )
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        start = lines.index(HEADER)
        assert lines[start : start + len(expected)] == expected
