"""Unit tests for the explicit minimal resolutions."""

import pytest

from src.exceptions import InvalidInputError
from src.resolutions import (
    RESOLUTIONS,
    d_lie1bi,
    d_liebi,
    d_tf,
    generator_arities,
    generator_degree,
    degree_zero_presentation,
    generator_differentials,
    resolution_collection,
    resolution_report,
    resolution_to_presentation_check,
    splittings,
)


@pytest.mark.unit
class TestGenerators:
    """Test generator bookkeeping."""

    def test_degrees(self):
        assert generator_degree("lie1bi", 2, 1) == 0
        assert generator_degree("lie1bi", 1, 2) == 1
        assert generator_degree("tf", 1, 4) == 1
        assert generator_degree("tf", 2, 3) == 0

    def test_tf_has_no_three_output_generators(self):
        assert all(m <= 2 for m, _ in generator_arities("tf", 6))

    def test_unknown_resolution(self):
        with pytest.raises(InvalidInputError):
            resolution_collection("homotopy", 4)

    def test_window_below_three(self):
        with pytest.raises(InvalidInputError):
            resolution_collection("lie1bi", 2)

    def test_splittings_cover_all_subsets(self):
        assert len(list(splittings(3))) == 8


@pytest.mark.unit
class TestDifferentials:
    """Test d on low corollas."""

    @pytest.mark.parametrize("formula, resolution", [(d_lie1bi, "lie1bi"), (d_liebi, "liebi")])
    @pytest.mark.parametrize("slot", [(1, 2), (2, 1)])
    def test_binary_generators_are_closed(self, formula, resolution, slot):
        collection = resolution_collection(resolution, 4)
        assert not formula(collection, *slot)

    def test_tf_binary_generators_are_closed(self):
        collection = resolution_collection("tf", 4)
        assert not d_tf(collection, 1, 2)
        assert not d_tf(collection, 2, 1)

    def test_three_leg_generator_hits_two_vertex_trees(self):
        collection = resolution_collection("lie1bi", 4)
        image = d_lie1bi(collection, 2, 2)
        assert image
        assert all(len(term) == 2 for term in image)

    def test_images_for_every_label(self):
        collection = resolution_collection("tf", 4)
        images = generator_differentials("tf", collection)
        assert len(images) == sum(len(collection.names(m, n)) for m, n in collection.support())

    def test_illegal_arity(self):
        collection = resolution_collection("lie1bi", 4)
        with pytest.raises(InvalidInputError):
            d_lie1bi(collection, 1, 1)


@pytest.mark.unit
class TestResolutionReport:
    """Test d² and the structural checks in a small window."""

    @pytest.mark.parametrize("resolution", RESOLUTIONS)
    def test_window_five(self, resolution):
        report = resolution_report(resolution, 5)
        assert all(count == 0 for count in report.d_squared.values())
        assert report.degree_ok
        assert report.equivariant
        assert report.passed

    def test_skip_presentation(self):
        report = resolution_report("lie1bi", 4, with_presentation=False)
        assert report.presentation_match == []


@pytest.mark.unit
class TestDegreeZeroPresentation:
    """Test that each resolution resolves its catalogue presentation."""

    @pytest.mark.parametrize("resolution", RESOLUTIONS)
    def test_slot_dimensions_match(self, resolution):
        entries = resolution_to_presentation_check(resolution, 4)
        assert {entry.slot for entry in entries} == {"1,2", "2,1", "1,3", "2,2", "3,1"}
        assert all(entry.matches for entry in entries)

    def test_relations_live_in_three_leg_slots(self):
        presentation = degree_zero_presentation("lie1bi")
        assert set(presentation.relations) <= {(1, 3), (2, 2), (3, 1)}

    @pytest.mark.parametrize("resolution", RESOLUTIONS)
    def test_relations_are_collected(self, resolution):
        presentation = degree_zero_presentation(resolution)
        assert presentation.relation_count() > 0
        assert (2, 2) in presentation.relations

    def test_small_window_still_collects_relations(self):
        presentation = degree_zero_presentation("lie1bi", 3)
        assert presentation.relation_count() > 0

    @pytest.mark.parametrize(
        "resolution, slot, expected",
        [("lie1bi", "2,2", 4), ("tf", "2,2", 8), ("tf", "3,1", 12), ("liebi", "2,2", 4)],
    )
    def test_quotient_dimensions(self, resolution, slot, expected):
        entries = {entry.slot: entry for entry in resolution_to_presentation_check(resolution, 5)}
        assert entries[slot].dim == expected
        assert entries["2,2"].ideal_dim > 0
