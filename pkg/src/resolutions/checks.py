"""Consistency checks of the explicit resolutions: d², degree, equivariance, H⁰."""

from fractions import Fraction
from typing import Dict, List, Mapping

from ..dioperad.collection import BimoduleCollection
from ..dioperad.free import act, term_degree, transposition
from ..dioperad.loader import load_named
from ..dioperad.quadratic import GENERATOR_SLOTS, RELATION_SLOTS, Presentation, quotient_slot
from ..exceptions import InvalidInputError
from ..logging_config import get_logger, log_timing, log_with_context
from ..models.reports import ResolutionReport, SlotDimension
from ..treespace import Combination, add_into, corolla
from .differential import apply_derivation, generator_differentials
from .generators import TARGETS, generator_labels, resolution_collection

logger = get_logger("resolutions.checks")


def _difference(first: Mapping, second: Mapping) -> Combination:
    result: Combination = {}
    add_into(result, first)
    add_into(result, second, -1)
    return result


def d_squared_residuals(
    collection: BimoduleCollection, images: Mapping[str, Combination]
) -> Dict[str, int]:
    """Number of trees left in d(d(g)) for every generator label g."""
    return {
        label: len(apply_derivation(collection, images, image))
        for label, image in images.items()
    }


def degree_check(collection: BimoduleCollection, images: Mapping[str, Combination]) -> bool:
    """Every tree in d(g) has degree deg(g) + 1."""
    for label, image in images.items():
        target = collection.degree(label) + 1
        for term in image:
            if term_degree(term, collection) != target:
                log_with_context(
                    logger, "warning", "differential breaks the grading", generator=label
                )
                return False
    return True


def equivariance_check(
    collection: BimoduleCollection, images: Mapping[str, Combination]
) -> bool:
    """d(τ·g) == τ·d(g) for each adjacent transposition τ on either side."""
    for label, _ in generator_labels(collection):
        if label not in images:
            continue
        m, n = collection.arity_of(label)
        source = {corolla(label, m, n): Fraction(1)}
        moves = [(transposition(m, k), None) for k in range(1, m)]
        moves += [(None, transposition(n, k)) for k in range(1, n)]
        for outputs, inputs in moves:
            moved = apply_derivation(collection, images, act(collection, source, outputs, inputs))
            expected = act(collection, images[label], outputs, inputs)
            if _difference(moved, expected):
                log_with_context(
                    logger,
                    "warning",
                    "differential is not equivariant",
                    generator=label,
                    outputs=outputs,
                    inputs=inputs,
                )
                return False
    return True


def operadic_restriction_check(
    collection: BimoduleCollection, images: Mapping[str, Combination]
) -> bool:
    """d of a one-output generator only involves one-output generators."""
    for label, image in images.items():
        if collection.arity_of(label)[0] != 1:
            continue
        for term in image:
            if any(collection.arity_of(node)[0] != 1 for node, _, _ in term):
                return False
    return True


def degree_zero_presentation(resolution: str, window: int = 4) -> Presentation:
    """
    Quadratic presentation read off the resolution: generators in the two
    binary slots and relations d(g) for the generators with four legs.

    The collection is built up to m+n = 4 at least; below that no relation
    generator exists and the ideal would be empty.
    """
    collection = resolution_collection(resolution, max(window, 4))
    images = generator_differentials(resolution, collection)
    relations: Dict = {}
    for label, image in images.items():
        arity = collection.arity_of(label)
        if arity in RELATION_SLOTS and image:
            relations.setdefault(arity, []).append(image)
    return Presentation(
        name=f"{resolution}_degree_zero",
        generators=collection.restricted(GENERATOR_SLOTS),
        relations=relations,
        description=f"degree-zero part of the {resolution} resolution",
    )


def resolution_to_presentation_check(resolution: str, window: int) -> List[SlotDimension]:
    """
    Slot dimensions of the presentation read off the resolution against the
    catalogue presentation it resolves, for 3 <= m+n <= min(window, 5).
    """
    derived = degree_zero_presentation(resolution)
    target = load_named(TARGETS[resolution])
    entries = []
    for total in range(3, min(window, 5) + 1):
        for m in range(1, total):
            n = total - m
            slot = quotient_slot(derived, m, n, total - 2)
            entries.append(
                SlotDimension(
                    m=m,
                    n=n,
                    dim=slot.dim,
                    free_dim=slot.free.dim,
                    ideal_dim=slot.ideal_dim,
                    expected=quotient_slot(target, m, n, total - 2).dim,
                )
            )
    return entries


@log_timing
def resolution_report(
    resolution: str, window: int, with_presentation: bool = True
) -> ResolutionReport:
    """
    d² and the structural checks of one resolution inside the window.

    Raises:
        InvalidInputError: for an unknown resolution or a window below 3
    """
    if window < 3:
        raise InvalidInputError("the arity window must be at least 3", window=window)
    collection = resolution_collection(resolution, window)
    images = generator_differentials(resolution, collection)
    equivariant = equivariance_check(collection, images)
    if resolution == "lie1bi":
        equivariant = equivariant and operadic_restriction_check(collection, images)
    report = ResolutionReport(
        resolution=resolution,
        window=window,
        generators=len(images),
        d_squared=d_squared_residuals(collection, images),
        degree_ok=degree_check(collection, images),
        equivariant=equivariant,
        presentation_match=(
            resolution_to_presentation_check(resolution, window) if with_presentation else []
        ),
    )
    log_with_context(
        logger,
        "info",
        "resolution checked",
        resolution=resolution,
        window=window,
        generators=report.generators,
        passed=report.passed,
    )
    return report
