"""Koszulness verdicts from cobar cohomology, and the reduced-tree criterion."""

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional

from ..config import get_settings
from ..dioperad.collection import Arity
from ..dioperad.dual import quadratic_dual
from ..dioperad.quadratic import (
    RELATION_SLOTS,
    Presentation,
    operadic_parts,
    quotient_slot,
    underline_free_dim,
    window_slots,
)
from ..exceptions import InvalidInputError
from ..logging_config import get_logger, log_timing, log_with_context
from ..models.reports import CohomologySlot, KoszulReport, SlotDimension
from .complex import WindowDioperad, build_cobar, cohomology, euler_characteristic

logger = get_logger("cobar.koszul")


def cohomology_slot(
    dioperad: WindowDioperad,
    m: int,
    n: int,
    expected_h0: int,
    reversed_order: bool = False,
) -> CohomologySlot:
    complex_ = build_cobar(dioperad, m, n, reversed_order)
    h = cohomology(complex_)
    ranks = complex_.ranks()
    return CohomologySlot(
        m=m,
        n=n,
        chain_dims={-complex_.degree(v): complex_.dim(v) for v in complex_.levels},
        ranks={-complex_.degree(v): r for v, r in ranks.items()},
        cohomology=h,
        expected_h0=expected_h0,
        euler_characteristic=euler_characteristic(complex_),
        d_squared_zero=complex_.d_squared_zero(),
    )


def criterion_comparison(
    presentation: Presentation, slots: Iterable[Arity] = RELATION_SLOTS
) -> List[SlotDimension]:
    """dim P(i,j) against the reduced-tree count built from P_L and P_R."""
    left, right = operadic_parts(presentation)
    entries = []
    for m, n in slots:
        slot = quotient_slot(presentation, m, n, m + n - 2)
        entries.append(
            SlotDimension(
                m=m,
                n=n,
                dim=slot.dim,
                free_dim=slot.free.dim,
                ideal_dim=slot.ideal_dim,
                expected=underline_free_dim(left, right, m, n),
            )
        )
    return entries


@log_timing
def koszulness_report(
    presentation: Presentation,
    window: int,
    reversed_order: bool = False,
    workers: Optional[int] = None,
    with_criterion: bool = True,
) -> KoszulReport:
    """
    Build the cobar complex of P! in every slot 3 <= m+n <= window and compare
    its cohomology with P: negative cohomology must vanish and H^0 must have
    the dimension of P(m,n).

    Raises:
        InvalidInputError: for a window below 3
    """
    if window < 3:
        raise InvalidInputError("the arity window must be at least 3", window=window)
    dual = quadratic_dual(presentation)
    dioperad = WindowDioperad(dual, window)
    slots = window_slots(window)
    for m, n in slots:
        dioperad.prepare(m, n)

    def run(slot: Arity) -> CohomologySlot:
        m, n = slot
        expected = quotient_slot(presentation, m, n, m + n - 2).dim
        return cohomology_slot(dioperad, m, n, expected, reversed_order)

    count = workers if workers is not None else get_settings().worker_count
    if count > 1:
        with ThreadPoolExecutor(max_workers=count) as pool:
            results = list(pool.map(run, slots))
    else:
        results = [run(slot) for slot in slots]

    report = KoszulReport(
        presentation=presentation.name,
        dual=dual.name,
        window=window,
        slots=results,
        criterion=criterion_comparison(presentation) if with_criterion else [],
    )
    log_with_context(
        logger,
        "info",
        "koszulness checked",
        presentation=presentation.name,
        window=window,
        verdict=report.verdict,
    )
    return report
