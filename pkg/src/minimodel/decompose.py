"""
Splitting a structure into a minimal and a contractible part.

After the linear change to adapted coordinates Γ = Γ₁ + Γ^(3) + ...; at
stage k the generator B = H(Γ^(k)) satisfies {B • Γ₁} = -δB, so exp(ad_B)
replaces Γ^(k) by its z, ξ part and leaves lower orders alone. The map F
collects the pullbacks of the original coordinates.
"""

from dataclasses import dataclass
from typing import Dict, Optional

from ..exceptions import InvalidInputError, MaurerCartanError
from ..formalgeo.brackets import exp_adjoint
from ..formalgeo.checks import check_pointed, mc_check, mc_residual
from ..formalgeo.coordinates import Coordinates
from ..formalgeo.polynomial import PolyField, substitute
from ..logging_config import get_logger, log_timing, log_with_context
from ..models.reports import DecomposeReport
from .coordmap import CoordMap
from .homotopy import delta_homotopy, projection
from .morphism import morphism_check
from .splitting import Splitting, contractible_part, linear_images, split_quadratic

logger = get_logger("minimodel.decompose")


@dataclass(frozen=True)
class Decomposition:
    """Γ₁ + Φ in adapted coordinates and the map F with F*Γ = Γ₁ + Φ."""

    splitting: Splitting
    contractible: PolyField
    minimal: PolyField
    f_map: CoordMap
    stages: Dict[int, int]

    @property
    def adapted(self) -> PolyField:
        return self.contractible + self.minimal

    def reduced_coordinates(self) -> Coordinates:
        s = self.splitting
        keep = s.minimal_symbols
        count = len(s.z)
        symbols = tuple(s.target.symbols[k] for k in keep)
        return Coordinates("odd", symbols, tuple((j, count + j) for j in range(count)))

    def reduced_minimal(self) -> PolyField:
        """Φ written in the z, ξ coordinates alone."""
        reduced = self.reduced_coordinates()
        images = {
            old: PolyField(reduced, {(new,): 1}, self.minimal.order)
            for new, old in enumerate(self.splitting.minimal_symbols)
        }
        return substitute(self.minimal, images, reduced, self.minimal.order)


@log_timing
def decompose(gamma: PolyField, order: Optional[int] = None) -> Decomposition:
    """
    Raises:
        InvalidInputError: for a field that is not a pointed degree 2 function
            on the odd model
        MaurerCartanError: naming the lowest order where {Γ • Γ} fails
    """
    order = gamma.order if order is None else order
    gamma = gamma.with_order(order)
    if gamma.coords.model != "odd":
        raise InvalidInputError("decompositions need a structure on the odd model", model=gamma.coords.model)
    check_pointed(gamma)
    residual = mc_residual(gamma)
    if not residual.is_zero():
        raise MaurerCartanError(
            "structure does not satisfy the Maurer-Cartan equation", order=residual.lowest_order()
        )

    splitting = split_quadratic(gamma)
    target = splitting.target
    images = linear_images(splitting, order)
    current = substitute(gamma, images, target, order)
    contractible = contractible_part(splitting, order)
    if current.part(2) != contractible:
        raise MaurerCartanError("quadratic part did not reduce to Σ y ψ", order=2)

    stages: Dict[int, int] = {}
    for k in range(3, order + 1):
        generator = delta_homotopy(current.part(k), splitting)
        stages[k] = len(generator)
        if not generator.is_zero():
            current = exp_adjoint(generator, current)
            images = {c: exp_adjoint(generator, image) for c, image in images.items()}
        leftover = current.part(k) - projection(current.part(k), splitting)
        if not leftover.is_zero():
            raise MaurerCartanError("contractible terms survive at this order", order=k)
        log_with_context(logger, "debug", "stage finished", stage=k, order=order, generator_terms=stages[k])

    minimal = current - contractible
    f_map = CoordMap.build(target, gamma.coords, images, order)
    return Decomposition(splitting, contractible, minimal, f_map, stages)


def decompose_report(gamma: PolyField, order: Optional[int] = None) -> DecomposeReport:
    """decompose plus its post-conditions."""
    return decomposition_report(decompose(gamma, order), gamma)


def decomposition_report(result: Decomposition, gamma: PolyField) -> DecomposeReport:
    order = result.f_map.order
    morphism = morphism_check(result.f_map, result.adapted, gamma.with_order(order))
    minimal = result.minimal
    checks = dict(morphism.checks)
    checks["minimal_in_z_xi"] = minimal.uses_only(result.splitting.minimal_symbols)
    lowest = minimal.lowest_order()
    checks["minimal_starts_cubic"] = lowest is None or lowest >= 3
    if result.splitting.z and not minimal.is_zero():
        checks["minimal_maurer_cartan"] = mc_check(result.reduced_minimal()).is_solution
    else:
        checks["minimal_maurer_cartan"] = True
    report = DecomposeReport(
        order=order,
        minimal_terms=len(minimal),
        splitting=result.splitting.dims,
        stages=result.stages,
        checks=checks,
    )
    log_with_context(logger, "info", "decomposition finished", order=order, passed=report.passed)
    return report
