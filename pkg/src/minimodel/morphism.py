"""Checks that a coordinate map is a morphism, and a quasi-isomorphism, of structures."""

from typing import Dict, Tuple

from ..exceptions import InvalidInputError
from ..formalgeo.brackets import poisson_bracket
from ..formalgeo.coordinates import BASE, FIBER
from ..formalgeo.polynomial import PolyField
from ..logging_config import get_logger, log_timing, log_with_context
from ..models.reports import MorphismReport
from .coordmap import CoordMap, pullback
from .splitting import apply_linear, image, kernel, linear_differential

logger = get_logger("minimodel.morphism")


def symplectic_residual(f_map: CoordMap, order: int) -> int:
    """Monomials by which {F*c • F*c'} misses {c • c'}, modulo order N-1."""
    codomain, domain = f_map.codomain, f_map.domain
    missing = 0
    for i in range(codomain.size):
        for j in range(i, codomain.size):
            left = PolyField(codomain, {(i,): 1}, 2)
            right = PolyField(codomain, {(j,): 1}, 2)
            expected = poisson_bracket(left, right).coefficient(())
            actual = poisson_bracket(f_map.image(i), f_map.image(j)).truncated(max(order - 1, 0))
            difference = actual - PolyField.constant(domain, expected, actual.order)
            missing += len(difference)
    return missing


def lagrangian_residual(f_map: CoordMap, side: str) -> int:
    """Monomials of F*(side coordinates) with no factor from the same side of the domain."""
    wanted = set(f_map.domain.side_indices(side))
    missing = 0
    for index in f_map.codomain.side_indices(side):
        for monomial, _ in f_map.image(index).items():
            if not wanted.intersection(monomial):
                missing += 1
    return missing


def linear_quasi_isomorphism(
    f_map: CoordMap, gamma: PolyField, gamma_prime: PolyField, side: str
) -> Tuple[bool, bool]:
    """
    (chain map, quasi-isomorphism) for the linear part of F on one side,
    with the differentials induced by the quadratic parts.
    """
    domain, codomain = f_map.domain, f_map.codomain
    target_symbols = codomain.side_indices(side)
    source_symbols = domain.side_indices(side)
    d_codomain = linear_differential(gamma_prime, target_symbols)
    d_domain = linear_differential(gamma, source_symbols)
    linear = {c: f_map.linear_part(c) for c in target_symbols}

    chain = all(
        apply_linear(linear, d_codomain[c]) == apply_linear(d_domain, linear[c]) for c in target_symbols
    )

    closed_codomain = kernel(d_codomain, target_symbols, codomain.size)
    h_codomain = len(closed_codomain) - image(d_codomain, target_symbols).rank
    exact_domain = image(d_domain, source_symbols)
    h_domain = len(kernel(d_domain, source_symbols, domain.size)) - exact_domain.rank
    start = exact_domain.rank
    for vector in closed_codomain:
        exact_domain.add(apply_linear(linear, vector))
    induced = exact_domain.rank - start
    log_with_context(
        logger,
        "debug",
        "linear part on cohomology",
        side=side,
        h_codomain=h_codomain,
        h_domain=h_domain,
        induced_rank=induced,
    )
    return chain, chain and induced == h_codomain == h_domain


@log_timing
def morphism_check(f_map: CoordMap, gamma: PolyField, gamma_prime: PolyField) -> MorphismReport:
    """
    F: M -> M' with Γ on M and Γ' on M'; checks F*ω' = ω (mod order N-1),
    F(L) ⊂ L', F(ΠL) ⊂ ΠL', F*Γ' = Γ (mod order N+1) and that the linear
    parts induce isomorphisms on cohomology.

    Raises:
        InvalidInputError: when the fields do not live on the map's coordinates
    """
    if gamma.coords != f_map.domain or gamma_prime.coords != f_map.codomain:
        raise InvalidInputError("structures do not live on the coordinates of the map")
    order = min(f_map.order, gamma.order, gamma_prime.order)
    residuals: Dict[str, int] = {
        "symplectic": symplectic_residual(f_map, order),
        "preserves_L": lagrangian_residual(f_map, FIBER),
        "preserves_PiL": lagrangian_residual(f_map, BASE),
    }
    pulled = pullback(f_map, gamma_prime).truncated(order)
    residuals["pullback"] = len(pulled - gamma.truncated(order))

    checks = {name: count == 0 for name, count in residuals.items()}
    base_chain, base_quasi = linear_quasi_isomorphism(f_map, gamma, gamma_prime, BASE)
    fiber_chain, fiber_quasi = linear_quasi_isomorphism(f_map, gamma, gamma_prime, FIBER)
    checks["chain_map"] = base_chain and fiber_chain
    checks["quasi_isomorphism"] = base_quasi and fiber_quasi

    report = MorphismReport(
        order=order,
        checks=checks,
        residual_terms={name: count for name, count in residuals.items() if count},
    )
    log_with_context(logger, "info", "morphism check finished", order=order, passed=report.passed)
    return report
