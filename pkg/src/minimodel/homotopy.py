"""
The differential δ = {Γ₁ • -} on adapted coordinates and its contraction.

δ(x^a) = y^a and δ(φ_a) = s_a ψ_a, and δ kills y, ψ, z and ξ. The odd
derivation h with h(y^a) = x^a and h(ψ_a) = φ_a / s_a satisfies
δh + hδ = (number of x, y, ψ, φ factors) on monomials, so

    H = h / count,  π = part in z and ξ only,  δH + Hδ = id - π.
"""

from fractions import Fraction
from typing import Dict, Tuple

from ..exceptions import InvalidInputError
from ..formalgeo.brackets import poisson_bracket
from ..formalgeo.polynomial import PolyField, apply_derivation
from .splitting import Splitting, contractible_part


def delta_operator(f: PolyField, splitting: Splitting) -> PolyField:
    if f.coords != splitting.target:
        raise InvalidInputError("δ acts on fields in adapted coordinates")
    return poisson_bracket(contractible_part(splitting, f.order), f)


def _phi_scales(splitting: Splitting) -> Tuple[Fraction, ...]:
    scales = []
    for phi, psi in zip(splitting.phi, splitting.psi):
        image = delta_operator(PolyField(splitting.target, {(phi,): Fraction(1)}, 2), splitting)
        scale = image.coefficient((psi,))
        if not scale or len(image) != 1:
            raise InvalidInputError("δ does not map φ onto ψ", symbol=splitting.target.symbols[phi].name)
        scales.append(scale)
    return tuple(scales)


def homotopy_images(splitting: Splitting, order: int) -> Dict[int, PolyField]:
    target = splitting.target
    images: Dict[int, PolyField] = {}
    for y, x in zip(splitting.y, splitting.x):
        images[y] = PolyField(target, {(x,): Fraction(1)}, order)
    for psi, phi, scale in zip(splitting.psi, splitting.phi, _phi_scales(splitting)):
        images[psi] = PolyField(target, {(phi,): 1 / scale}, order)
    return images


def projection(f: PolyField, splitting: Splitting) -> PolyField:
    """π: the monomials in z and ξ alone."""
    minimal = set(splitting.minimal_symbols)
    return f.filtered(lambda monomial: set(monomial) <= minimal)


def delta_homotopy(f: PolyField, splitting: Splitting) -> PolyField:
    """H(f); zero on k[[z, ξ]]."""
    if f.coords != splitting.target:
        raise InvalidInputError("the homotopy acts on fields in adapted coordinates")
    contractible = set(splitting.contractible_symbols)
    images = homotopy_images(splitting, f.order)
    by_count: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for monomial, value in f.items():
        count = sum(1 for s in monomial if s in contractible)
        if count:
            by_count.setdefault(count, {})[monomial] = value
    result = PolyField.zero(f.coords, f.order)
    for count, terms in sorted(by_count.items()):
        piece = apply_derivation(PolyField(f.coords, terms, f.order), images, -1)
        result = result + piece.scaled(Fraction(1, count))
    return result
