"""Random Maurer-Cartan structures for property suites."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import List, Optional, Tuple

from ..config import get_settings
from ..exactalg.graded import GradedSpace
from ..formalgeo.brackets import exp_adjoint
from ..formalgeo.coordinates import BASE, FIBER, Coordinates, odd_model
from ..formalgeo.polynomial import Monomial, PolyField, monomial_degree, normalize

SAMPLE_SPACE = (("e1", 0), ("e2", 1), ("e3", 0), ("e4", 0))


def monomials(coords: Coordinates, degree: int, orders: range, mixed: bool = True) -> List[Monomial]:
    """Nonzero monomials of a degree; with ``mixed`` each has a factor from both sides."""
    found: List[Monomial] = []
    for order in orders:
        for word in combinations_with_replacement(range(coords.size), order):
            sign, monomial = normalize(coords, word)
            if not sign or monomial_degree(coords, monomial) != degree:
                continue
            sides = {coords.symbols[s].side for s in monomial}
            if mixed and sides != {BASE, FIBER}:
                continue
            found.append(monomial)
    return found


def base_structure(coords: Coordinates, order: int) -> PolyField:
    """t1 ψ2 + t3 t4 ψ3 ψ4 on the sample space."""
    t = [coords.index(f"t{k}") for k in range(1, 5)]
    psi = [coords.index(f"psi{k}") for k in range(1, 5)]
    first = PolyField.from_word(coords, [t[0], psi[1]], 1, order)
    second = PolyField.from_word(coords, [t[2], t[3], psi[2], psi[3]], 1, order)
    return first + second


def random_generator(coords: Coordinates, order: int, rng: random.Random, density: float = 0.3) -> PolyField:
    terms = {}
    for monomial in monomials(coords, 1, range(3, order + 1)):
        if rng.random() < density:
            terms[monomial] = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
    return PolyField(coords, terms, order)


def random_mc_structure(seed: Optional[int] = None, order: Optional[int] = None) -> Tuple[PolyField, PolyField]:
    """
    exp(ad_B)(t1 ψ2 + t3 t4 ψ3 ψ4) for a random degree 1 generator B of
    order at least 3; returns (structure, generator).
    """
    settings = get_settings()
    order = settings.default_order if order is None else order
    rng = random.Random(settings.random_seed if seed is None else seed)
    coords = odd_model(GradedSpace.from_pairs(SAMPLE_SPACE))
    generator = random_generator(coords, order, rng)
    return exp_adjoint(generator, base_structure(coords, order)), generator
