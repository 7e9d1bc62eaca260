"""
Poisson brackets on the odd and even models, vector fields and tensor fields.

For a Darboux pair (t, ψ) whose degrees add up to the pairing degree,

    {f • g} = Σ f ∂←/∂ψ · ∂→/∂t g  -  (-1)^{|t||ψ|} f ∂←/∂t · ∂→/∂ψ g

so that {ψ • t} = 1. On the odd model this is the Schouten bracket with
{f • g} = (-1)^{|f||g|+|f|+|g|} {g • f}; on the even model it is the degree
-2 bracket with {f, g} = -(-1)^{|f||g|} {g, f}.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from ..exceptions import InvalidInputError
from .coordinates import Coordinates
from .polynomial import PolyField, apply_derivation


def poisson_bracket(f: PolyField, g: PolyField) -> PolyField:
    """
    Raises:
        InvalidInputError: for fields from different coordinate systems or the flat model
    """
    if f.coords != g.coords:
        raise InvalidInputError(
            "cannot bracket fields from different models", left=f.coords.model, right=g.coords.model
        )
    coords = f.coords
    coords.require_bracket()
    order = min(f.order, g.order)
    result = PolyField.zero(coords, order)
    for base, fiber in coords.pairs:
        first = f.right_derivative(fiber) * g.left_derivative(base)
        sign = -1 if (coords.degree(base) * coords.degree(fiber)) % 2 else 1
        second = f.right_derivative(base) * g.left_derivative(fiber)
        result = result + first - second.scaled(sign)
    return result


def odd_bracket(f: PolyField, g: PolyField) -> PolyField:
    """Degree -1 bracket of the odd model."""
    if f.coords.model != "odd" or g.coords.model != "odd":
        raise InvalidInputError("odd bracket needs odd-model fields", models=(f.coords.model, g.coords.model))
    return poisson_bracket(f, g)


def even_bracket(f: PolyField, g: PolyField) -> PolyField:
    """Degree -2 bracket of the even model."""
    if f.coords.model != "even" or g.coords.model != "even":
        raise InvalidInputError("even bracket needs even-model fields", models=(f.coords.model, g.coords.model))
    return poisson_bracket(f, g)


def hamiltonian(f: PolyField, g: PolyField) -> PolyField:
    """v_f(g) = {f • g}."""
    return poisson_bracket(f, g)


def exp_adjoint(b: PolyField, f: PolyField) -> PolyField:
    """
    exp(ad_b) f = Σ (1/k!) {b • {b • ... f}}, summed until the terms vanish
    under truncation; b must raise polynomial order.
    """
    lowest = b.lowest_order()
    if lowest is not None and lowest < 3:
        raise InvalidInputError("the generator must start at cubic order", lowest_order=lowest)
    result = f
    current = f
    k = 1
    while True:
        current = poisson_bracket(b, current).scaled(Fraction(1, k))
        if current.is_zero():
            return result
        result = result + current
        k += 1


@dataclass(frozen=True)
class VectorField:
    """Σ X^β ∂/∂t^β with coefficients on the left, on the flat model."""

    coords: Coordinates
    components: Tuple[Tuple[int, PolyField], ...]
    degree: int

    @classmethod
    def build(cls, coords: Coordinates, components: Mapping[int, PolyField], degree: int) -> "VectorField":
        for index, component in components.items():
            expected = degree + coords.degree(index)
            if not component.is_zero() and component.degree() != expected:
                raise InvalidInputError(
                    "vector field component has the wrong degree",
                    component=coords.symbols[index].name,
                    expected=expected,
                    found=component.degrees(),
                )
        kept = tuple(sorted((k, v) for k, v in components.items() if not v.is_zero()))
        return cls(coords, kept, degree)

    def component(self, index: int, order: Optional[int] = None) -> PolyField:
        for k, v in self.components:
            if k == index:
                return v
        return PolyField.zero(self.coords, order)

    def is_zero(self) -> bool:
        return not self.components

    def __call__(self, f: PolyField) -> PolyField:
        """X(f) = Σ X^β ∂→f/∂t^β."""
        result = PolyField.zero(f.coords, f.order)
        for index, coefficient in self.components:
            result = result + coefficient * f.left_derivative(index)
        return result

    def residual_terms(self) -> int:
        return sum(len(v) for _, v in self.components)


def vector_bracket(x: VectorField, y: VectorField) -> VectorField:
    """[X, Y]^γ = X(Y^γ) - (-1)^{|X||Y|} Y(X^γ)."""
    sign = -1 if (x.degree * y.degree) % 2 else 1
    indices = {k for k, _ in x.components} | {k for k, _ in y.components}
    components: Dict[int, PolyField] = {}
    for index in indices:
        left = x(y.component(index))
        right = y(x.component(index))
        components[index] = left - right.scaled(sign)
    return VectorField.build(x.coords, components, x.degree + y.degree)


@dataclass(frozen=True)
class TensorField2:
    """Σ φ^{βγ} ∂/∂t^β ⊗ ∂/∂t^γ with coefficients on the left."""

    coords: Coordinates
    components: Tuple[Tuple[Tuple[int, int], PolyField], ...]
    degree: int

    @classmethod
    def build(
        cls, coords: Coordinates, components: Mapping[Tuple[int, int], PolyField], degree: int
    ) -> "TensorField2":
        kept = tuple(sorted((k, v) for k, v in components.items() if not v.is_zero()))
        return cls(coords, kept, degree)

    def is_zero(self) -> bool:
        return not self.components

    def residual_terms(self) -> int:
        return sum(len(v) for _, v in self.components)


def lie_derivative(x: VectorField, phi: TensorField2) -> TensorField2:
    """
    L_X(f ∂_β ⊗ ∂_γ) = X(f) ∂_β ⊗ ∂_γ
        + (-1)^{|X||f|} f [X, ∂_β] ⊗ ∂_γ
        + (-1)^{|X|(|f|+|∂_β|)} f ∂_β ⊗ [X, ∂_γ]
    with [X, ∂_β] = -(-1)^{|X||∂_β|} (∂→X^δ/∂t^β) ∂_δ; coefficients landing
    in the second slot move left past ∂_β.
    """
    coords = x.coords
    components: Dict[Tuple[int, int], PolyField] = {}

    def add(key: Tuple[int, int], value: PolyField) -> None:
        if key in components:
            components[key] = components[key] + value
        else:
            components[key] = value

    for (beta, gamma), f in phi.components:
        add((beta, gamma), x(f))
        f_degree = f.degree() or 0
        d_beta = -coords.degree(beta)
        d_gamma = -coords.degree(gamma)
        for delta, x_delta in x.components:
            slot_sign = -1 if (x.degree * d_beta) % 2 else 1
            outer = -1 if (x.degree * f_degree) % 2 else 1
            add((delta, gamma), (f * x_delta.left_derivative(beta)).scaled(-outer * slot_sign))
            slot_sign = -1 if (x.degree * d_gamma) % 2 else 1
            outer = -1 if (x.degree * (f_degree + d_beta)) % 2 else 1
            moved = x.degree + coords.degree(delta) - coords.degree(gamma)
            past = -1 if (d_beta * moved) % 2 else 1
            add(
                (beta, delta),
                (f * x_delta.left_derivative(gamma)).scaled(-outer * slot_sign * past),
            )
    return TensorField2.build(coords, components, x.degree + phi.degree)


def derivation_from_field(x: VectorField, f: PolyField) -> PolyField:
    """X acting through its symbol images; agrees with X(f)."""
    images = {k: v for k, v in x.components}
    return apply_derivation(f, images, x.degree)
