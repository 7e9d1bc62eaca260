"""The quadratic bracket of a product on vector fields over ungraded V."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from ..exceptions import InvalidInputError
from .brackets import VectorField, vector_bracket
from .coordinates import Coordinates
from .polynomial import PolyField


@dataclass(frozen=True)
class ProductField:
    """μ(∂_α, ∂_β) = Σ_γ μ^γ_{αβ}(t) ∂_γ."""

    coords: Coordinates
    components: Tuple[Tuple[Tuple[int, int, int], PolyField], ...]

    @classmethod
    def build(cls, coords: Coordinates, components: Mapping[Tuple[int, int, int], PolyField]) -> "ProductField":
        if coords.model != "flat" or any(d for d in coords.degrees()):
            raise InvalidInputError("products are evaluated on an ungraded flat model")
        kept = tuple(sorted((k, v) for k, v in components.items() if not v.is_zero()))
        return cls(coords, kept)

    @classmethod
    def constant(cls, coords: Coordinates, values: Mapping[Tuple[int, int, int], object]) -> "ProductField":
        return cls.build(coords, {k: PolyField.constant(coords, v) for k, v in values.items()})

    def __call__(self, x: VectorField, y: VectorField) -> VectorField:
        out: Dict[int, PolyField] = {}
        for (alpha, beta, gamma), coefficient in self.components:
            term = coefficient * x.component(alpha, coefficient.order) * y.component(beta, coefficient.order)
            out[gamma] = out[gamma] + term if gamma in out else term
        return VectorField.build(self.coords, out, 0)


def _sum(*fields: VectorField) -> VectorField:
    coords = fields[0].coords
    out: Dict[int, PolyField] = {}
    for f in fields:
        for index, component in f.components:
            out[index] = out[index] + component if index in out else component
    return VectorField.build(coords, out, 0)


def _neg(field: VectorField) -> VectorField:
    return VectorField.build(field.coords, {k: v.scaled(Fraction(-1)) for k, v in field.components}, 0)


def hm_bracket(mu: ProductField, x: VectorField, y: VectorField, z: VectorField, w: VectorField) -> VectorField:
    """
    [μ, μ](X, Y, Z, W) =
        [μ(X,Y), μ(Z,W)] - μ([μ(X,Y), Z], W) - μ(Z, [μ(X,Y), W])
      - μ(X, [Y, μ(Z,W)]) - μ([X, μ(Z,W)], Y)
      + μ(X, μ(Z, [Y,W])) + μ(X, μ([Y,Z], W))
      + μ([X,Z], μ(Y,W)) + μ([X,W], μ(Y,Z))

    It vanishes exactly when the product makes V an F-manifold.
    """
    for field in (x, y, z, w):
        if field.coords != mu.coords or field.degree != 0:
            raise InvalidInputError("vector fields must be even fields on the product's coordinates")
    xy = mu(x, y)
    zw = mu(z, w)
    br = vector_bracket
    return _sum(
        br(xy, zw),
        _neg(mu(br(xy, z), w)),
        _neg(mu(z, br(xy, w))),
        _neg(mu(x, br(y, zw))),
        _neg(mu(br(x, zw), y)),
        mu(x, mu(z, br(y, w))),
        mu(x, mu(br(y, z), w)),
        mu(br(x, z), mu(y, w)),
        mu(br(x, w), mu(y, z)),
    )
