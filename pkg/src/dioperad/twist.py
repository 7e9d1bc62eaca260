"""Opposite, degree-shift and Λ twists of bimodule collections."""

from typing import Optional, Union

from ..exceptions import InvalidInputError
from .collection import ArityComponent, BimoduleCollection, Generator
from .quadratic import Presentation, dioperad_collection

TWISTS = ("op", "shift", "lambda", "lambda_inv")


def _regrade(component: ArityComponent, offset: int, flip: bool) -> ArityComponent:
    sign = -1 if flip else 1
    return ArityComponent(
        component.m,
        component.n,
        tuple(
            Generator(g.name, g.m, g.n, g.degree + offset) for g in component.generators
        ),
        tuple(t.scaled(sign) for t in component.out_actions),
        tuple(t.scaled(sign) for t in component.in_actions),
    )


def _opposite(component: ArityComponent) -> ArityComponent:
    return ArityComponent(
        component.n,
        component.m,
        tuple(Generator(g.name, g.n, g.m, g.degree) for g in component.generators),
        component.in_actions,
        component.out_actions,
    )


def twist_collection(
    collection: BimoduleCollection, kind: str, p: int = 0
) -> BimoduleCollection:
    """
    Apply one twist to every component.

    * ``op``: (m,n) becomes (n,m) with the two actions exchanged.
    * ``shift``: ⟨p⟩ raises degrees by p(n-m) and twists both actions by sgn^p.
    * ``lambda``: Λ raises degrees by m+n-2 and twists both actions by sgn.
    * ``lambda_inv``: Λ⁻¹ lowers degrees by m+n-2 with the same sign twist.

    Raises:
        InvalidInputError: for an unknown twist
    """
    components = []
    for component in collection.components.values():
        m, n = component.m, component.n
        if kind == "op":
            components.append(_opposite(component))
        elif kind == "shift":
            components.append(_regrade(component, p * (n - m), p % 2 == 1))
        elif kind == "lambda":
            components.append(_regrade(component, m + n - 2, True))
        elif kind == "lambda_inv":
            components.append(_regrade(component, 2 - m - n, True))
        else:
            raise InvalidInputError(f"unknown twist {kind!r}", allowed=TWISTS)
    return BimoduleCollection(components, check=False)


def twist(
    target: Union[Presentation, BimoduleCollection],
    kind: str,
    p: int = 0,
    max_arity: Optional[int] = None,
    max_vertices: Optional[int] = None,
) -> BimoduleCollection:
    """
    Twist a collection, or the computed slots of a presentation's dioperad
    inside the given window.
    """
    if isinstance(target, Presentation):
        if max_arity is None or max_vertices is None:
            raise InvalidInputError("twisting a presentation needs an arity window")
        target = dioperad_collection(target, max_arity, max_vertices)
    return twist_collection(target, kind, p)
