"""
Truncated polynomial superfunctions.

A monomial is the sorted tuple of its symbol positions, repeated for powers
of even symbols. Odd symbols square to zero. Reordering a product into
normal form multiplies by the Koszul sign of the symbol degrees. Every field
carries a truncation order N and drops monomials with more than N factors.
"""

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..config import get_settings
from ..exactalg.scalars import format_rational, to_rational
from ..exactalg.signs import koszul_sign
from ..exceptions import InvalidInputError, ParseError
from .coordinates import Coordinates

Monomial = Tuple[int, ...]


def normalize(coords: Coordinates, word: Sequence[int]) -> Tuple[int, Monomial]:
    """
    Sign and normal form of a product of symbols written in the given order.

    Returns (0, ()) when an odd symbol repeats.
    """
    order = sorted(range(len(word)), key=lambda k: word[k])
    monomial = tuple(word[k] for k in order)
    for a, b in zip(monomial, monomial[1:]):
        if a == b and coords.symbols[a].odd:
            return 0, ()
    sign = koszul_sign([k + 1 for k in order], [coords.degree(s) for s in word])
    return sign, monomial


def monomial_degree(coords: Coordinates, monomial: Monomial) -> int:
    return sum(coords.degree(s) for s in monomial)


def _odd_before(coords: Coordinates, symbols: Iterable[int]) -> int:
    return sum(1 for s in symbols if coords.symbols[s].odd)


class PolyField:
    """
    An immutable truncated power series in the symbols of a coordinate system.
    """

    __slots__ = ("coords", "order", "_terms")

    def __init__(
        self,
        coords: Coordinates,
        terms: Optional[Mapping[Monomial, Fraction]] = None,
        order: Optional[int] = None,
    ):
        self.coords = coords
        self.order = get_settings().default_order if order is None else order
        if self.order < 0:
            raise InvalidInputError("truncation order must be non-negative", order=self.order)
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, value in (terms or {}).items():
            if value and len(monomial) <= self.order:
                cleaned[tuple(monomial)] = Fraction(value)
        self._terms = cleaned

    # construction
    @classmethod
    def zero(cls, coords: Coordinates, order: Optional[int] = None) -> "PolyField":
        return cls(coords, {}, order)

    @classmethod
    def constant(cls, coords: Coordinates, value, order: Optional[int] = None) -> "PolyField":
        return cls(coords, {(): to_rational(value)}, order)

    @classmethod
    def symbol(cls, coords: Coordinates, name: str, order: Optional[int] = None) -> "PolyField":
        return cls(coords, {(coords.index(name),): Fraction(1)}, order)

    @classmethod
    def from_word(
        cls, coords: Coordinates, word: Sequence[int], value=1, order: Optional[int] = None
    ) -> "PolyField":
        """The product of the given symbols in the given order, times value."""
        sign, monomial = normalize(coords, word)
        if not sign:
            return cls(coords, {}, order)
        return cls(coords, {monomial: sign * to_rational(value)}, order)

    def _like(self, terms: Mapping[Monomial, Fraction], order: Optional[int] = None) -> "PolyField":
        return PolyField(self.coords, terms, self.order if order is None else order)

    def _check(self, other: "PolyField") -> None:
        if other.coords != self.coords:
            raise InvalidInputError(
                "fields live in different coordinate systems",
                left=self.coords.model,
                right=other.coords.model,
            )

    # inspection
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    def degrees(self) -> List[int]:
        return sorted({monomial_degree(self.coords, m) for m in self._terms})

    def degree(self) -> Optional[int]:
        """Homogeneous degree, or None for zero or mixed fields."""
        found = self.degrees()
        return found[0] if len(found) == 1 else None

    def orders(self) -> List[int]:
        return sorted({len(m) for m in self._terms})

    def lowest_order(self) -> Optional[int]:
        found = self.orders()
        return found[0] if found else None

    def part(self, order: int) -> "PolyField":
        """Homogeneous component of the given polynomial order."""
        return self._like({m: v for m, v in self._terms.items() if len(m) == order})

    def truncated(self, order: int) -> "PolyField":
        return self._like(self._terms, min(order, self.order))

    def with_order(self, order: int) -> "PolyField":
        return self._like(self._terms, order)

    def filtered(self, keep) -> "PolyField":
        return self._like({m: v for m, v in self._terms.items() if keep(m)})

    def uses_only(self, allowed: Iterable[int]) -> bool:
        allowed = set(allowed)
        return all(set(m) <= allowed for m in self._terms)

    # arithmetic
    def __add__(self, other: "PolyField") -> "PolyField":
        self._check(other)
        terms = dict(self._terms)
        for monomial, value in other._terms.items():
            terms[monomial] = terms.get(monomial, Fraction(0)) + value
        return self._like(terms, min(self.order, other.order))

    def __neg__(self) -> "PolyField":
        return self._like({m: -v for m, v in self._terms.items()})

    def __sub__(self, other: "PolyField") -> "PolyField":
        return self + (-other)

    def scaled(self, factor) -> "PolyField":
        factor = Fraction(factor)
        return self._like({m: factor * v for m, v in self._terms.items()})

    def __mul__(self, other: "PolyField") -> "PolyField":
        self._check(other)
        order = min(self.order, other.order)
        terms: Dict[Monomial, Fraction] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                if len(a) + len(b) > order:
                    continue
                sign, monomial = normalize(self.coords, a + b)
                if sign:
                    terms[monomial] = terms.get(monomial, Fraction(0)) + sign * x * y
        return self._like(terms, order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyField):
            return NotImplemented
        return self.coords == other.coords and self._terms == other._terms

    def __hash__(self):
        return hash((self.coords, tuple(sorted(self._terms.items()))))

    def __repr__(self) -> str:
        return f"PolyField({format_field(self)!r}, order={self.order})"

    # calculus
    def left_derivative(self, symbol: int) -> "PolyField":
        """∂→/∂x: the symbol is moved to the front before it is removed."""
        terms: Dict[Monomial, Fraction] = {}
        odd = self.coords.symbols[symbol].odd
        for monomial, value in self._terms.items():
            if symbol not in monomial:
                continue
            first = monomial.index(symbol)
            rest = monomial[:first] + monomial[first + 1 :]
            if odd:
                factor = -1 if _odd_before(self.coords, monomial[:first]) % 2 else 1
            else:
                factor = monomial.count(symbol)
            terms[rest] = terms.get(rest, Fraction(0)) + factor * value
        return self._like(terms)

    def right_derivative(self, symbol: int) -> "PolyField":
        """f ∂←/∂x: the symbol is moved to the back before it is removed."""
        terms: Dict[Monomial, Fraction] = {}
        odd = self.coords.symbols[symbol].odd
        for monomial, value in self._terms.items():
            if symbol not in monomial:
                continue
            last = len(monomial) - 1 - monomial[::-1].index(symbol)
            rest = monomial[:last] + monomial[last + 1 :]
            if odd:
                factor = -1 if _odd_before(self.coords, monomial[last + 1 :]) % 2 else 1
            else:
                factor = monomial.count(symbol)
            terms[rest] = terms.get(rest, Fraction(0)) + factor * value
        return self._like(terms)


def apply_derivation(
    field: PolyField, images: Mapping[int, PolyField], degree: int
) -> PolyField:
    """
    Extend symbol images to a derivation of the given degree:
    D(x1...xk) = Σ (-1)^{|D|(|x1|+...+|x_{i-1}|)} x1...D(x_i)...xk.
    """
    coords = field.coords
    result = PolyField.zero(coords, field.order)
    for monomial, value in field.items():
        for position, symbol in enumerate(monomial):
            image = images.get(symbol)
            if image is None or image.is_zero():
                continue
            passed = sum(coords.degree(s) for s in monomial[:position])
            sign = -1 if (degree % 2 and passed % 2) else 1
            before = PolyField(coords, {monomial[:position]: Fraction(1)}, field.order)
            after = PolyField(coords, {monomial[position + 1 :]: Fraction(1)}, field.order)
            result = result + (before * image * after).scaled(sign * value)
    return result


def substitute(field: PolyField, images: Mapping[int, PolyField], target: Coordinates, order: int) -> PolyField:
    """
    Replace every symbol by its image in another coordinate system and
    multiply out; images must be homogeneous of the replaced symbol's degree.
    """
    result = PolyField.zero(target, order)
    one = PolyField.constant(target, 1, order)
    for monomial, value in field.items():
        product = one
        for symbol in monomial:
            product = product * images[symbol]
            if product.is_zero():
                break
        result = result + product.scaled(value)
    return result


def format_field(field: PolyField) -> str:
    """Sorted monomial sum such as ``1/2*t1*t2^2*psi1 - t3*psi2``; zero prints as ``0``."""
    if field.is_zero():
        return "0"
    names = field.coords.names()
    pieces = []
    for monomial, value in sorted(field.items(), key=lambda item: (len(item[0]), item[0])):
        factors = []
        magnitude = abs(value)
        if magnitude != 1 or not monomial:
            factors.append(format_rational(magnitude))
        position = 0
        while position < len(monomial):
            symbol = monomial[position]
            power = monomial.count(symbol)
            factors.append(names[symbol] if power == 1 else f"{names[symbol]}^{power}")
            position += power
        body = "*".join(factors)
        if not pieces:
            pieces.append(f"-{body}" if value < 0 else body)
        else:
            pieces.append(f"- {body}" if value < 0 else f"+ {body}")
    return " ".join(pieces)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9.]*)(?:\^(\d+))?$")


def parse_field(
    text: str,
    coords: Coordinates,
    order: Optional[int] = None,
    path: Optional[str] = None,
    line: Optional[int] = None,
) -> PolyField:
    """
    Read a field written as ``format_field`` prints it; factors of a term
    are multiplied in the order written.

    Raises:
        ParseError: on an unknown symbol or a malformed factor
    """
    result = PolyField.zero(coords, order)
    stripped = str(text).strip()
    if stripped in ("", "0"):
        return result
    position = 0
    while position < len(stripped):
        match = _TERM.match(stripped, position)
        if not match or match.end() == position:
            raise ParseError(f"cannot read field near {stripped[position:]!r}", path, line)
        position = match.end()
        sign = -1 if match.group(1) == "-" else 1
        value = Fraction(sign)
        word: List[int] = []
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                value *= to_rational(factor)
                continue
            parsed = _FACTOR.match(factor)
            if not parsed:
                raise ParseError(f"malformed factor {factor!r}", path, line)
            name, power = parsed.group(1), int(parsed.group(2) or 1)
            try:
                index = coords.index(name)
            except InvalidInputError:
                raise ParseError(f"unknown coordinate {name!r}", path, line)
            word.extend([index] * power)
        result = result + PolyField.from_word(coords, word, value, result.order)
    return result
