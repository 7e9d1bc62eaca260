"""Exact rational scalars and their text form ("p/q", or "p" when q = 1)."""

from fractions import Fraction
from typing import Union

from ..exceptions import ParseError

Rational = Fraction
ScalarLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: ScalarLike) -> Fraction:
    """
    Convert an int, a Fraction or a "p/q" string to a reduced Fraction.

    Raises:
        ParseError: if the value is a float or a malformed string
    """
    if isinstance(value, bool):
        raise ParseError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                result = Fraction(int(num), int(den))
            else:
                result = Fraction(int(text))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"malformed rational {value!r}: {e}")
        return result
    raise ParseError(f"unsupported scalar {value!r}; floats are not accepted")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
