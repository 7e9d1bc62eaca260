"""
Tree term syntax.

A vertex is written ``name(out:[...], in:[...])``. Integers in an ``out``
list are output legs, integers in an ``in`` list are input legs. A nested
vertex is a neighbour joined by an internal edge: nested inside ``in`` it
sits below (its marked output feeds that input), nested inside ``out`` it
sits above. The nested vertex marks its connecting slot with ``*``::

    bracket(out:[1], in:[bracket(out:[*], in:[1,2]), 3])

Combinations are written ``c1 term1 + c2 term2`` with rational coefficients.
"""

import re
from fractions import Fraction
from itertools import count
from typing import Dict, List, Mapping, Optional, Set, Tuple

from ..exactalg.scalars import format_rational
from ..exceptions import ParseError
from .tree import EDGE, IN, OUT, Node, Term, Token

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_.]*)|(?P<int>\d+)|(?P<sym>[()\[\],:*]))"
)


class _Lexer:
    def __init__(self, text: str, path: Optional[str], line: Optional[int]):
        self.text = text
        self.path = path
        self.line = line
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN.match(text, position)
            if not match:
                self.fail(f"unexpected character {text[position:].strip()[:1]!r}", position)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        self.index = 0

    def fail(self, message: str, column: Optional[int] = None):
        if column is None:
            column = self.tokens[self.index][2] if self.index < len(self.tokens) else len(self.text)
        raise ParseError(f"{message} at column {column + 1} in {self.text!r}", self.path, self.line)

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self, kind: str, value: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or token[0] != kind or (value is not None and token[1] != value):
            expected = value if value is not None else kind
            self.fail(f"expected {expected!r}")
        self.index += 1
        return token[1]


def parse_term(text: str, path: Optional[str] = None, line: Optional[int] = None) -> Term:
    """
    Parse a tree term into a decorated term (root first, pre-order).

    Raises:
        ParseError: on malformed syntax, a misplaced or missing ``*``
    """
    lexer = _Lexer(text, path, line)
    fresh = count(1)
    nodes: List[Optional[Node]] = []

    def vertex(connection: Optional[Tuple[str, Token]]) -> None:
        name = lexer.take("name")
        slot = len(nodes)
        nodes.append(None)
        lexer.take("sym", "(")
        sides: Dict[str, List[Token]] = {}
        starred = False
        for position, side in enumerate(("out", "in")):
            if position:
                lexer.take("sym", ",")
            lexer.take("name", side)
            lexer.take("sym", ":")
            lexer.take("sym", "[")
            entries: List[Token] = []
            while True:
                token = lexer.peek()
                if token is None:
                    lexer.fail("unterminated list")
                if token[1] == "]":
                    lexer.index += 1
                    break
                if entries:
                    lexer.take("sym", ",")
                    token = lexer.peek()
                    if token is None:
                        lexer.fail("unterminated list")
                if token[0] == "int":
                    lexer.index += 1
                    entries.append((OUT if side == "out" else IN, int(token[1])))
                elif token[1] == "*":
                    lexer.index += 1
                    if connection is None or connection[0] != side or starred:
                        lexer.fail("misplaced '*'", token[2])
                    starred = True
                    entries.append(connection[1])
                elif token[0] == "name":
                    edge = (EDGE, next(fresh))
                    entries.append(edge)
                    # a neighbour nested in 'in' sits below and connects by an output
                    vertex(("out" if side == "in" else "in", edge))
                else:
                    lexer.fail(f"unexpected {token[1]!r}")
            sides[side] = entries
        lexer.take("sym", ")")
        if connection is not None and not starred:
            lexer.fail(f"nested vertex {name!r} lacks its '*' slot")
        nodes[slot] = (name, tuple(sides["out"]), tuple(sides["in"]))

    vertex(None)
    if lexer.peek() is not None:
        lexer.fail("trailing input")
    return tuple(nodes)  # type: ignore[arg-type]


def format_term(term: Term) -> str:
    """Print a decorated term rooted at its first node."""
    endpoints: Dict[int, List[int]] = {}
    for v, (_, outs, ins) in enumerate(term):
        for token in outs + ins:
            if token[0] == EDGE:
                endpoints.setdefault(token[1], []).append(v)

    def render(v: int, via: Optional[int], visited: Set[int]) -> str:
        visited.add(v)
        label, outs, ins = term[v]
        parts = []
        for side, tokens in (("out", outs), ("in", ins)):
            items = []
            for kind, value in tokens:
                if kind != EDGE:
                    items.append(str(value))
                elif value == via:
                    items.append("*")
                else:
                    other = [w for w in endpoints[value] if w != v][0]
                    items.append(render(other, value, visited))
            parts.append(f"{side}:[{', '.join(items)}]")
        return f"{label}({', '.join(parts)})"

    return render(0, None, set())


def format_combination(combination: Mapping[Term, Fraction]) -> str:
    if not combination:
        return "0"
    pieces = []
    for term in sorted(combination):
        coefficient = combination[term]
        pieces.append(f"{format_rational(coefficient)} {format_term(term)}")
    return " + ".join(pieces)


_COEFFICIENT = re.compile(r"\s*([+-]?\s*\d+(?:/\d+)?)\s+")


def parse_combination(
    text: str, path: Optional[str] = None, line: Optional[int] = None
) -> List[Tuple[Fraction, Term]]:
    """Parse ``c1 term1 + c2 term2``; coefficients default to 1."""
    results: List[Tuple[Fraction, Term]] = []
    depth = 0
    start = 0
    chunks = []
    for position, char in enumerate(text):
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        elif char == "+" and depth == 0 and text[start:position].strip():
            chunks.append(text[start:position])
            start = position + 1
    chunks.append(text[start:])
    for chunk in chunks:
        chunk = chunk.strip()
        if not chunk or chunk == "0":
            continue
        coefficient = Fraction(1)
        match = _COEFFICIENT.match(chunk)
        if match:
            coefficient = Fraction(match.group(1).replace(" ", ""))
            chunk = chunk[match.end():]
        results.append((coefficient, parse_term(chunk, path, line)))
    return results
