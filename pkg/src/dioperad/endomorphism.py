"""
The endomorphism dioperad End_V of a graded space.

A multilinear map f: V^{⊗n} -> V^{⊗m} is stored by its matrix entries on
basis words. Composition plugs output i of the lower map into input j of the
upper map, with the composite's legs ordered exactly as tree grafting orders
them. Two independent evaluations are provided: a direct one, and one that
follows the textbook factorization (Id⊗f⊗Id) σ (Id⊗g⊗Id) through interval
swaps; they serve as oracles for tree composition.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Sequence, Tuple

from ..exactalg.graded import GradedSpace
from ..exactalg.signs import koszul_sign
from ..exceptions import InvalidInputError
from ..treespace import EDGE, IN, OUT, Term, Token

Word = Tuple[int, ...]
Entries = Dict[Tuple[Word, Word], Fraction]


@dataclass(frozen=True)
class MultilinearMap:
    """f(e_ins) = Σ entries[(outs, ins)] e_outs, of a fixed degree."""

    m: int
    n: int
    degree: int
    entries: Entries = field(default_factory=dict)

    def __post_init__(self):
        clean: Entries = {}
        for (outs, ins), value in self.entries.items():
            if len(outs) != self.m or len(ins) != self.n:
                raise InvalidInputError(
                    "entry word lengths do not match the arity", arity=(self.m, self.n)
                )
            value = Fraction(value)
            if value:
                clean[(tuple(outs), tuple(ins))] = value
        object.__setattr__(self, "entries", clean)

    def apply(self, word: Word) -> Dict[Word, Fraction]:
        return {outs: v for (outs, ins), v in self.entries.items() if ins == tuple(word)}

    def __add__(self, other: "MultilinearMap") -> "MultilinearMap":
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, Fraction(0)) + value
        return MultilinearMap(self.m, self.n, self.degree, entries)

    def scaled(self, factor) -> "MultilinearMap":
        factor = Fraction(factor)
        return MultilinearMap(
            self.m, self.n, self.degree, {k: v * factor for k, v in self.entries.items()}
        )

    def is_zero(self) -> bool:
        return not self.entries


def _degree_sum(space: GradedSpace, word: Sequence[int]) -> int:
    return sum(space.degree(k) for k in word)


def endomorphism_compose(
    upper: MultilinearMap, i: int, lower: MultilinearMap, j: int, space: GradedSpace
) -> MultilinearMap:
    """
    upper ᵢ∘ⱼ lower evaluated directly on basis words.

    Raises:
        InvalidInputError: if i or j is out of range
    """
    m1, n1, m2, n2 = upper.m, upper.n, lower.m, lower.n
    if not (1 <= i <= m2 and 1 <= j <= n1):
        raise InvalidInputError("composition index out of range", i=i, j=j)
    entries: Entries = {}
    size = space.dim
    for word in product(range(size), repeat=n1 + n2 - 1):
        before, middle, after = word[: j - 1], word[j - 1 : j - 1 + n2], word[j - 1 + n2 :]
        for y, c_lower in lower.apply(middle).items():
            head, pivot, tail = y[: i - 1], y[i - 1], y[i:]
            for z, c_upper in upper.apply(before + (pivot,) + after).items():
                exponent = lower.degree * _degree_sum(space, before)
                exponent += _degree_sum(space, head) * _degree_sum(space, before)
                exponent += _degree_sum(space, tail) * _degree_sum(space, after)
                exponent += upper.degree * _degree_sum(space, head)
                sign = -1 if exponent % 2 else 1
                key = (head + z + tail, word)
                entries[key] = entries.get(key, Fraction(0)) + sign * c_lower * c_upper
    return MultilinearMap(m1 + m2 - 1, n1 + n2 - 1, upper.degree + lower.degree, entries)


# -- the factorized formula ---------------------------------------------------

Vector = Dict[Word, Fraction]


def apply_block(
    f: MultilinearMap, position: int, vector: Mapping[Word, Fraction], space: GradedSpace
) -> Vector:
    """(Id^{⊗position} ⊗ f ⊗ Id^{⊗rest}) on a combination of words."""
    result: Vector = {}
    for word, coefficient in vector.items():
        head, block, tail = word[:position], word[position : position + f.n], word[position + f.n :]
        sign = -1 if (f.degree * _degree_sum(space, head)) % 2 else 1
        for outs, value in f.apply(block).items():
            key = head + outs + tail
            result[key] = result.get(key, Fraction(0)) + sign * coefficient * value
    return {k: v for k, v in result.items() if v}


def permute(vector: Mapping[Word, Fraction], permutation: Sequence[int], space: GradedSpace) -> Vector:
    """Rearrange every word into (x_σ(1), ..., x_σ(n)) with its Koszul sign."""
    result: Vector = {}
    for word, coefficient in vector.items():
        degrees = [space.degree(k) for k in word]
        sign = koszul_sign(permutation, degrees)
        key = tuple(word[p - 1] for p in permutation)
        result[key] = result.get(key, Fraction(0)) + sign * coefficient
    return {k: v for k, v in result.items() if v}


def interval_swap(m2: int, i: int, j: int, n1: int) -> List[int]:
    """
    The permutation taking (x_1..x_{j-1}, y_1..y_{m2}, x'_1..) to
    (y_1..y_{i-1}, x_1..x_{j-1}, y_i, x'_1.., y_{i+1}..y_{m2}).
    """
    xs = list(range(1, j))
    ys = list(range(j, j + m2))
    rest = list(range(j + m2, n1 + m2))
    return ys[: i - 1] + xs + [ys[i - 1]] + rest + ys[i:]


def composed_by_formula(
    upper: MultilinearMap, i: int, lower: MultilinearMap, j: int, space: GradedSpace
) -> MultilinearMap:
    m1, n1, m2, n2 = upper.m, upper.n, lower.m, lower.n
    if not (1 <= i <= m2 and 1 <= j <= n1):
        raise InvalidInputError("composition index out of range", i=i, j=j)
    entries: Entries = {}
    swap = interval_swap(m2, i, j, n1)
    for word in product(range(space.dim), repeat=n1 + n2 - 1):
        stage = apply_block(lower, j - 1, {tuple(word): Fraction(1)}, space)
        stage = permute(stage, swap, space)
        stage = apply_block(upper, i - 1, stage, space)
        for outs, value in stage.items():
            entries[(outs, tuple(word))] = value
    return MultilinearMap(m1 + m2 - 1, n1 + n2 - 1, upper.degree + lower.degree, entries)


# -- evaluating decorated trees ----------------------------------------------


def relabel_legs(
    f: MultilinearMap, outs: Sequence[Token], ins: Sequence[Token], space: GradedSpace
) -> MultilinearMap:
    """Reorder a map's slots so that leg k of each side sits at position k."""
    out_perm = [outs.index((OUT, k)) + 1 for k in range(1, f.m + 1)]
    in_order = [ins.index((IN, k)) + 1 for k in range(1, f.n + 1)]
    entries: Entries = {}
    for (o, w), value in f.entries.items():
        new_out = tuple(o[p - 1] for p in out_perm)
        sign = koszul_sign(out_perm, [space.degree(x) for x in o])
        # slot p of f reads the input leg ins[p-1]
        new_in = [0] * f.n
        for p, token in enumerate(ins):
            new_in[token[1] - 1] = w[p]
        sign *= koszul_sign(in_order, [space.degree(x) for x in w])
        entries[(new_out, tuple(new_in))] = sign * value
    return MultilinearMap(f.m, f.n, f.degree, entries)


def evaluate_term(
    term: Term, representation: Mapping[str, MultilinearMap], space: GradedSpace
) -> MultilinearMap:
    """
    The multilinear map a decorated tree represents, contracting internal
    edges one at a time in the node order of the term.

    Raises:
        InvalidInputError: if a label has no map or a map's arity is wrong
    """
    items: List[Tuple[MultilinearMap, List[Token], List[Token]]] = []
    for label, outs, ins in term:
        if label not in representation:
            raise InvalidInputError(f"no map for generator {label!r}")
        f = representation[label]
        if (f.m, f.n) != (len(outs), len(ins)):
            raise InvalidInputError("map arity does not match the vertex", label=label)
        items.append((f, list(outs), list(ins)))
    sign = 1
    while len(items) > 1:
        edge = next(t for _, _, ins in items for t in ins if t[0] == EDGE)
        lower_at = next(k for k, (_, outs, _) in enumerate(items) if edge in outs)
        upper_at = next(k for k, (_, _, ins) in enumerate(items) if edge in ins)
        first, second = sorted((lower_at, upper_at))
        between = sum(items[k][0].degree for k in range(first + 1, second))
        if (items[second][0].degree * between) % 2:
            sign = -sign
        upper_f, upper_outs, upper_ins = items[upper_at]
        lower_f, lower_outs, lower_ins = items[lower_at]
        if upper_at > lower_at and (upper_f.degree * lower_f.degree) % 2:
            sign = -sign
        i = lower_outs.index(edge) + 1
        j = upper_ins.index(edge) + 1
        merged = endomorphism_compose(upper_f, i, lower_f, j, space)
        outs = lower_outs[: i - 1] + upper_outs + lower_outs[i:]
        ins = upper_ins[: j - 1] + lower_ins + upper_ins[j:]
        items = [item for k, item in enumerate(items) if k not in (first, second)]
        items.insert(first, (merged, outs, ins))
    f, outs, ins = items[0]
    return relabel_legs(f, outs, ins, space).scaled(sign)


def evaluate(
    combination: Mapping[Term, Fraction],
    representation: Mapping[str, MultilinearMap],
    space: GradedSpace,
    arity: Tuple[int, int],
    degree: int = 0,
) -> MultilinearMap:
    """Evaluate a homogeneous combination; the empty combination is the zero map."""
    total = None
    for term, coefficient in combination.items():
        value = evaluate_term(term, representation, space).scaled(coefficient)
        total = value if total is None else total + value
    return total if total is not None else MultilinearMap(arity[0], arity[1], degree)
