"""
Cobar complexes of quadratic dioperads inside an arity window.

The cobar complex of Q in slot (m,n) has, at tree level v, the trees with v
vertices of arity at least three, each vertex decorated by the dual of the
chosen quotient basis of Q and the tree oriented by its internal edge word.
Its differential expands one vertex into two; it is stored as the transpose
of the edge-contraction map, whose columns are computed by composing the two
vertex decorations in Q and reducing to normal form. Levels are graded by
``v - (m + n - 2)``, so binary trees sit in degree 0 and the corolla in
degree ``3 - m - n``.
"""

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from ..exactalg.linalg import Vector, rank
from ..exactalg.matrix import SignedMatrix
from ..exactalg.signs import koszul_sign
from ..exceptions import InvalidInputError, WindowInsufficientError
from ..logging_config import get_logger, log_timing, log_with_context
from ..dioperad.collection import Arity, BimoduleCollection
from ..dioperad.free import compose, decorations
from ..dioperad.quadratic import Presentation, QuotientSlot, quotient_slot
from ..treespace import EDGE, Combination, Term, add_term, bare_tree, canonicalize_term, det_line, enumerate_trees

logger = get_logger("cobar.complex")


def _prefix(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.]", "_", name) or "q"


class WindowDioperad:
    """
    The slots of a quadratic dioperad Q with a + b <= max_arity, with
    composition computed on lifted quotient bases.

    Basis element k of Q(a,b) is named ``<prefix>.a.b.k``.
    """

    def __init__(self, presentation: Presentation, max_arity: int):
        if max_arity < 3:
            raise InvalidInputError("the arity window must be at least 3", window=max_arity)
        self.presentation = presentation
        self.max_arity = max_arity
        self.prefix = _prefix(presentation.name)
        self.collection = BimoduleCollection()
        self._slots: Dict[Arity, QuotientSlot] = {}
        self._by_name: Dict[str, Tuple[QuotientSlot, int]] = {}
        self._products: Dict[Tuple[str, int, str, int], Dict[str, Fraction]] = {}
        self._lock = threading.RLock()

    def slot(self, a: int, b: int) -> QuotientSlot:
        """
        Raises:
            WindowInsufficientError: if a + b lies outside the window
        """
        if a + b > self.max_arity:
            raise WindowInsufficientError(
                "slot lies outside the arity window",
                presentation=self.presentation.name,
                slot=f"{a},{b}",
                window=self.max_arity,
            )
        with self._lock:
            if (a, b) not in self._slots:
                computed = quotient_slot(self.presentation, a, b, max(a + b - 2, 1))
                if computed.dim:
                    component = computed.component(self.prefix)
                    self.collection.add(component, check=False)
                    for k, g in enumerate(component.generators):
                        self._by_name[g.name] = (computed, k)
                self._slots[(a, b)] = computed
            return self._slots[(a, b)]

    def prepare(self, m: int, n: int) -> List[Arity]:
        """Compute every vertex slot an (m,n) tree can carry; returns the nonzero ones."""
        support = []
        for a in range(1, m + 1):
            for b in range(1, n + 1):
                if a + b >= 3 and self.slot(a, b).dim:
                    support.append((a, b))
        return support

    def names(self, a: int, b: int) -> List[str]:
        return self.collection.names(a, b)

    def dim(self, a: int, b: int) -> int:
        return self.slot(a, b).dim

    def compose_names(self, upper: str, i: int, lower: str, j: int) -> Dict[str, Fraction]:
        """upper ᵢ∘ⱼ lower expanded in the quotient basis of the target slot."""
        key = (upper, i, lower, j)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        try:
            upper_slot, upper_k = self._by_name[upper]
            lower_slot, lower_k = self._by_name[lower]
        except KeyError as e:
            raise InvalidInputError(f"unknown basis element {e.args[0]!r}")
        product = compose(
            self.presentation.generators,
            upper_slot.lift(upper_k),
            i,
            lower_slot.lift(lower_k),
            j,
        )
        target = self.slot(upper_slot.m + lower_slot.m - 1, upper_slot.n + lower_slot.n - 1)
        result: Dict[str, Fraction] = {}
        if target.dim:
            names = self.names(target.m, target.n)
            result = {names[k]: v for k, v in target.normal_form(product).items()}
        self._products[key] = result
        return result


@dataclass
class CobarComplex:
    """
    One (m,n) slot of the cobar complex.

    ``levels[v]`` lists the canonical decorated trees with v vertices;
    ``contractions[v]`` maps level v to level v-1 (rows index level v-1). The
    cobar differential from level v to v+1 is ``contractions[v+1]`` transposed.
    """

    m: int
    n: int
    levels: Dict[int, List[Term]]
    contractions: Dict[int, SignedMatrix]
    reversed_order: bool = False
    index: Dict[int, Dict[Term, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {
            v: {term: k for k, term in enumerate(terms)} for v, terms in self.levels.items()
        }

    @property
    def top(self) -> int:
        return self.m + self.n - 2

    def degree(self, level: int) -> int:
        """Cohomological degree of a tree level."""
        return level - self.top

    def dim(self, level: int) -> int:
        return len(self.levels.get(level, []))

    def differential_matrix(self, level: int) -> SignedMatrix:
        """d: level -> level + 1."""
        contraction = self.contractions.get(level + 1)
        if contraction is None:
            return SignedMatrix(0, self.dim(level))
        return contraction.transpose()

    def differential(self, level: int, element: Mapping[Term, Fraction]) -> Combination:
        """
        Apply d to a combination of level-``level`` basis trees.

        Raises:
            InvalidInputError: if a tree is not a basis tree of that level
        """
        positions = self.index.get(level, {})
        vector: Vector = {}
        for term, coefficient in element.items():
            if term not in positions:
                raise InvalidInputError(
                    "not a cobar basis tree of this level", slot=f"{self.m},{self.n}", level=level
                )
            if coefficient:
                vector[positions[term]] = Fraction(coefficient)
        image = self.differential_matrix(level).apply(vector)
        targets = self.levels.get(level + 1, [])
        return {targets[k]: v for k, v in image.items()}

    def ranks(self) -> Dict[int, int]:
        """Rank of d leaving each level."""
        return {
            level: rank(self.contractions[level + 1]) if level + 1 in self.contractions else 0
            for level in range(1, self.top + 1)
        }

    def d_squared_zero(self) -> bool:
        for level in range(2, self.top):
            lower, upper = self.contractions.get(level), self.contractions.get(level + 1)
            if lower is None or upper is None:
                continue
            if not (lower @ upper).is_zero():
                return False
        return True


def _contraction_column(
    dioperad: WindowDioperad, term: Term, reversed_order: bool
) -> Combination:
    """Sum over internal edges of the term with that edge contracted."""
    collection = dioperad.collection
    edges = [e for _, _, e in bare_tree(term).internal_edges]
    word = list(reversed(edges)) if reversed_order else edges
    degrees = [collection.degree(label) for label, _, _ in term]
    result: Combination = {}
    for position, edge in enumerate(word):
        token = (EDGE, edge)
        rest = [e for e in word if e != edge]
        upper = next(k for k, (_, _, ins) in enumerate(term) if token in ins)
        lower = next(k for k, (_, outs, _) in enumerate(term) if token in outs)
        others = [k for k in range(len(term)) if k not in (upper, lower)]
        sign = -1 if position % 2 else 1
        sign *= koszul_sign([k + 1 for k in [upper, lower] + others], degrees)
        upper_label, upper_outs, upper_ins = term[upper]
        lower_label, lower_outs, lower_ins = term[lower]
        i = lower_outs.index(token) + 1
        j = upper_ins.index(token) + 1
        outs = lower_outs[: i - 1] + upper_outs + lower_outs[i:]
        ins = upper_ins[: j - 1] + lower_ins + upper_ins[j:]
        tail = tuple(term[k] for k in others)
        for name, coefficient in dioperad.compose_names(upper_label, i, lower_label, j).items():
            canonical, edge_map = canonicalize_term(((name, outs, ins),) + tail, collection)
            contracted = [(EDGE, edge_map[e]) for e in rest]
            for image, factor in canonical.items():
                orientation = det_line(bare_tree(image), reversed_order).reordered(contracted).sign()
                add_term(result, image, sign * orientation * coefficient * factor)
    return result


@log_timing
def build_cobar(
    dioperad: WindowDioperad, m: int, n: int, reversed_order: bool = False
) -> CobarComplex:
    """
    The (m,n) slot of the cobar complex of a windowed dioperad.

    Raises:
        InvalidInputError: for m + n < 3
        WindowInsufficientError: if m + n exceeds the dioperad's window
    """
    if m < 1 or n < 1 or m + n < 3:
        raise InvalidInputError("cobar slots need m, n >= 1 and m + n >= 3", m=m, n=n)
    support = dioperad.prepare(m, n)
    top = m + n - 2
    levels: Dict[int, List[Term]] = {v: [] for v in range(1, top + 1)}
    if support:
        for tree in enumerate_trees(m, n, support, top):
            levels[len(tree.vertices)].extend(decorations(tree, dioperad.collection))
    complex_ = CobarComplex(m, n, levels, {}, reversed_order)
    for v in range(2, top + 1):
        rows = complex_.index[v - 1]
        columns = []
        for term in levels[v]:
            column = _contraction_column(dioperad, term, reversed_order)
            try:
                columns.append({rows[t]: c for t, c in column.items()})
            except KeyError:
                raise InvalidInputError(
                    "contraction left the cobar basis", slot=f"{m},{n}", level=v
                )
        complex_.contractions[v] = SignedMatrix.from_columns(len(levels[v - 1]), columns)
    log_with_context(
        logger,
        "debug",
        "cobar slot built",
        slot=f"{m},{n}",
        dims={complex_.degree(v): len(terms) for v, terms in levels.items()},
    )
    return complex_


def cohomology(complex_: CobarComplex) -> Dict[int, int]:
    """dim H^{-i} keyed by i >= 0."""
    ranks = complex_.ranks()
    result: Dict[int, int] = {}
    for level in range(1, complex_.top + 1):
        incoming = ranks.get(level - 1, 0)
        dim = complex_.dim(level) - ranks.get(level, 0) - incoming
        result[-complex_.degree(level)] = dim
    return result


def euler_characteristic(complex_: CobarComplex, from_cohomology: Optional[Dict[int, int]] = None) -> int:
    """
    Σ (-1)^i dim H^{-i}. Without cohomology this is the alternating sum of
    the level dimensions, which must agree.
    """
    if from_cohomology is not None:
        return sum((-1) ** i * d for i, d in from_cohomology.items())
    return sum(
        (-1) ** (complex_.top - level) * complex_.dim(level)
        for level in range(1, complex_.top + 1)
    )
