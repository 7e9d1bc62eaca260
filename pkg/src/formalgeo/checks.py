"""
Maurer-Cartan and axiom checks for structures on a graded space.

mc_check and tf_check work on assembled fields. The axiom checks work on
explicit structure constants: a bracket map ``B[(a, b)] = {c: value}`` and a
cobracket map ``D[a] = {(x, y): value}`` with δ(a) = Σ D[a][x, y] e_x ⊗ e_y.
"""

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from ..config import HARD_MAX_ARITY, get_settings
from ..dioperad.endomorphism import MultilinearMap, evaluate
from ..exactalg.graded import GradedSpace
from ..exceptions import InvalidInputError
from ..logging_config import get_logger, log_timing, log_with_context
from ..models.reports import AxiomReport, McReport, TfReport
from ..resolutions.differential import generator_differentials
from ..resolutions.generators import resolution_collection
from .brackets import lie_derivative, poisson_bracket, vector_bracket
from .coordinates import BASE, FIBER, model_coordinates
from .polynomial import PolyField, format_field, monomial_degree
from .tensors import TensorCollection, TfStructure, _invariants, orbit_sign

logger = get_logger("formalgeo.checks")

BracketMap = Dict[Tuple[int, int], Dict[int, Fraction]]
CobracketMap = Dict[int, Dict[Tuple[int, int], Fraction]]
Tensor = Dict[Tuple[int, ...], Fraction]

EXPECTED_DEGREE = {"odd": 2, "even": 3}
MC_MODELS = {"lie1bi": "odd", "liebi": "even"}


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


# Maurer-Cartan


def check_pointed(gamma: PolyField, model: Optional[str] = None) -> None:
    """
    Raises:
        InvalidInputError: when Γ has the wrong degree or a monomial without
            a factor from each side
    """
    coords = gamma.coords
    if coords.model not in EXPECTED_DEGREE:
        raise InvalidInputError("Maurer-Cartan checks need the odd or even model", model=coords.model)
    if model is not None and MC_MODELS.get(model) != coords.model:
        raise InvalidInputError(
            f"model {model!r} does not live on the {coords.model} model", model=model
        )
    expected = EXPECTED_DEGREE[coords.model]
    for monomial, _ in gamma.items():
        degree = monomial_degree(coords, monomial)
        if degree != expected:
            raise InvalidInputError(
                "structure is not homogeneous of the required degree",
                monomial=format_field(PolyField(coords, {monomial: 1}, gamma.order)),
                degree=degree,
                expected=expected,
            )
        sides = {coords.symbols[s].side for s in monomial}
        if sides != {BASE, FIBER}:
            raise InvalidInputError(
                "structure does not vanish on both Lagrangians",
                monomial=format_field(PolyField(coords, {monomial: 1}, gamma.order)),
            )


def mc_residual(gamma: PolyField) -> PolyField:
    """{Γ • Γ}; reliable up to the truncation order of Γ."""
    return poisson_bracket(gamma, gamma)


def mc_components(residual: PolyField) -> Dict[str, int]:
    """Residual monomials per (m, n) = (fiber factors, base factors)."""
    coords = residual.coords
    fibers = set(coords.side_indices(FIBER))
    counts: Dict[str, int] = {}
    for monomial, _ in residual.items():
        m = sum(1 for s in monomial if s in fibers)
        key = f"{m},{len(monomial) - m}"
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


@log_timing
def mc_check(gamma: PolyField, model: Optional[str] = None) -> McReport:
    """
    Raises:
        InvalidInputError: on the degree or vanishing preconditions
    """
    check_pointed(gamma, model)
    residual = mc_residual(gamma)
    name = model or {v: k for k, v in MC_MODELS.items()}[gamma.coords.model]
    report = McReport(
        model=name,
        order=gamma.order,
        is_solution=residual.is_zero(),
        residual_terms=len(residual),
        components=mc_components(residual),
        first_failing_order=residual.lowest_order(),
    )
    log_with_context(
        logger,
        "info",
        "maurer-cartan check finished",
        model=name,
        order=gamma.order,
        is_solution=report.is_solution,
        residual_terms=report.residual_terms,
    )
    return report


@log_timing
def tf_check(structure: TfStructure, order: Optional[int] = None) -> TfReport:
    """[ð, ð] = 0 and Lie_ð φ = 0 on the flat model."""
    for _, component in structure.vector.components + structure.tensor.components:
        if component.coefficient(()):
            raise InvalidInputError("TF structures must vanish at the origin")
    squared = vector_bracket(structure.vector, structure.vector)
    invariance = lie_derivative(structure.vector, structure.tensor)
    if order is None:
        fields = [c for _, c in structure.vector.components + structure.tensor.components]
        order = min((c.order for c in fields), default=get_settings().default_order)
    report = TfReport(
        order=order,
        bracket_closed=squared.is_zero(),
        invariant=invariance.is_zero(),
        residual_terms=squared.residual_terms() + invariance.residual_terms(),
    )
    log_with_context(
        logger,
        "info",
        "tf check finished",
        order=order,
        bracket_closed=report.bracket_closed,
        invariant=report.invariant,
    )
    return report


# structure constants


def full_array(tc: TensorCollection, m: int, n: int) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """Every index tuple of slot (m, n), recovered from the orbit invariants."""
    coords = model_coordinates(tc.space, tc.model)
    slot = _invariants(tc, coords).get((m, n), {})
    if not slot:
        return {}
    d = tc.space.dim
    result = {}
    for betas in product(range(d), repeat=m):
        for alphas in product(range(d), repeat=n):
            sign, key = orbit_sign(tc, coords, m, betas, alphas)
            if sign and key in slot:
                result[(betas, alphas)] = slot[key][0] * sign
    return result


def structure_maps(tc: TensorCollection) -> Tuple[CobracketMap, BracketMap]:
    """
    The cobracket (slot (2,1)) and bracket (slot (1,2)) of a collection.

    For lie1bi and liebi the bracket is read through a ⊗ b -> (-1)^{|a|}[a • b];
    for tf through a ⊗ b -> (-1)^{|a||b|+|a|}[a • b]. The liebi and tf
    cobrackets carry (-1)^{|x|} on their first output x.
    """
    degrees = tc.space.degrees
    cobracket: CobracketMap = {}
    for (betas, alphas), value in full_array(tc, 2, 1).items():
        if tc.model in ("liebi", "tf"):
            value = value * _sign(degrees[betas[0]])
        cobracket.setdefault(alphas[0], {})[betas] = value
    bracket: BracketMap = {}
    for (betas, alphas), value in full_array(tc, 1, 2).items():
        first, second = degrees[alphas[0]], degrees[alphas[1]]
        twist = first * second + first if tc.model == "tf" else first
        bracket.setdefault(alphas, {})[betas[0]] = value * _sign(twist)
    return cobracket, bracket


def _add(target: Dict, key, value: Fraction) -> None:
    total = target.get(key, Fraction(0)) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class _Algebra:
    """Bracket and cobracket evaluation on basis tensors."""

    def __init__(self, space: GradedSpace, cobracket: Mapping, bracket: Mapping, bracket_degree: int):
        self.space = space
        self.degrees = space.degrees
        self.cobracket = {a: dict(v) for a, v in cobracket.items()}
        self.bracket = {k: dict(v) for k, v in bracket.items()}
        self.bracket_degree = bracket_degree

    def br(self, a: int, b: int) -> Dict[int, Fraction]:
        return self.bracket.get((a, b), {})

    def delta(self, a: int) -> Dict[Tuple[int, int], Fraction]:
        return self.cobracket.get(a, {})

    def br_left(self, vector: Mapping[int, Fraction], b: int) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for x, c in vector.items():
            for y, v in self.br(x, b).items():
                _add(out, y, c * v)
        return out

    def br_right(self, a: int, vector: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for x, c in vector.items():
            for y, v in self.br(a, x).items():
                _add(out, y, c * v)
        return out

    def delta_vector(self, vector: Mapping[int, Fraction]) -> Tensor:
        out: Tensor = {}
        for x, c in vector.items():
            for key, v in self.delta(x).items():
                _add(out, key, c * v)
        return out

    def wedge(self, x: int, vector: Mapping[int, Fraction], first: bool = True) -> Tensor:
        """x ∧ v (or v ∧ x when first is False) with x ∧ y = x⊗y - (-1)^{|x||y|} y⊗x."""
        out: Tensor = {}
        for y, c in vector.items():
            left, right = (x, y) if first else (y, x)
            _add(out, (left, right), c)
            _add(out, (right, left), -c * _sign(self.degrees[x] * self.degrees[y]))
        return out

    def sweedler_wedge(self, a: int) -> List[Tuple[Fraction, int, int]]:
        """δ(a) = Σ c a1 ∧ a2 for a graded skew δ(a)."""
        terms = []
        for (x, y), c in self.delta(a).items():
            if x < y:
                terms.append((c, x, y))
            elif x == y:
                terms.append((c / 2, x, y))
        return terms

    def graded_skew(self, tensor: Mapping[Tuple[int, int], Fraction]) -> bool:
        for (x, y), c in tensor.items():
            if tensor.get((y, x), Fraction(0)) != -c * _sign(self.degrees[x] * self.degrees[y]):
                return False
        return True

    def graded_symmetric(self, tensor: Mapping[Tuple[int, int], Fraction]) -> bool:
        for (x, y), c in tensor.items():
            if tensor.get((y, x), Fraction(0)) != c * _sign(self.degrees[x] * self.degrees[y]):
                return False
        return True

    def co_jacobi(self) -> bool:
        """(1 + τ + τ²)(δ ⊗ Id)δ = 0 with τ the Koszul-signed cyclic shift."""
        deg = self.degrees
        for a in range(self.space.dim):
            total: Tensor = {}
            for (x, y), c in self.delta(a).items():
                for (p, q), v in self.delta(x).items():
                    word = (p, q, y)
                    coefficient = c * v
                    for _ in range(3):
                        _add(total, word, coefficient)
                        coefficient *= _sign(deg[word[2]] * (deg[word[0]] + deg[word[1]]))
                        word = (word[2], word[0], word[1])
            if total:
                log_with_context(logger, "debug", "co-Jacobi fails", element=a + 1)
                return False
        return True


def _jacobi_odd(alg: _Algebra) -> bool:
    """[[a•b]•c] = [a•[b•c]] + (-1)^{|a||b|+|a|+|b|} [b•[a•c]]."""
    deg = alg.degrees
    d = alg.space.dim
    for a, b, c in product(range(d), repeat=3):
        total: Dict[int, Fraction] = {}
        for y, v in alg.br_left(alg.br(a, b), c).items():
            _add(total, y, v)
        for y, v in alg.br_right(a, alg.br(b, c)).items():
            _add(total, y, -v)
        sign = _sign(deg[a] * deg[b] + deg[a] + deg[b])
        for y, v in alg.br_right(b, alg.br(a, c)).items():
            _add(total, y, -sign * v)
        if total:
            log_with_context(logger, "debug", "Jacobi fails", triple=(a + 1, b + 1, c + 1))
            return False
    return True


def _odd_symmetry(alg: _Algebra) -> bool:
    deg = alg.degrees
    d = alg.space.dim
    for a, b in product(range(d), repeat=2):
        sign = _sign(deg[a] * deg[b] + deg[a] + deg[b])
        if alg.br(a, b) != {k: sign * v for k, v in alg.br(b, a).items()}:
            return False
    return True


def _bracket_degrees(alg: _Algebra) -> bool:
    deg = alg.degrees
    for (a, b), values in alg.bracket.items():
        if any(deg[c] != deg[a] + deg[b] + alg.bracket_degree for c in values):
            return False
    for a, values in alg.cobracket.items():
        if any(deg[x] + deg[y] != deg[a] for x, y in values):
            return False
    return True


@log_timing
def lie1bi_axiom_check(space: GradedSpace, cobracket: Mapping, bracket: Mapping) -> AxiomReport:
    """
    Co-Jacobi, Jacobi and the Leibniz type identity
        δ[a•b] = Σ a1 ∧ [a2•b] - (-1)^{|a1||a2|} a2 ∧ [a1•b]
               + [a•b1] ∧ b2 - (-1)^{|b1||b2|} [a•b2] ∧ b1
    for δ: V -> ∧²V and [•]: ⊙²V -> V[1].
    """
    alg = _Algebra(space, cobracket, bracket, 1)
    d = space.dim
    deg = alg.degrees

    def leibniz() -> bool:
        for a, b in product(range(d), repeat=2):
            total: Tensor = {}
            for key, v in alg.delta_vector(alg.br(a, b)).items():
                _add(total, key, v)
            for c, a1, a2 in alg.sweedler_wedge(a):
                sign = _sign(deg[a1] * deg[a2])
                for key, v in alg.wedge(a1, alg.br(a2, b)).items():
                    _add(total, key, -c * v)
                for key, v in alg.wedge(a2, alg.br(a1, b)).items():
                    _add(total, key, c * sign * v)
            for c, b1, b2 in alg.sweedler_wedge(b):
                sign = _sign(deg[b1] * deg[b2])
                for key, v in alg.wedge(b2, alg.br(a, b1), first=False).items():
                    _add(total, key, -c * v)
                for key, v in alg.wedge(b1, alg.br(a, b2), first=False).items():
                    _add(total, key, c * sign * v)
            if total:
                log_with_context(logger, "debug", "Leibniz identity fails", pair=(a + 1, b + 1))
                return False
        return True

    checks = {
        "degrees": _bracket_degrees(alg),
        "bracket_symmetry": _odd_symmetry(alg),
        "cobracket_symmetry": all(alg.graded_skew(alg.delta(a)) for a in range(d)),
        "co_jacobi": alg.co_jacobi(),
        "jacobi": _jacobi_odd(alg),
        "leibniz": leibniz(),
    }
    return _report("lie1bi", checks)


TF_VARIANTS = ("tf", "tf_wedge", "tf_sym")


@log_timing
def tf_axiom_check(
    space: GradedSpace, cobracket: Mapping, bracket: Mapping, variant: str = "tf"
) -> AxiomReport:
    """
    Jacobi and
        δ[a•b] = Σ a1 ⊗ [a2•b] + [a•b1] ⊗ b2
               + (-1)^{|a||b|+|a|+|b|} ([b•a1] ⊗ a2 + b1 ⊗ [b2•a])
    for δ valued in ⊗², ∧² (tf_wedge) or ⊙² (tf_sym).
    """
    if variant not in TF_VARIANTS:
        raise InvalidInputError(f"unknown TF variant {variant!r}", allowed=list(TF_VARIANTS))
    alg = _Algebra(space, cobracket, bracket, 1)
    d = space.dim
    deg = alg.degrees

    def leibniz() -> bool:
        for a, b in product(range(d), repeat=2):
            total: Tensor = {}
            for key, v in alg.delta_vector(alg.br(a, b)).items():
                _add(total, key, v)
            swap = _sign(deg[a] * deg[b] + deg[a] + deg[b])
            for (a1, a2), c in alg.delta(a).items():
                for y, v in alg.br(a2, b).items():
                    _add(total, (a1, y), -c * v)
                for y, v in alg.br(b, a1).items():
                    _add(total, (y, a2), -swap * c * v)
            for (b1, b2), c in alg.delta(b).items():
                for y, v in alg.br(a, b1).items():
                    _add(total, (y, b2), -c * v)
                for y, v in alg.br(b2, a).items():
                    _add(total, (b1, y), -swap * c * v)
            if total:
                log_with_context(logger, "debug", "TF Leibniz identity fails", pair=(a + 1, b + 1))
                return False
        return True

    checks = {
        "degrees": _bracket_degrees(alg),
        "bracket_symmetry": _odd_symmetry(alg),
        "jacobi": _jacobi_odd(alg),
        "leibniz": leibniz(),
    }
    if variant == "tf_wedge":
        checks["cobracket_symmetry"] = all(alg.graded_skew(alg.delta(a)) for a in range(d))
    elif variant == "tf_sym":
        checks["cobracket_symmetry"] = all(alg.graded_symmetric(alg.delta(a)) for a in range(d))
    return _report(variant, checks)


@log_timing
def liebi_axiom_check(space: GradedSpace, cobracket: Mapping, bracket: Mapping) -> AxiomReport:
    """
    Graded Lie bialgebra with degree 0 bracket and cobracket: Jacobi,
    co-Jacobi and the cocycle condition
        δ[a,b] = a·δ(b) - (-1)^{|a||b|} b·δ(a),
    a·(x⊗y) = [a,x]⊗y + (-1)^{|a||x|} x⊗[a,y].
    """
    alg = _Algebra(space, cobracket, bracket, 0)
    d = space.dim
    deg = alg.degrees

    def act(a: int, tensor: Mapping[Tuple[int, int], Fraction]) -> Tensor:
        out: Tensor = {}
        for (x, y), c in tensor.items():
            for z, v in alg.br(a, x).items():
                _add(out, (z, y), c * v)
            sign = _sign(deg[a] * deg[x])
            for z, v in alg.br(a, y).items():
                _add(out, (x, z), sign * c * v)
        return out

    def jacobi() -> bool:
        for a, b, c in product(range(d), repeat=3):
            total: Dict[int, Fraction] = {}
            for y, v in alg.br_right(a, alg.br(b, c)).items():
                _add(total, y, v)
            for y, v in alg.br_left(alg.br(a, b), c).items():
                _add(total, y, -v)
            sign = _sign(deg[a] * deg[b])
            for y, v in alg.br_right(b, alg.br(a, c)).items():
                _add(total, y, -sign * v)
            if total:
                return False
        return True

    def cocycle() -> bool:
        for a, b in product(range(d), repeat=2):
            total: Tensor = {}
            for key, v in alg.delta_vector(alg.br(a, b)).items():
                _add(total, key, v)
            for key, v in act(a, alg.delta(b)).items():
                _add(total, key, -v)
            sign = _sign(deg[a] * deg[b])
            for key, v in act(b, alg.delta(a)).items():
                _add(total, key, sign * v)
            if total:
                log_with_context(logger, "debug", "cocycle condition fails", pair=(a + 1, b + 1))
                return False
        return True

    def antisymmetry() -> bool:
        for a, b in product(range(d), repeat=2):
            sign = -_sign(deg[a] * deg[b])
            if alg.br(a, b) != {k: sign * v for k, v in alg.br(b, a).items()}:
                return False
        return True

    checks = {
        "degrees": _bracket_degrees(alg),
        "bracket_symmetry": antisymmetry(),
        "cobracket_symmetry": all(alg.graded_skew(alg.delta(a)) for a in range(d)),
        "co_jacobi": alg.co_jacobi(),
        "jacobi": jacobi(),
        "cocycle": cocycle(),
    }
    return _report("liebi", checks)


def liebi_check(f: PolyField) -> McReport:
    """Maurer-Cartan check of a degree 3 function on the even model."""
    return mc_check(f, "liebi")


def collection_axiom_check(
    tc: TensorCollection, variant: Optional[str] = None, window: Optional[int] = None
) -> AxiomReport:
    """
    Named identities on the (1,2) and (2,1) slots, then every relation
    d(e_{m,n}) with m+n >= 5 evaluated on the whole collection. The m+n = 4
    relations are exactly the named identities.
    """
    cobracket, bracket = structure_maps(tc)
    if tc.model == "lie1bi":
        report = lie1bi_axiom_check(tc.space, cobracket, bracket)
    elif tc.model == "liebi":
        report = liebi_axiom_check(tc.space, cobracket, bracket)
    else:
        report = tf_axiom_check(tc.space, cobracket, bracket, variant or "tf")
    residuals = relation_residuals(tc, window, smallest=5)
    checks = dict(report.checks)
    checks["higher_relations"] = not any(residuals.values())
    return AxiomReport(name=report.name, checks=checks, relations=residuals)


# the collection as a representation of the resolution


def representation_space(tc: TensorCollection) -> GradedSpace:
    """
    The space the generators act on with their own degrees: V itself for
    lie1bi and tf, V shifted down by one for liebi, where generator (m,n)
    has degree 3-2m while μ_{m,n} has degree 3-m-n on V.
    """
    if tc.model == "liebi":
        return GradedSpace.from_pairs((name, degree - 1) for name, degree in tc.space.basis)
    return tc.space


def representation(tc: TensorCollection, window: int) -> Dict[str, MultilinearMap]:
    """
    One multilinear map per generator label of the resolution inside the
    window; slots the collection leaves empty get the zero map. The swapped
    element of a tf pair is the map with its two outputs exchanged.
    """
    space = representation_space(tc)
    generators = resolution_collection(tc.model, window)
    maps: Dict[str, MultilinearMap] = {}
    for (m, n) in generators.support():
        entries = full_array(tc, m, n) if (m, n) in tc.entries else {}
        for label in generators.names(m, n):
            degree = generators.degree(label)
            if label.endswith(".t"):
                swapped = {}
                for (betas, alphas), value in entries.items():
                    flip = _sign(space.degree(betas[0]) * space.degree(betas[1]))
                    swapped[((betas[1], betas[0]), alphas)] = value * flip
                maps[label] = MultilinearMap(m, n, degree, swapped)
            else:
                maps[label] = MultilinearMap(m, n, degree, entries)
    return maps


def relation_window(tc: TensorCollection) -> int:
    """
    Largest m+n whose relation can involve the collection: two vertices of
    at most T legs each meet in a slot with m+n <= 2T-2.
    """
    top = max((m + n for m, n in tc.slots()), default=3)
    return max(4, 2 * top - 2)


def relation_residuals(
    tc: TensorCollection, window: Optional[int] = None, smallest: int = 3
) -> Dict[str, int]:
    """
    Nonzero matrix entries of d(e_{m,n}) evaluated on the collection, summed
    per slot "m,n" for smallest <= m+n <= window. All zero iff the
    collection is a representation of the resolution inside the window.

    Raises:
        InvalidInputError: for a window below 3
    """
    if window is None:
        window = relation_window(tc)
        if window > HARD_MAX_ARITY:
            log_with_context(
                logger, "warning", "relations above the hard cap are skipped", window=window
            )
            window = HARD_MAX_ARITY
    if window < 3:
        raise InvalidInputError("the arity window must be at least 3", window=window)
    if window < smallest:
        return {}
    space = representation_space(tc)
    maps = representation(tc, window)
    generators = resolution_collection(tc.model, window)
    residuals: Dict[str, int] = {}
    for label, image in generator_differentials(tc.model, generators).items():
        m, n = generators.arity_of(label)
        if m + n < smallest:
            continue
        live = {
            term: value
            for term, value in image.items()
            if not any(maps[node].is_zero() for node, _, _ in term)
        }
        key = f"{m},{n}"
        value = evaluate(live, maps, space, (m, n), generators.degree(label) + 1)
        residuals[key] = residuals.get(key, 0) + len(value.entries)
    log_with_context(
        logger,
        "debug",
        "relations evaluated",
        model=tc.model,
        window=window,
        failing=[key for key, count in residuals.items() if count],
    )
    return dict(sorted(residuals.items(), key=lambda item: tuple(map(int, item[0].split(",")))))


def _report(name: str, checks: Dict[str, bool]) -> AxiomReport:
    report = AxiomReport(name=name, checks=checks)
    log_with_context(logger, "info", "axiom check finished", structure=name, passed=report.passed)
    return report


def bracket_map(entries: Iterable[Tuple[int, int, int, object]]) -> BracketMap:
    """Build a bracket map from (a, b, c, value) with 1-based indices."""
    result: BracketMap = {}
    for a, b, c, value in entries:
        result.setdefault((a - 1, b - 1), {})[c - 1] = Fraction(value)
    return result


def cobracket_map(entries: Iterable[Tuple[int, int, int, object]]) -> CobracketMap:
    """Build a cobracket map from (a, x, y, value) with 1-based indices."""
    result: CobracketMap = {}
    for a, x, y, value in entries:
        result.setdefault(a - 1, {})[(x - 1, y - 1)] = Fraction(value)
    return result
