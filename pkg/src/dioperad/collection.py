"""
Collections of (Σ_m, Σ_n)-bimodules.

Each arity component stores its generators and the matrices of the adjacent
transpositions on outputs and inputs; ``M[r, c]`` is the coefficient of
generator r in τ_k · g_c. The collection doubles as the slot-action provider
used by tree canonicalization.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..exactalg.matrix import SignedMatrix, block_diagonal
from ..exceptions import InvalidInputError

Arity = Tuple[int, int]

CHARACTERS = ("trivial", "sign", "regular", "regular_sign")
REGULAR = ("regular", "regular_sign")
DUAL_PREFIX = "dual_"


@dataclass(frozen=True)
class Generator:
    name: str
    m: int
    n: int
    degree: int


@dataclass(frozen=True)
class ArityComponent:
    """Generators of one (m,n) slot together with their transposition actions."""

    m: int
    n: int
    generators: Tuple[Generator, ...]
    out_actions: Tuple[SignedMatrix, ...]
    in_actions: Tuple[SignedMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def check(self) -> None:
        """Verify the Coxeter relations of both actions on the stored generators."""
        dim = self.dim
        identity = SignedMatrix.identity(dim)
        if len(self.out_actions) != max(self.m - 1, 0) or len(self.in_actions) != max(self.n - 1, 0):
            raise InvalidInputError(
                "wrong number of transposition matrices", arity=(self.m, self.n)
            )
        for side, actions in (("outputs", self.out_actions), ("inputs", self.in_actions)):
            for k, tau in enumerate(actions):
                if (tau.rows, tau.cols) != (dim, dim):
                    raise InvalidInputError("action matrix has the wrong shape", side=side, k=k)
                if tau @ tau != identity:
                    raise InvalidInputError(
                        "transposition does not square to the identity",
                        arity=(self.m, self.n),
                        side=side,
                        k=k,
                    )
                for l in range(k + 1, len(actions)):
                    sigma = actions[l]
                    if l == k + 1:
                        if tau @ sigma @ tau != sigma @ tau @ sigma:
                            raise InvalidInputError(
                                "braid relation fails", arity=(self.m, self.n), side=side, k=k
                            )
                    elif tau @ sigma != sigma @ tau:
                        raise InvalidInputError(
                            "distant transpositions do not commute",
                            arity=(self.m, self.n),
                            side=side,
                            k=k,
                        )
        for tau in self.out_actions:
            for sigma in self.in_actions:
                if tau @ sigma != sigma @ tau:
                    raise InvalidInputError(
                        "left and right actions do not commute", arity=(self.m, self.n)
                    )
        for k, tau in enumerate(self.out_actions + self.in_actions):
            for (r, c) in tau.entries:
                if self.generators[r].degree != self.generators[c].degree:
                    raise InvalidInputError(
                        "action does not preserve degrees", arity=(self.m, self.n)
                    )


def _scalar_actions(count: int, dim: int, value: int) -> Tuple[SignedMatrix, ...]:
    return tuple(SignedMatrix.scalar(dim, value) for _ in range(count))


def _character_value(character: str) -> int:
    if character == "trivial":
        return 1
    if character == "sign":
        return -1
    raise InvalidInputError(f"unknown character {character!r}", allowed=CHARACTERS)


def character_component(
    name: str, m: int, n: int, degree: int, outputs: str = "trivial", inputs: str = "trivial"
) -> ArityComponent:
    """
    Component spanned by one generator transforming by a character on each
    side, or by the regular representation of Σ_2 on one side of size two
    (basis ``name`` and ``name.t``). ``regular_sign`` is the regular
    representation written in the basis where the swap acts by -1 off the
    diagonal, which is how duals of regular generators come out.
    """
    if m < 1 or n < 1:
        raise InvalidInputError("generator arity must have m, n >= 1", name=name, arity=(m, n))
    regular_out = outputs in REGULAR
    regular_in = inputs in REGULAR
    if regular_out and regular_in:
        raise InvalidInputError("only one side may carry the regular representation", name=name)
    if regular_out or regular_in:
        size = m if regular_out else n
        if size != 2:
            raise InvalidInputError(
                "the regular representation is supported on a side of size two",
                name=name,
                arity=(m, n),
            )
        value = 1 if (outputs if regular_out else inputs) == "regular" else -1
        swap = SignedMatrix.from_dense([[0, value], [value, 0]])
        generators = (Generator(name, m, n, degree), Generator(f"{name}.t", m, n, degree))
        if regular_out:
            return ArityComponent(
                m, n, generators, (swap,), _scalar_actions(n - 1, 2, _character_value(inputs))
            )
        return ArityComponent(
            m, n, generators, _scalar_actions(m - 1, 2, _character_value(outputs)), (swap,)
        )
    return ArityComponent(
        m,
        n,
        (Generator(name, m, n, degree),),
        _scalar_actions(m - 1, 1, _character_value(outputs)),
        _scalar_actions(n - 1, 1, _character_value(inputs)),
    )


class BimoduleCollection:
    """A finite collection of Σ-bimodules keyed by arity."""

    def __init__(self, components: Iterable[ArityComponent] = (), check: bool = True):
        self.components: Dict[Arity, ArityComponent] = {}
        self._by_name: Dict[str, Tuple[ArityComponent, int]] = {}
        for component in components:
            self.add(component, check=check)

    def add(self, component: ArityComponent, check: bool = True) -> None:
        if check:
            component.check()
        arity = (component.m, component.n)
        if arity in self.components:
            merged = _direct_sum(self.components[arity], component)
            for g in self.components[arity].generators:
                self._by_name.pop(g.name, None)
            component = merged
        for index, g in enumerate(component.generators):
            if g.name in self._by_name:
                raise InvalidInputError(f"duplicate generator name {g.name!r}")
            self._by_name[g.name] = (component, index)
        self.components[arity] = component

    # -- SlotActions ------------------------------------------------------

    def _lookup(self, label: str) -> Tuple[ArityComponent, int]:
        try:
            return self._by_name[label]
        except KeyError:
            raise InvalidInputError(f"unknown generator {label!r}", known=sorted(self._by_name))

    def degree(self, label: str) -> int:
        component, index = self._lookup(label)
        return component.generators[index].degree

    def _act(self, matrices: Sequence[SignedMatrix], component: ArityComponent, index: int, k: int):
        column = matrices[k].column(index)
        return {component.generators[r].name: value for r, value in column.items()}

    def act_out(self, label: str, k: int) -> Mapping[str, Fraction]:
        component, index = self._lookup(label)
        return self._act(component.out_actions, component, index, k)

    def act_in(self, label: str, k: int) -> Mapping[str, Fraction]:
        component, index = self._lookup(label)
        return self._act(component.in_actions, component, index, k)

    # -- queries ----------------------------------------------------------

    def generator(self, label: str) -> Generator:
        component, index = self._lookup(label)
        return component.generators[index]

    def has(self, label: str) -> bool:
        return label in self._by_name

    def arity_of(self, label: str) -> Arity:
        g = self.generator(label)
        return g.m, g.n

    def support(self) -> List[Arity]:
        return sorted(a for a, c in self.components.items() if c.dim)

    def dim(self, m: int, n: int) -> int:
        component = self.components.get((m, n))
        return component.dim if component else 0

    def names(self, m: int, n: int) -> List[str]:
        component = self.components.get((m, n))
        return component.names if component else []

    def restricted(self, arities: Iterable[Arity]) -> "BimoduleCollection":
        keep = set(arities)
        return BimoduleCollection(
            (c for a, c in self.components.items() if a in keep), check=False
        )

    def dual(self) -> "BimoduleCollection":
        """
        sgn ⊗ E* ⊗ sgn: dual basis in degree -|x|, transpositions act by -M^T.

        Names gain the dual prefix, or lose it when already dual.
        """
        components = []
        for component in self.components.values():
            generators = tuple(
                Generator(dual_name(g.name), g.m, g.n, -g.degree) for g in component.generators
            )
            components.append(
                ArityComponent(
                    component.m,
                    component.n,
                    generators,
                    tuple(t.transpose().scaled(-1) for t in component.out_actions),
                    tuple(t.transpose().scaled(-1) for t in component.in_actions),
                )
            )
        return BimoduleCollection(components, check=False)

    def describe(self) -> Dict[str, Dict[str, int]]:
        return {
            f"{m},{n}": {g.name: g.degree for g in c.generators}
            for (m, n), c in sorted(self.components.items())
        }


def dual_name(name: str) -> str:
    if name.startswith(DUAL_PREFIX):
        return name[len(DUAL_PREFIX):]
    return DUAL_PREFIX + name


def _direct_sum(first: ArityComponent, second: ArityComponent) -> ArityComponent:
    return ArityComponent(
        first.m,
        first.n,
        first.generators + second.generators,
        tuple(block_diagonal([a, b]) for a, b in zip(first.out_actions, second.out_actions)),
        tuple(block_diagonal([a, b]) for a, b in zip(first.in_actions, second.in_actions)),
    )


def component_from_matrices(
    names: Sequence[str],
    m: int,
    n: int,
    degrees: Sequence[int],
    out_actions: Sequence[SignedMatrix],
    in_actions: Sequence[SignedMatrix],
) -> ArityComponent:
    return ArityComponent(
        m,
        n,
        tuple(Generator(name, m, n, d) for name, d in zip(names, degrees)),
        tuple(out_actions),
        tuple(in_actions),
    )
