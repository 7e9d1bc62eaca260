"""Report models returned by the verification commands."""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class SlotDimension(BaseModel):
    """Dimension of one (m,n) slot, optionally against an independent count."""

    m: int = Field(..., description="Number of outputs")
    n: int = Field(..., description="Number of inputs")
    dim: int = Field(..., description="Dimension of the quotient slot")
    free_dim: Optional[int] = Field(None, description="Dimension of the free slot")
    ideal_dim: Optional[int] = Field(None, description="Dimension of the ideal slot")
    expected: Optional[int] = Field(
        None, description="Independently computed dimension the slot is compared with"
    )

    @property
    def slot(self) -> str:
        return f"{self.m},{self.n}"

    @property
    def matches(self) -> bool:
        return self.expected is None or self.expected == self.dim


class CohomologySlot(BaseModel):
    """Cohomology of one (m,n) slot of a cobar complex."""

    m: int = Field(..., description="Number of outputs")
    n: int = Field(..., description="Number of inputs")
    chain_dims: Dict[int, int] = Field(
        ..., description="Dimension of the degree -i term, keyed by i"
    )
    ranks: Dict[int, int] = Field(
        ..., description="Rank of the differential leaving degree -i, keyed by i"
    )
    cohomology: Dict[int, int] = Field(..., description="dim H^{-i}, keyed by i")
    expected_h0: int = Field(..., description="Dimension H^0 must have")
    euler_characteristic: int = Field(..., description="Alternating sum of chain dimensions")
    d_squared_zero: bool = Field(..., description="Whether consecutive differentials compose to zero")

    @property
    def slot(self) -> str:
        return f"{self.m},{self.n}"

    @property
    def acyclic(self) -> bool:
        return all(dim == 0 for i, dim in self.cohomology.items() if i > 0)

    @property
    def passed(self) -> bool:
        return (
            self.acyclic
            and self.cohomology.get(0, 0) == self.expected_h0
            and self.d_squared_zero
            and self.euler_characteristic == sum((-1) ** i * d for i, d in self.cohomology.items())
        )


class KoszulReport(BaseModel):
    """Koszulness of a presentation inside an arity window."""

    presentation: str = Field(..., description="Presentation checked")
    dual: str = Field(..., description="Quadratic dual whose cobar complex was built")
    window: int = Field(..., description="Largest m+n examined")
    slots: List[CohomologySlot] = Field(..., description="Per-slot cohomology")
    criterion: List[SlotDimension] = Field(
        default_factory=list,
        description="P(m,n) against the reduced-tree count of its operadic parts",
    )

    @property
    def verdict(self) -> Literal["koszul-in-window", "not-koszul-in-window"]:
        if all(slot.passed for slot in self.slots):
            return "koszul-in-window"
        return "not-koszul-in-window"

    @property
    def failing_slots(self) -> List[str]:
        return [slot.slot for slot in self.slots if not slot.passed]

    @property
    def criterion_holds(self) -> bool:
        return all(entry.matches for entry in self.criterion)

    @property
    def passed(self) -> bool:
        return self.verdict == "koszul-in-window" and self.criterion_holds


class FreeDimReport(BaseModel):
    """Free, ideal and quotient dimensions of one slot."""

    presentation: str = Field(..., description="Presentation examined")
    slot: SlotDimension = Field(..., description="Slot dimensions")
    tree_shapes: Optional[int] = Field(
        None, description="Undecorated tree shapes confirmed pairwise non-isomorphic"
    )

    @property
    def passed(self) -> bool:
        return True


class ResolutionReport(BaseModel):
    """d² and consistency checks of an explicit minimal resolution."""

    resolution: str = Field(..., description="Resolution name")
    window: int = Field(..., description="Largest m+n examined")
    generators: int = Field(..., description="Number of generators checked")
    d_squared: Dict[str, int] = Field(
        ..., description="Terms left in d²(generator), keyed by generator name"
    )
    degree_ok: bool = Field(..., description="Every term of d has degree one more than its source")
    equivariant: bool = Field(..., description="d commutes with leg transpositions")
    presentation_match: List[SlotDimension] = Field(
        default_factory=list,
        description="Degree-zero cohomology against the quadratic presentation",
    )

    @property
    def passed(self) -> bool:
        return (
            all(count == 0 for count in self.d_squared.values())
            and self.degree_ok
            and self.equivariant
            and all(entry.matches for entry in self.presentation_match)
        )


class McReport(BaseModel):
    """Maurer-Cartan check of a structure up to a truncation order."""

    model: str = Field(..., description="Model the structure lives in")
    order: int = Field(..., description="Truncation order N")
    is_solution: bool = Field(..., description="Whether the bracket of the structure with itself vanishes")
    residual_terms: int = Field(..., description="Number of monomials left in the residual")
    components: Dict[str, int] = Field(
        default_factory=dict, description="Residual monomials per (m,n) relation slot"
    )
    first_failing_order: Optional[int] = Field(
        None, description="Lowest polynomial order of a residual monomial"
    )

    @property
    def passed(self) -> bool:
        return self.is_solution


class AxiomReport(BaseModel):
    """Named algebraic identities evaluated on explicit structure constants."""

    name: str = Field(..., description="Structure checked")
    checks: Dict[str, bool] = Field(..., description="Outcome of each identity")
    relations: Dict[str, int] = Field(
        default_factory=dict,
        description="Nonzero entries of each evaluated resolution relation, per slot",
    )

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class TfReport(BaseModel):
    """TF structure check: ð squares to zero and preserves φ."""

    order: int = Field(..., description="Truncation order N")
    bracket_closed: bool = Field(..., description="Whether [ð, ð] vanishes")
    invariant: bool = Field(..., description="Whether the Lie derivative of φ along ð vanishes")
    residual_terms: int = Field(..., description="Monomials left in both residuals")

    @property
    def passed(self) -> bool:
        return self.bracket_closed and self.invariant


class DecomposeReport(BaseModel):
    """Splitting of a structure into minimal and contractible parts."""

    order: int = Field(..., description="Truncation order N")
    minimal_terms: int = Field(..., description="Monomials of the minimal part Φ")
    splitting: Dict[str, int] = Field(
        default_factory=dict, description="Dimensions of H(V,d) and of B in the splitting"
    )
    stages: Dict[int, int] = Field(
        default_factory=dict, description="Monomials removed at each order, keyed by order"
    )
    checks: Dict[str, bool] = Field(..., description="Outcome of each post-condition")

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


class MorphismReport(BaseModel):
    """Conditions for a coordinate map to be a morphism of structures."""

    order: int = Field(..., description="Truncation order N")
    checks: Dict[str, bool] = Field(..., description="Outcome of each condition")
    residual_terms: Dict[str, int] = Field(
        default_factory=dict, description="Monomials left per failing condition"
    )

    @property
    def passed(self) -> bool:
        return all(self.checks.values())
