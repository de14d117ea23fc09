"""
Pydantic schemas for set-theoretic solutions and their homomorphisms.
"""
from typing import List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, model_validator

from brace.schemas import Table, check_table
from core.schemas import CheckResult, Witness

class SetSolution(BaseModel):
    """ř(x, y) = (σ_x(y), τ_y(x)) with sigma[x][y] = σ_x(y) and tau[y][x] = τ_y(x)."""
    model_config = ConfigDict(frozen=True)

    name: str = ""
    size: int
    sigma: Table
    tau: Table
    # Brace elements behind each index, for solutions built from a brace
    labels: Optional[Tuple[int, ...]] = None

    @model_validator(mode="after")
    def _well_formed(self) -> "SetSolution":
        if self.size < 1:
            raise ValueError("size must be at least 1")
        check_table("sigma", self.sigma, self.size)
        check_table("tau", self.tau, self.size)
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError(f"{len(self.labels)} labels for {self.size} elements")
        return self

    def apply(self, x: int, y: int) -> Tuple[int, int]:
        return self.sigma[x][y], self.tau[y][x]

    def index_of(self, label: int) -> int:
        """Index of a brace element (identity when the solution carries no labels)."""
        if self.labels is None:
            return label
        return self.labels.index(label)

class SolutionHom(BaseModel):
    """Index table f with ř'(f(x), f(y)) = (f×f)(ř(x, y))."""
    model_config = ConfigDict(frozen=True)

    domain: SetSolution
    codomain: SetSolution
    mapping: Tuple[int, ...]

class HomCheck(BaseModel):
    """Outcome of checking a candidate homomorphism."""
    hom: Optional[SolutionHom] = None
    witness: Optional[Witness] = None

    @property
    def valid(self) -> bool:
        return self.hom is not None

class SolutionReport(BaseModel):
    """Non-degeneracy, involutivity and braid relation, checked exhaustively."""
    nondegenerate: CheckResult
    involutive: CheckResult
    braid: CheckResult

    def checks(self) -> List[CheckResult]:
        return [self.nondegenerate, self.involutive, self.braid]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks())

class RetractionChain(BaseModel):
    """Result of the search for a map onto a Lyubashenko solution."""
    m: Optional[int] = None
    chain: List[SolutionHom] = []
    stage_sizes: List[int] = []

class SolutionFile(BaseModel):
    """On-disk solution format."""
    name: str = ""
    size: int
    sigma: Table
    tau: Optional[Table] = None
    derive_tau_from: Optional[Literal["involutivity"]] = None
