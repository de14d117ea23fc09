"""
Pydantic schemas for transfer-matrix symmetries and their reports.
"""
from fractions import Fraction
from typing import List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

from core.schemas import CheckResult, Witness

class DiagonalSymmetry(BaseModel):
    """M = Σ α_x e_{x,f(x)} for an automorphism f and nonzero rational weights α."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    f: Tuple[int, ...]
    alpha: Tuple[Fraction, ...]

    @field_validator("alpha", mode="before")
    @classmethod
    def _rational(cls, value) -> Tuple[Fraction, ...]:
        weights = tuple(Fraction(v) for v in value)
        if any(w == 0 for w in weights):
            raise ValueError("every α_x must be nonzero")
        return weights

    @field_serializer("alpha")
    def _alpha_strings(self, alpha: Tuple[Fraction, ...]) -> List[str]:
        return [str(a) for a in alpha]

    def describe(self) -> str:
        return f"M(f={list(self.f)}, α=[{', '.join(str(a) for a in self.alpha)}])"

class CocycleSolution(BaseModel):
    """Admissible weights: exponent lattice data plus concrete rational instantiations."""
    automorphism: Tuple[int, ...]
    relation_rank: int
    free_rank: int
    torsion: List[int] = []
    kernel_basis: List[List[int]] = []
    instantiations: List[DiagonalSymmetry] = []
    sign_characters: List[DiagonalSymmetry] = []

    def symmetries(self) -> List[DiagonalSymmetry]:
        return [*self.instantiations, *self.sign_characters]

class SymmetryEntry(BaseModel):
    """Commutation of one generator with every charge t^(k), k = 0..N."""
    generator: str
    kind: str
    anchor: str
    per_k: List[bool]
    # Charges the statement covers; the others are recorded only
    asserted: List[int]
    witness: Optional[Witness] = None

    @property
    def passed(self) -> bool:
        return all(self.per_k[k] for k in self.asserted)

    def to_check(self) -> CheckResult:
        flags = "".join("1" if ok else "0" for ok in self.per_k)
        return CheckResult(
            check=self.kind,
            anchor=self.anchor,
            passed=self.passed,
            witness=self.witness,
            detail=f"{self.generator}; per_k={flags}",
        )

class SymmetryReport(BaseModel):
    """Per-chain symmetry findings: two-site preconditions plus one entry per generator."""
    sites: int
    kind: str
    preconditions: List[CheckResult] = []
    entries: List[SymmetryEntry] = []

    def checks(self) -> List[CheckResult]:
        return [*self.preconditions, *(entry.to_check() for entry in self.entries)]

class LiftReport(BaseModel):
    """(B⊗B)R = R(B⊗B), its monodromy lift, and [B^⊗N, t^(k)] as data."""
    rsym: CheckResult
    tsym: CheckResult
    per_k: List[bool] = []

    def checks(self) -> List[CheckResult]:
        return [self.rsym, self.tsym]
