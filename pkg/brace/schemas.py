"""
Pydantic schemas for finite rings, braces and their ideals.
"""
from typing import List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from core.schemas import CheckResult

Table = Tuple[Tuple[int, ...], ...]

def check_table(name: str, table: Table, size: int) -> None:
    if len(table) != size:
        raise ValueError(f"{name} table has {len(table)} rows, expected {size}")
    for i, row in enumerate(table):
        if len(row) != size:
            raise ValueError(f"{name} table row {i} has length {len(row)}, expected {size}")
        for j, value in enumerate(row):
            if not 0 <= value < size:
                raise ValueError(f"{name}[{i}][{j}] = {value} is outside 0..{size - 1}")

class FiniteRing(BaseModel):
    """Ring on {0..size-1} given by its addition and multiplication tables."""
    model_config = ConfigDict(frozen=True)

    size: int
    add: Table
    mul: Table

    @model_validator(mode="after")
    def _well_formed(self) -> "FiniteRing":
        if self.size < 1:
            raise ValueError("size must be at least 1")
        check_table("add", self.add, self.size)
        check_table("mul", self.mul, self.size)
        return self

class FiniteBrace(BaseModel):
    """Brace on {0..size-1}: additive table plus circle table, identity 0 for both."""
    model_config = ConfigDict(frozen=True)

    size: int
    add: Table
    circle: Table

    @model_validator(mode="after")
    def _well_formed(self) -> "FiniteBrace":
        if self.size < 1:
            raise ValueError("size must be at least 1")
        check_table("add", self.add, self.size)
        check_table("circle", self.circle, self.size)
        return self

    def neg(self, a: int) -> int:
        return self.add[a].index(0)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg(b)]

    def sigma(self, a: int, b: int) -> int:
        """σ_a(b) = a∘b − a."""
        return self.sub(self.circle[a][b], a)

class BraceIdeal(BaseModel):
    """Candidate ideal: a subset of brace elements."""
    model_config = ConfigDict(frozen=True)

    elements: Tuple[int, ...]

    @field_validator("elements")
    @classmethod
    def _sorted_unique(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(set(value)))

class RingReport(BaseModel):
    """Exhaustive ring axiom report."""
    abelian_add: CheckResult
    associative_mul: CheckResult
    distributive: CheckResult
    nilpotency_index: Optional[int] = None

    def checks(self) -> List[CheckResult]:
        return [self.abelian_add, self.associative_mul, self.distributive]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks())

class BraceReport(BaseModel):
    """Exhaustive brace axiom report."""
    abelian_add: CheckResult
    circle_group: CheckResult
    compatibility: CheckResult

    def checks(self) -> List[CheckResult]:
        return [self.abelian_add, self.circle_group, self.compatibility]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks())

class IdealReport(BaseModel):
    """Ideal axioms, in the order they are tested."""
    additive_subgroup: CheckResult
    normal_circle_subgroup: CheckResult
    sigma_invariant: CheckResult

    def checks(self) -> List[CheckResult]:
        return [self.additive_subgroup, self.normal_circle_subgroup, self.sigma_invariant]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks())

class QuotientMap(BaseModel):
    """Element -> coset index, with the least element of each coset as representative."""
    model_config = ConfigDict(frozen=True)

    coset_of: Tuple[int, ...]
    representatives: Tuple[int, ...]
