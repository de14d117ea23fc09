"""
Schemas for quantum-algebra relations and the reports built from them.

Generators and relations are plain named tuples: thousands are generated per
solution and they are hashed and compared constantly. Reports are pydantic models.
"""
from typing import List, Literal, NamedTuple, Tuple
from pydantic import BaseModel

from core.schemas import CheckResult, Witness

class QAGenerator(NamedTuple):
    """L^(level)_{z,w}."""
    z: int
    w: int
    level: int

    def __str__(self) -> str:
        return f"L^({self.level})_{{{self.z},{self.w}}}"

class Term(NamedTuple):
    """coef · left·right, an order-preserving formal product."""
    coef: int
    left: QAGenerator
    right: QAGenerator

class QARelation(NamedTuple):
    """Q − P for the tag (x, j, y, i, n, m)."""
    tag: Tuple[int, int, int, int, int, int]
    terms: Tuple[Term, ...]

class Deg2Class(NamedTuple):
    """Canonical pair of a degree-2 word in the structure algebra."""
    u: int
    v: int

RepKind = Literal["constant", "tensor", "graded", "linearPoly"]

class RelationComparison(BaseModel):
    """Two relation families compared tag by tag, modulo an overall sign."""
    expected_count: int
    actual_count: int
    missing_tags: List[List[int]] = []
    extra_tags: List[List[int]] = []
    mismatched_tags: List[List[int]] = []

    @property
    def matched(self) -> bool:
        return not (self.missing_tags or self.extra_tags or self.mismatched_tags)

    def to_check(self, check: str, anchor: str) -> CheckResult:
        witness = None
        if not self.matched:
            first = (self.mismatched_tags or self.missing_tags or self.extra_tags)[0]
            witness = Witness(
                elements=first,
                note=f"{len(self.mismatched_tags)} mismatched, {len(self.missing_tags)} missing, {len(self.extra_tags)} extra",
            )
        return CheckResult(
            check=check,
            anchor=anchor,
            passed=self.matched,
            witness=witness,
            detail=f"{self.actual_count} relations against {self.expected_count}",
        )

class RepFailure(BaseModel):
    tag: List[int]
    residue: str

class RepReport(BaseModel):
    """Images of the defining relations under one structure-algebra representation."""
    kind: RepKind
    structure_nf: bool = True
    relations_checked: int
    failure_count: int = 0
    failures: List[RepFailure] = []

    def to_check(self) -> CheckResult:
        first = self.failures[0] if self.failures else None
        return CheckResult(
            check=f"rep_{self.kind}" + ("" if self.structure_nf else "_ablated"),
            anchor="every defining relation maps to 0 in A⊗A",
            passed=self.failure_count == 0,
            witness=Witness(elements=first.tag, lhs=first.residue, rhs="0") if first else None,
            detail=f"{self.relations_checked} relations, {self.failure_count} nonzero images",
        )

class InduceReport(BaseModel):
    """Defining relations of the domain pushed through an index map."""
    domain: str
    codomain: str
    mapping: List[int]
    relations_mapped: int
    failed_tags: List[List[int]] = []

    def to_check(self) -> CheckResult:
        return CheckResult(
            check="induce_hom",
            anchor="L^(k)_{x,y} ↦ L^(k)_{f(x),f(y)} maps relations to relations",
            passed=not self.failed_tags,
            witness=Witness(elements=self.failed_tags[0], note="image is not the codomain relation") if self.failed_tags else None,
            detail=f"{self.domain} -> {self.codomain}, {self.relations_mapped} relations",
        )

class Level01Report(BaseModel):
    """Level-0 and level-1 consequences of the exchange relation."""
    exchange: CheckResult
    gl: CheckResult
    rtt: CheckResult
    exchange_residues: int = 0
    level1_relations: List[str] = []

    def checks(self) -> List[CheckResult]:
        return [self.exchange, self.gl, self.rtt]
