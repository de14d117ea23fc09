"""
Pydantic schemas shared by every command: check results and run reports.
"""
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field

class Witness(BaseModel):
    """Minimal data reproducing a failed check."""
    model_config = ConfigDict(frozen=True)

    point: Optional[List[int]] = None
    row: Optional[int] = None
    col: Optional[int] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    elements: Optional[List[int]] = None
    note: Optional[str] = None

class CheckResult(BaseModel):
    """Outcome of one verified identity or axiom."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    check: str
    anchor: str
    passed: bool = Field(serialization_alias="pass")
    skipped: bool = False
    witness: Optional[Witness] = None
    detail: Optional[str] = None

    @classmethod
    def skip(cls, check: str, anchor: str, detail: str) -> "CheckResult":
        return cls(check=check, anchor=anchor, passed=True, skipped=True, detail=detail)

    def renamed(self, prefix: str) -> "CheckResult":
        """Copy with the check name qualified by a prefix (corpus entry, site count)."""
        return self.model_copy(update={"check": f"{prefix}/{self.check}"})

class CommandResult(BaseModel):
    """What a command handler hands back to the driver."""
    checks: List[CheckResult] = []
    data: Dict[str, Any] = {}

class Timing(BaseModel):
    """Wall-clock data, kept apart from the byte-stable part of a report."""
    wall_time_s: float

class RunReport(BaseModel):
    """Machine-readable report of one `ybl` invocation."""
    command: str
    inputs: Dict[str, Any]
    checks: List[CheckResult]
    data: Dict[str, Any] = {}
    exit_status: int
    timing: Timing

def all_passed(checks: List[CheckResult]) -> bool:
    return all(check.passed for check in checks)
