"""
Turn exact matrix comparisons into CheckResult records.
"""
from typing import Optional

from core.schemas import CheckResult, Witness
from exact.grid import GridVerdict
from exact.legmatrix import LegMatrix

def equality_check(check: str, anchor: str, lhs: LegMatrix, rhs: LegMatrix, note: Optional[str] = None) -> CheckResult:
    difference = lhs.first_difference(rhs)
    if difference is None:
        return CheckResult(check=check, anchor=anchor, passed=True)
    row, col, lv, rv = difference
    return CheckResult(
        check=check,
        anchor=anchor,
        passed=False,
        witness=Witness(row=row, col=col, lhs=str(lv), rhs=str(rv), note=note),
    )

def commutes_check(check: str, anchor: str, left: LegMatrix, right: LegMatrix, note: Optional[str] = None) -> CheckResult:
    return equality_check(check, anchor, left @ right, right @ left, note)

def grid_check(check: str, anchor: str, verdict: GridVerdict) -> CheckResult:
    return CheckResult(
        check=check,
        anchor=anchor,
        passed=verdict.equal,
        witness=verdict.witness,
        detail=f"{verdict.points_checked} grid points",
    )
