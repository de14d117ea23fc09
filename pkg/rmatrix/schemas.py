"""
Schemas for R-matrix bundles and their verification reports.
"""
from typing import List
from pydantic import BaseModel, ConfigDict

from core.schemas import CheckResult
from exact.legmatrix import LegMatrix
from solution.schemas import SetSolution

class RBundle(BaseModel):
    """ř, r = 𝒫ř, 𝒫, Ř(λ) = λř + 𝕀 and R(λ) = λr + 𝒫 for one solution."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sol: SetSolution
    check_const: LegMatrix
    r_const: LegMatrix
    perm: LegMatrix
    check_spec: LegMatrix
    r_spec: LegMatrix

    @property
    def leg_dim(self) -> int:
        return self.sol.size

class SpectralReport(BaseModel):
    """Spectral-parameter identities of one bundle."""
    ybe_braid: CheckResult
    ybe_standard: CheckResult
    unitarity: CheckResult
    crossing: CheckResult
    t1t2: CheckResult
    transposed_perm: List[CheckResult]

    def checks(self) -> List[CheckResult]:
        return [self.ybe_braid, self.ybe_standard, self.unitarity, self.crossing, self.t1t2, *self.transposed_perm]
