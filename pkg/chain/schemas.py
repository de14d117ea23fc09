"""
Schemas for periodic chains: the cached transfer-matrix data and its reports.
"""
from typing import Dict, List
from pydantic import BaseModel, ConfigDict

from core.schemas import CheckResult
from exact.legmatrix import LegMatrix, tensor_embed
from rmatrix.schemas import RBundle
from solution.schemas import SetSolution

class ChainSystem(BaseModel):
    """A solution on N periodic sites with monodromy, charges t^(k) and H^(k)."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    sol: SetSolution
    sites: int
    bundle: RBundle
    monodromy: LegMatrix
    t_coeffs: List[LegMatrix]
    shift: LegMatrix
    hams: List[LegMatrix]

    @property
    def leg_dim(self) -> int:
        return self.sol.size

    @property
    def dim(self) -> int:
        return self.leg_dim ** self.sites

    def t(self, k: int) -> LegMatrix:
        return self.t_coeffs[k]

    def ham(self, k: int) -> LegMatrix:
        """H^(k) for 1 <= k <= N."""
        return self.hams[k - 1]

    def check_op(self, a: int, b: int) -> LegMatrix:
        """ř acting on sites a, b (1-based, in subscript order)."""
        return tensor_embed(self.bundle.check_const, (a - 1, b - 1), self.sites)

    def identity(self) -> LegMatrix:
        return LegMatrix.identity(self.sites, self.leg_dim)

class ClosedFormReport(BaseModel):
    """Independent rebuilds of the transfer-matrix closed forms."""
    tN: CheckResult
    hNm1: CheckResult
    hNm2: CheckResult
    h1: CheckResult
    t0: CheckResult

    def checks(self) -> List[CheckResult]:
        return [self.tN, self.hNm1, self.hNm2, self.h1, self.t0]

class ChainSummary(BaseModel):
    """CLI-facing description of one chain."""
    sites: int
    dim: int
    commuting_pairs_checked: int
    closed_forms: Dict[str, bool] = {}
