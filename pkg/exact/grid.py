"""
Integer-grid verification of multi-parameter polynomial matrix identities.

Each side is an ordered product of factors A(ℓ(p)) where ℓ is an integer linear form
in the parameters p. If every entry of both sides has degree at most B in each
parameter, agreement on {0..B}^m is equivalent to polynomial identity.
"""
import logging
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel

from core.exceptions import DimensionMismatchError
from core.schemas import Witness
from exact.legmatrix import LegMatrix

logger = logging.getLogger(__name__)

class Factor(NamedTuple):
    """Matrix evaluated at λ = offset + Σ weights[i]·p_i."""
    matrix: LegMatrix
    weights: Tuple[int, ...]
    offset: int = 0

    def value_at(self, point: Sequence[int]) -> int:
        return self.offset + sum(w * p for w, p in zip(self.weights, point))

def at(matrix: LegMatrix, *weights: int, offset: int = 0) -> Factor:
    return Factor(matrix, tuple(weights), offset)

class GridVerdict(BaseModel):
    """Result of a grid comparison."""
    equal: bool
    points_checked: int
    witness: Optional[Witness] = None

def _evaluate_side(
    side: Sequence[Factor],
    point: Tuple[int, ...],
    cache: Dict[Tuple[int, int], LegMatrix],
) -> LegMatrix:
    first = side[0].matrix
    result = LegMatrix.identity(first.leg_count, first.leg_dim)
    for factor in side:
        value = factor.value_at(point)
        key = (id(factor.matrix), value)
        if key not in cache:
            cache[key] = factor.matrix.evaluate(value)
        result = result @ cache[key]
    return result

def grid_verify_identity(
    lhs: Sequence[Factor],
    rhs: Sequence[Factor],
    bound: int,
    parameters: Optional[int] = None,
) -> GridVerdict:
    """Compare both products on every point of {0..bound}^parameters."""
    factors: List[Factor] = list(lhs) + list(rhs)
    if not lhs or not rhs:
        raise DimensionMismatchError("Both sides need at least one factor")
    shape = (factors[0].matrix.leg_count, factors[0].matrix.leg_dim)
    for factor in factors:
        if (factor.matrix.leg_count, factor.matrix.leg_dim) != shape:
            raise DimensionMismatchError(
                f"Factor with {factor.matrix.leg_count}x{factor.matrix.leg_dim} legs in a {shape[0]}x{shape[1]} identity"
            )
    if parameters is None:
        parameters = max(len(factor.weights) for factor in factors)

    cache: Dict[Tuple[int, int], LegMatrix] = {}
    checked = 0
    for point in product(range(bound + 1), repeat=parameters):
        checked += 1
        left = _evaluate_side(lhs, point, cache)
        right = _evaluate_side(rhs, point, cache)
        difference = left.first_difference(right)
        if difference is not None:
            row, col, lv, rv = difference
            logger.info(f"Grid identity fails at point {point}, entry ({row}, {col})")
            return GridVerdict(
                equal=False,
                points_checked=checked,
                witness=Witness(point=list(point), row=row, col=col, lhs=str(lv), rhs=str(rv)),
            )
    return GridVerdict(equal=True, points_checked=checked)
