"""
Sparse square matrices over exact polynomials, annotated with tensor-leg structure.

A LegMatrix acts on (C^d)^{⊗k}. Basis states are ordered lexicographically with
leg 0 most significant, so index = Σ digit_i · d^(k-1-i). Storage is a
dict-of-dicts row -> {col -> Poly}; no zero entry is ever stored.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.exceptions import (
    DimensionMismatchError,
    DuplicateLegError,
    LegIndexError,
    MalformedInputError,
)
from exact.poly import Poly, Scalar

Entry = Union[Poly, int, Fraction]
Rows = Dict[int, Dict[int, Poly]]
Difference = Tuple[int, int, Poly, Poly]

def to_digits(index: int, leg_count: int, leg_dim: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(leg_count):
        index, digit = divmod(index, leg_dim)
        digits.append(digit)
    return tuple(reversed(digits))

def from_digits(digits: Sequence[int], leg_dim: int) -> int:
    index = 0
    for digit in digits:
        index = index * leg_dim + digit
    return index

class LegMatrix:
    """Sparse polynomial matrix on leg_count legs of dimension leg_dim."""

    __slots__ = ("leg_count", "leg_dim", "_rows")

    def __init__(self, leg_count: int, leg_dim: int, entries: Mapping[Tuple[int, int], Entry] | None = None):
        if leg_count < 0 or leg_dim < 1:
            raise MalformedInputError(f"Invalid leg structure: {leg_count} legs of dimension {leg_dim}")
        self.leg_count = leg_count
        self.leg_dim = leg_dim
        dim = leg_dim ** leg_count
        rows: Rows = {}
        for (row, col), value in (entries or {}).items():
            if not (0 <= row < dim and 0 <= col < dim):
                raise MalformedInputError(f"Entry ({row}, {col}) outside a {dim}x{dim} matrix")
            value = Poly.coerce(value)
            if value:
                rows.setdefault(row, {})[col] = value
        self._rows = rows

    @classmethod
    def _from_rows(cls, leg_count: int, leg_dim: int, rows: Rows) -> LegMatrix:
        matrix = object.__new__(cls)
        matrix.leg_count = leg_count
        matrix.leg_dim = leg_dim
        matrix._rows = {row: cols for row, cols in rows.items() if cols}
        return matrix

    # Builders

    @classmethod
    def identity(cls, leg_count: int, leg_dim: int) -> LegMatrix:
        one = Poly.one()
        dim = leg_dim ** leg_count
        return cls._from_rows(leg_count, leg_dim, {i: {i: one} for i in range(dim)})

    @classmethod
    def zeros(cls, leg_count: int, leg_dim: int) -> LegMatrix:
        return cls._from_rows(leg_count, leg_dim, {})

    @classmethod
    def elementary(cls, leg_dim: int, row: int, col: int) -> LegMatrix:
        """One-leg matrix unit e_{row,col}."""
        return cls(1, leg_dim, {(row, col): 1})

    @classmethod
    def from_index_map(cls, leg_count: int, leg_dim: int, mapping: Mapping[int, int]) -> LegMatrix:
        """0/1 matrix with a single 1 at (row, mapping[row]) for each mapped row."""
        one = Poly.one()
        return cls._from_rows(leg_count, leg_dim, {row: {col: one} for row, col in mapping.items()})

    @classmethod
    def diagonal(cls, leg_dim: int, values: Sequence[Scalar]) -> LegMatrix:
        return cls(1, leg_dim, {(i, i): value for i, value in enumerate(values)})

    # Inspection

    @property
    def dim(self) -> int:
        return self.leg_dim ** self.leg_count

    @property
    def nnz(self) -> int:
        return sum(len(cols) for cols in self._rows.values())

    def get(self, row: int, col: int) -> Poly:
        return self._rows.get(row, {}).get(col, Poly.zero())

    def entries(self) -> Iterator[Tuple[int, int, Poly]]:
        for row in sorted(self._rows):
            cols = self._rows[row]
            for col in sorted(cols):
                yield row, col, cols[col]

    def row(self, index: int) -> Dict[int, Poly]:
        return dict(self._rows.get(index, {}))

    def column(self, index: int) -> Dict[int, Poly]:
        """Image of basis vector `index`: row -> coefficient."""
        return {row: cols[index] for row, cols in self._rows.items() if index in cols}

    def is_zero(self) -> bool:
        return not self._rows

    def is_constant(self) -> bool:
        return all(value.is_constant() for cols in self._rows.values() for value in cols.values())

    def max_degree(self) -> int:
        degrees = [value.degree for cols in self._rows.values() for value in cols.values()]
        return int(max(degrees)) if degrees else 0

    def is_permutation_matrix(self) -> bool:
        if len(self._rows) != self.dim:
            return False
        seen = set()
        for cols in self._rows.values():
            if len(cols) != 1:
                return False
            (col, value), = cols.items()
            if value != 1 or col in seen:
                return False
            seen.add(col)
        return True

    def _same_shape(self, other: "LegMatrix") -> None:
        if (self.leg_count, self.leg_dim) != (other.leg_count, other.leg_dim):
            raise DimensionMismatchError(
                f"Leg structure {self.leg_count}x{self.leg_dim} vs {other.leg_count}x{other.leg_dim}"
            )

    # Arithmetic

    def __add__(self, other: "LegMatrix") -> "LegMatrix":
        self._same_shape(other)
        rows = {row: dict(cols) for row, cols in self._rows.items()}
        for row, cols in other._rows.items():
            target = rows.setdefault(row, {})
            for col, value in cols.items():
                total = target[col] + value if col in target else value
                if total:
                    target[col] = total
                else:
                    target.pop(col, None)
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def __neg__(self) -> "LegMatrix":
        return self.scale(-1)

    def __sub__(self, other: "LegMatrix") -> "LegMatrix":
        return self + (-other)

    def scale(self, factor: Union[Poly, Scalar]) -> "LegMatrix":
        factor = Poly.coerce(factor)
        rows: Rows = {}
        for row, cols in self._rows.items():
            scaled = {}
            for col, value in cols.items():
                product_value = value * factor
                if product_value:
                    scaled[col] = product_value
            rows[row] = scaled
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def __mul__(self, factor: Union[Poly, Scalar]) -> "LegMatrix":
        if isinstance(factor, LegMatrix):
            raise TypeError("Use @ for matrix products")
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "LegMatrix") -> "LegMatrix":
        self._same_shape(other)
        rows: Rows = {}
        other_rows = other._rows
        for row, cols in self._rows.items():
            acc: Dict[int, Poly] = {}
            for mid, left in cols.items():
                right_cols = other_rows.get(mid)
                if not right_cols:
                    continue
                for col, right in right_cols.items():
                    term = left * right
                    acc[col] = acc[col] + term if col in acc else term
            cleaned = {col: value for col, value in acc.items() if value}
            if cleaned:
                rows[row] = cleaned
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def transpose(self) -> "LegMatrix":
        rows: Rows = {}
        for row, cols in self._rows.items():
            for col, value in cols.items():
                rows.setdefault(col, {})[row] = value
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LegMatrix):
            return NotImplemented
        return (self.leg_count, self.leg_dim) == (other.leg_count, other.leg_dim) and self._rows == other._rows

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: "LegMatrix") -> Optional[Difference]:
        """First entry (row-major) where the matrices differ, or None if equal."""
        self._same_shape(other)
        if self._rows == other._rows:
            return None
        for row in sorted(set(self._rows) | set(other._rows)):
            mine = self._rows.get(row, {})
            theirs = other._rows.get(row, {})
            if mine == theirs:
                continue
            for col in sorted(set(mine) | set(theirs)):
                lhs = mine.get(col, Poly.zero())
                rhs = theirs.get(col, Poly.zero())
                if lhs != rhs:
                    return row, col, lhs, rhs
        return None

    # Spectral parameter handling

    def coefficient(self, degree: int) -> "LegMatrix":
        """Constant matrix of λ^degree coefficients."""
        rows: Rows = {}
        for row, cols in self._rows.items():
            picked = {}
            for col, value in cols.items():
                c = value.coeff(degree)
                if c:
                    picked[col] = Poly.constant(c)
            rows[row] = picked
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def evaluate(self, at: Scalar) -> "LegMatrix":
        rows: Rows = {}
        for row, cols in self._rows.items():
            values = {}
            for col, value in cols.items():
                v = value.evaluate(at)
                if v:
                    values[col] = Poly.constant(v)
            rows[row] = values
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def compose_linear(self, a: Scalar, b: Scalar) -> "LegMatrix":
        """Substitute λ -> aλ + b in every entry."""
        rows: Rows = {}
        for row, cols in self._rows.items():
            values = {}
            for col, value in cols.items():
                v = value.compose_linear(a, b)
                if v:
                    values[col] = v
            rows[row] = values
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    # Leg operations

    def _check_leg(self, leg: int) -> int:
        if not 0 <= leg < self.leg_count:
            raise LegIndexError(f"Leg {leg} outside a {self.leg_count}-leg operator")
        return self.leg_dim ** (self.leg_count - 1 - leg)

    def partial_transpose(self, leg: int) -> "LegMatrix":
        """Transpose on one leg only: swaps the row and column digit of that leg."""
        weight = self._check_leg(leg)
        d = self.leg_dim
        rows: Rows = {}
        for row, cols in self._rows.items():
            row_digit = (row // weight) % d
            for col, value in cols.items():
                col_digit = (col // weight) % d
                new_row = row + (col_digit - row_digit) * weight
                new_col = col + (row_digit - col_digit) * weight
                rows.setdefault(new_row, {})[new_col] = value
        return LegMatrix._from_rows(self.leg_count, self.leg_dim, rows)

    def partial_trace(self, leg: int) -> "LegMatrix":
        """Contract one leg; the result has one leg fewer."""
        weight = self._check_leg(leg)
        d = self.leg_dim

        def drop(index: int) -> int:
            return (index // (weight * d)) * weight + index % weight

        rows: Rows = {}
        for row, cols in self._rows.items():
            row_digit = (row // weight) % d
            target = rows.setdefault(drop(row), {})
            for col, value in cols.items():
                if (col // weight) % d != row_digit:
                    continue
                new_col = drop(col)
                total = target[new_col] + value if new_col in target else value
                if total:
                    target[new_col] = total
                else:
                    target.pop(new_col, None)
        return LegMatrix._from_rows(self.leg_count - 1, self.leg_dim, rows)

    def __repr__(self) -> str:
        return f"LegMatrix(legs={self.leg_count}, dim={self.leg_dim}, nnz={self.nnz})"

def permutation_operator(leg_dim: int) -> LegMatrix:
    """𝒫 = Σ e_{i,j} ⊗ e_{j,i}: swaps the two legs."""
    if leg_dim < 1:
        raise MalformedInputError("Permutation operator needs leg dimension >= 1")
    mapping = {a * leg_dim + b: b * leg_dim + a for a in range(leg_dim) for b in range(leg_dim)}
    return LegMatrix.from_index_map(2, leg_dim, mapping)

def tensor_embed(op: LegMatrix, positions: Sequence[int], total_legs: int) -> LegMatrix:
    """
    Act with `op` on the named legs and identity elsewhere.

    Leg i of `op` lands on positions[i], so embedding a two-leg operator on (j, i)
    differs from (i, j) unless the operator is leg-symmetric.
    """
    k = op.leg_count
    if len(positions) != k:
        raise DimensionMismatchError(f"{k}-leg operator given {len(positions)} positions")
    if len(set(positions)) != k:
        raise DuplicateLegError(f"Duplicate leg positions {tuple(positions)}")
    for position in positions:
        if not 0 <= position < total_legs:
            raise LegIndexError(f"Leg {position} outside a {total_legs}-leg space")

    d = op.leg_dim
    weights = [d ** (total_legs - 1 - leg) for leg in range(total_legs)]
    op_weights = [weights[position] for position in positions]
    rest = [leg for leg in range(total_legs) if leg not in positions]

    offsets = [
        sum(digit * weights[leg] for digit, leg in zip(digits, rest))
        for digits in product(range(d), repeat=len(rest))
    ]

    def spread(index: int) -> int:
        return sum(digit * weight for digit, weight in zip(to_digits(index, k, d), op_weights))

    local = [(spread(row), spread(col), value) for row, col, value in op.entries()]

    rows: Rows = {}
    for offset in offsets:
        for row, col, value in local:
            rows.setdefault(offset + row, {})[offset + col] = value
    return LegMatrix._from_rows(total_legs, d, rows)

def kron(left: LegMatrix, right: LegMatrix) -> LegMatrix:
    """Tensor product; legs of `left` come first."""
    if left.leg_dim != right.leg_dim:
        raise DimensionMismatchError(f"Leg dimensions {left.leg_dim} and {right.leg_dim} differ")
    shift = right.dim
    rows: Rows = {}
    right_entries = list(right.entries())
    for lrow, lcol, lvalue in left.entries():
        for rrow, rcol, rvalue in right_entries:
            value = lvalue * rvalue
            if value:
                rows.setdefault(lrow * shift + rrow, {})[lcol * shift + rcol] = value
    return LegMatrix._from_rows(left.leg_count + right.leg_count, left.leg_dim, rows)

def tensor_power(op: LegMatrix, count: int) -> LegMatrix:
    result = LegMatrix.identity(0, op.leg_dim)
    for _ in range(count):
        result = kron(result, op)
    return result

def commutator(left: LegMatrix, right: LegMatrix) -> LegMatrix:
    return left @ right - right @ left

def product_of(factors: Sequence[LegMatrix], leg_count: int, leg_dim: int) -> LegMatrix:
    """Ordered product; the empty product is the identity."""
    result = LegMatrix.identity(leg_count, leg_dim)
    for factor in factors:
        result = result @ factor
    return result

def sum_of(terms: Sequence[LegMatrix], leg_count: int, leg_dim: int) -> LegMatrix:
    result = LegMatrix.zeros(leg_count, leg_dim)
    for term in terms:
        result = result + term
    return result

def index_table(matrix: LegMatrix) -> List[int]:
    """Row -> column table of a permutation matrix."""
    if not matrix.is_permutation_matrix():
        raise MalformedInputError("Matrix is not a permutation matrix")
    return [next(iter(matrix.row(row))) for row in range(matrix.dim)]
