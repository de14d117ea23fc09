"""
Univariate polynomials in the spectral parameter λ with exact rational coefficients.

Storage is a sparse degree -> Fraction table with no zero values, so equality is
structural and hashing is cheap.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple, Union

Scalar = Union[int, Fraction]

# Degree of the zero polynomial
NEG_INF = float("-inf")

class Poly:
    """Exact polynomial in λ."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        clean: Dict[int, Fraction] = {}
        for degree, value in (coeffs or {}).items():
            if not isinstance(degree, int) or degree < 0:
                raise ValueError(f"Invalid degree {degree!r}")
            value = Fraction(value)
            if value:
                clean[degree] = value
        self._coeffs = clean

    @classmethod
    def _wrap(cls, coeffs: Dict[int, Fraction]) -> Poly:
        # Caller guarantees no zero values
        poly = object.__new__(cls)
        poly._coeffs = coeffs
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> Poly:
        value = Fraction(value)
        return cls._wrap({0: value} if value else {})

    @classmethod
    def zero(cls) -> Poly:
        return cls._wrap({})

    @classmethod
    def one(cls) -> Poly:
        return cls._wrap({0: Fraction(1)})

    @classmethod
    def lam(cls) -> Poly:
        """The variable λ."""
        return cls._wrap({1: Fraction(1)})

    @staticmethod
    def coerce(value: Union["Poly", Scalar]) -> "Poly":
        return value if isinstance(value, Poly) else Poly.constant(value)

    # Inspection

    @property
    def degree(self) -> Union[int, float]:
        return max(self._coeffs) if self._coeffs else NEG_INF

    def coeff(self, degree: int) -> Fraction:
        return self._coeffs.get(degree, Fraction(0))

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def is_constant(self) -> bool:
        return not self._coeffs or (len(self._coeffs) == 1 and 0 in self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # Arithmetic

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = Poly.coerce(other)
        result = dict(self._coeffs)
        for degree, value in other._coeffs.items():
            total = result.get(degree, 0) + value
            if total:
                result[degree] = total
            else:
                result.pop(degree, None)
        return Poly._wrap(result)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap({degree: -value for degree, value in self._coeffs.items()})

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            factor = Fraction(other)
            if not factor:
                return Poly.zero()
            return Poly._wrap({degree: value * factor for degree, value in self._coeffs.items()})
        result: Dict[int, Fraction] = {}
        for da, va in self._coeffs.items():
            for db, vb in other._coeffs.items():
                result[da + db] = result.get(da + db, 0) + va * vb
        return Poly._wrap({degree: value for degree, value in result.items() if value})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = Poly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, at: Scalar) -> Fraction:
        """Horner evaluation at an exact point."""
        if not self._coeffs:
            return Fraction(0)
        at = Fraction(at)
        value = Fraction(0)
        for degree in range(max(self._coeffs), -1, -1):
            value = value * at + self._coeffs.get(degree, 0)
        return value

    def compose_linear(self, a: Scalar, b: Scalar) -> "Poly":
        """Substitute λ -> aλ + b."""
        inner = Poly({1: a, 0: b})
        result = Poly.zero()
        if not self._coeffs:
            return result
        for degree in range(max(self._coeffs), -1, -1):
            result = result * inner + self._coeffs.get(degree, 0)
        return result

    # Comparison and display

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Poly.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for degree, value in sorted(self._coeffs.items(), reverse=True):
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if degree == 0:
                body = str(magnitude)
            else:
                power = "λ" if degree == 1 else f"λ^{degree}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
