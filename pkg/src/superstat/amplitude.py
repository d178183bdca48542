"""Exact signed square roots of nonnegative rationals.

Every matrix entry of the Jacobson generators, their quasi-Fermi rescalings
and the Fermi operators has the form ``sign * sqrt(radicand)`` with a rational
radicand. Products of such numbers stay in the same form. Sums do when both
radicands are rational multiples of the same surd, which covers every
anticommutator and bracket the algebra produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InexactAdditionError

Rational = int | Fraction


def _rational_sqrt(value: Fraction) -> Fraction | None:
    """Return the rational square root of ``value`` or None if irrational."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root != value.numerator:
        return None
    if den_root * den_root != value.denominator:
        return None
    return Fraction(num_root, den_root)


def _sign(value: Rational) -> int:
    return (value > 0) - (value < 0)


@dataclass(frozen=True, slots=True)
class Amplitude:
    """The real number ``sign * sqrt(radicand)``.

    Canonical form: ``sign == 0`` exactly when ``radicand == 0``.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        radicand = Fraction(self.radicand)
        if radicand < 0:
            raise ValueError(f"Radicand must be nonnegative, got {radicand}")
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"Sign must be -1, 0 or +1, got {self.sign}")
        if radicand == 0 or self.sign == 0:
            object.__setattr__(self, "sign", 0)
            radicand = Fraction(0)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def _canonical(cls, sign: int, radicand: Fraction) -> Amplitude:
        """Skip validation for a pair already in canonical form."""
        amplitude = object.__new__(cls)
        object.__setattr__(amplitude, "sign", sign)
        object.__setattr__(amplitude, "radicand", radicand)
        return amplitude

    @classmethod
    def zero(cls) -> Amplitude:
        return _ZERO

    @classmethod
    def one(cls) -> Amplitude:
        return cls(1, Fraction(1))

    @classmethod
    def sqrt(cls, radicand: Rational, sign: int = 1) -> Amplitude:
        """``sign * sqrt(radicand)``."""
        return cls(sign, Fraction(radicand))

    @classmethod
    def from_rational(cls, value: Rational) -> Amplitude:
        """Embed a rational number ``r`` as ``sign(r) * sqrt(r**2)``."""
        value = Fraction(value)
        return cls(_sign(value), value * value)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def rational_value(self) -> Fraction | None:
        """The value as a rational, or None when it is a genuine surd."""
        root = _rational_sqrt(self.radicand)
        if root is None:
            return None
        return self.sign * root

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def __neg__(self) -> Amplitude:
        return Amplitude._canonical(-self.sign, self.radicand)

    def __mul__(self, other: object) -> Amplitude:
        if isinstance(other, Amplitude):
            sign = self.sign * other.sign
            if sign == 0:
                return _ZERO
            return Amplitude._canonical(sign, self.radicand * other.radicand)
        if isinstance(other, int | Fraction):
            return self * Amplitude.from_rational(other)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other: object) -> Amplitude:
        if isinstance(other, int | Fraction):
            other = Amplitude.from_rational(other)
        if not isinstance(other, Amplitude):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if other.radicand == self.radicand:
            ratio: Fraction | None = Fraction(1)
        else:
            ratio = _rational_sqrt(other.radicand / self.radicand)
        if ratio is None:
            raise InexactAdditionError(
                f"Cannot add sqrt({self.radicand}) and sqrt({other.radicand}) exactly"
            )
        # self + other = (s1 + s2 * ratio) * sqrt(self.radicand)
        coefficient = self.sign + other.sign * ratio
        if coefficient == 0:
            return _ZERO
        return Amplitude._canonical(
            _sign(coefficient), coefficient * coefficient * self.radicand
        )

    __radd__ = __add__

    def __sub__(self, other: object) -> Amplitude:
        if isinstance(other, int | Fraction):
            other = Amplitude.from_rational(other)
        if not isinstance(other, Amplitude):
            return NotImplemented
        return self + (-other)

    def __str__(self) -> str:
        rational = self.rational_value()
        if rational is not None:
            return str(rational)
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}sqrt({self.radicand})"


_ZERO = Amplitude(0, Fraction(0))
