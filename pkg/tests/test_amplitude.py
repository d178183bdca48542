"""Tests for exact surd arithmetic."""

from fractions import Fraction

import pytest

from superstat.amplitude import Amplitude
from superstat.errors import InexactAdditionError


class TestAmplitude:
    """Test Amplitude construction and arithmetic."""

    def test_canonical_zero(self):
        """A zero radicand or sign collapses to the canonical zero."""
        assert Amplitude(1, Fraction(0)) == Amplitude.zero()
        assert Amplitude(0, Fraction(5)) == Amplitude.zero()
        assert Amplitude.zero().is_zero

    def test_invalid_construction(self):
        """Negative radicands and bad signs are rejected."""
        with pytest.raises(ValueError):
            Amplitude(1, Fraction(-1))
        with pytest.raises(ValueError):
            Amplitude(2, Fraction(1))

    def test_from_rational(self):
        """Rationals embed as sign * sqrt(r^2)."""
        a = Amplitude.from_rational(Fraction(-3, 2))
        assert a.sign == -1
        assert a.radicand == Fraction(9, 4)
        assert a.rational_value() == Fraction(-3, 2)

    def test_multiplication(self):
        """sqrt(2) * sqrt(2) = 2 and signs multiply."""
        root2 = Amplitude.sqrt(2)
        assert (root2 * root2).rational_value() == 2
        assert (root2 * -root2).rational_value() == -2
        assert (root2 * 3).radicand == 18

    def test_commensurable_addition(self):
        """sqrt(2) + sqrt(8) = sqrt(18) = 3 sqrt(2)."""
        total = Amplitude.sqrt(2) + Amplitude.sqrt(8)
        assert total == Amplitude.sqrt(18)

    def test_cancellation(self):
        """sqrt(3) - sqrt(3) is exactly zero."""
        assert (Amplitude.sqrt(3) - Amplitude.sqrt(3)).is_zero

    def test_mixed_signs(self):
        """sqrt(8) - sqrt(2) = sqrt(2)."""
        assert Amplitude.sqrt(8) - Amplitude.sqrt(2) == Amplitude.sqrt(2)
        assert Amplitude.sqrt(2) - Amplitude.sqrt(8) == Amplitude.sqrt(2, -1)

    def test_incommensurable_addition_raises(self):
        """sqrt(2) + sqrt(3) has no exact single-surd form."""
        with pytest.raises(InexactAdditionError):
            Amplitude.sqrt(2) + Amplitude.sqrt(3)

    def test_rational_operands(self):
        """Adding rationals to rational amplitudes stays exact."""
        assert (Amplitude.one() + Fraction(1, 2)).rational_value() == Fraction(3, 2)
        assert (1 + Amplitude.one()).rational_value() == 2

    def test_float_and_str(self):
        """Float conversion and readable strings."""
        assert float(Amplitude.sqrt(Fraction(1, 4), -1)) == -0.5
        assert str(Amplitude.sqrt(2)) == "sqrt(2)"
        assert str(Amplitude.sqrt(2, -1)) == "-sqrt(2)"
        assert str(Amplitude.from_rational(Fraction(1, 3))) == "1/3"
