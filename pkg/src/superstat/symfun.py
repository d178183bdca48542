"""Elementary symmetric functions, q-binomials and terminating
(basic) hypergeometric series.

All functions run in exact rational arithmetic when every argument is an
``int`` or ``Fraction`` and in 64-bit floats otherwise.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import DomainError, PoleError, PreconditionError
from .models import Number

logger = logging.getLogger(__name__)

Scalar = Fraction | float

PAIRWISE_THRESHOLD = 64
CONVERGENCE_RTOL = 1e-15
MAX_SERIES_TERMS = 100_000
MAX_BASIC_TERMS = 10_000
FLOAT_ZERO = 1e-10


def as_scalar(value: Any) -> Scalar:
    """Promote ints to Fractions and anything else to float."""
    if isinstance(value, bool):
        raise TypeError("Booleans are not numbers")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int | np.integer):
        return Fraction(int(value))
    return float(value)


def checked_exp(exponent: float) -> float:
    """math.exp for Boltzmann factors.

    Raises:
        PreconditionError: if the result overflows a float
    """
    try:
        return math.exp(exponent)
    except OverflowError as e:
        raise PreconditionError(
            f"exp({exponent:g}) overflows a float; rescale the energies or tau"
        ) from e


def is_exact(*values: Any) -> bool:
    return all(
        isinstance(v, Fraction | int | np.integer) and not isinstance(v, bool)
        for v in values
    )


def _unify(values: Sequence[Any]) -> list[Scalar]:
    """Scalars in one arithmetic: all Fractions, or all floats."""
    scalars = [as_scalar(v) for v in values]
    if all(isinstance(s, Fraction) for s in scalars):
        return scalars
    return [float(s) for s in scalars]


class ElemSymTable(BaseModel):
    """e_0..e_kmax of a tuple of variables."""

    model_config = ConfigDict(frozen=True)

    xs: tuple[Number, ...]
    kmax: int = Field(..., ge=0)
    e: tuple[Number, ...]

    @model_validator(mode="after")
    def starts_at_one(self) -> ElemSymTable:
        if len(self.e) != self.kmax + 1 or self.e[0] != 1:
            raise ValueError("e must hold e_0 = 1 through e_kmax")
        return self

    def __getitem__(self, k: int) -> Scalar:
        if k < 0:
            raise IndexError(k)
        if k > self.kmax:
            raise IndexError(f"e_{k} not tabulated (kmax={self.kmax})")
        return self.e[k]

    def __len__(self) -> int:
        return len(self.e)

    def total(self, kmax: int | None = None) -> Scalar:
        """e_0 + ... + e_kmax."""
        stop = self.kmax if kmax is None else min(kmax, self.kmax)
        if stop < 0:
            return self.e[0] * 0
        return sum(self.e[1 : stop + 1], self.e[0])


class QParams(BaseModel):
    """Ratio q of consecutive equidistant fugacities."""

    model_config = ConfigDict(frozen=True)

    q: Number

    @model_validator(mode="after")
    def in_unit_interval(self) -> QParams:
        if not 0 < self.q <= 1:
            raise ValueError(f"q must lie in (0, 1], got {self.q}")
        return self

    @classmethod
    def from_physical(cls, delta: float, tau: float) -> QParams:
        """q = exp(-delta / tau) for level spacing delta and temperature tau."""
        if tau <= 0:
            raise DomainError(f"Temperature must be positive, got {tau}")
        if delta < 0:
            raise DomainError(f"Level spacing must be nonnegative, got {delta}")
        return cls(q=checked_exp(-delta / tau))


class SeriesValue(BaseModel):
    """Value of a finite product or a (possibly terminating) series."""

    model_config = ConfigDict(frozen=True)

    value: Number
    nterms: int = Field(..., ge=1)
    terminated: bool = True

    def __float__(self) -> float:
        return float(self.value)


def _incremental(values: list[Scalar], kmax: int) -> list[Scalar]:
    exact = not values or isinstance(values[0], Fraction)
    one: Scalar = Fraction(1) if exact else 1.0
    e: list[Scalar] = [one] + [one * 0] * kmax
    for count, x in enumerate(values, start=1):
        for k in range(min(kmax, count), 0, -1):
            e[k] = e[k] + x * e[k - 1]
    return e


def _pairwise(values: list[float], kmax: int) -> list[float]:
    """Truncated product of the (1 + x t) factors, multiplied as a balanced
    tree so rounding errors grow with log n."""
    polys = [np.array([1.0, x])[: kmax + 1] for x in values]
    while len(polys) > 1:
        merged = [
            np.convolve(polys[m], polys[m + 1])[: kmax + 1]
            for m in range(0, len(polys) - 1, 2)
        ]
        if len(polys) % 2:
            merged.append(polys[-1])
        polys = merged
    coeffs = np.zeros(kmax + 1)
    coeffs[: len(polys[0])] = polys[0]
    return [float(c) for c in coeffs]


def elem_sym_table(xs: Sequence[Any], kmax: int) -> ElemSymTable:
    """e_k(xs) for k = 0..kmax from the generating function prod(1 + x_i t).

    Raises:
        PreconditionError: if kmax < 0
    """
    if kmax < 0:
        raise PreconditionError(f"kmax must be nonnegative, got {kmax}")
    values = _unify(xs)
    if values and isinstance(values[0], float) and len(values) > PAIRWISE_THRESHOLD:
        e: list[Scalar] = list(_pairwise([float(v) for v in values], kmax))
    else:
        e = _incremental(values, kmax)
    return ElemSymTable(xs=tuple(values), kmax=kmax, e=tuple(e))


def elem_sym_excluding(xs: Sequence[Any], i: int, kmax: int) -> ElemSymTable:
    """e_k of ``xs`` with the 1-based variable ``i`` removed.

    Computed from scratch on the reduced tuple; downdating the full table
    would subtract large nearly equal numbers.
    """
    if not 1 <= i <= len(xs):
        raise PreconditionError(f"Orbital index must lie in 1..{len(xs)}, got {i}")
    reduced = list(xs[: i - 1]) + list(xs[i:])
    table = elem_sym_table(reduced, kmax)
    if reduced:
        return table
    # keep the arithmetic of the removed variable for an empty tuple
    one = as_scalar(xs[i - 1]) * 0 + 1
    return ElemSymTable(xs=(), kmax=kmax, e=(one,) + (one * 0,) * kmax)


def q_power(q: Scalar, m: int) -> Scalar:
    """q**m; exact for rational q (Fraction pow squares repeatedly)."""
    return q**m


def q_pochhammer(a: Any, q: Any, k: int) -> SeriesValue:
    """(a; q)_k = (1 - a)(1 - a q)...(1 - a q^(k-1))."""
    if k < 0:
        raise PreconditionError(f"k must be nonnegative, got {k}")
    a_, q_ = _unify([a, q])
    value: Scalar = a_ * 0 + 1
    factor = a_
    for _ in range(k):
        value *= 1 - factor
        factor *= q_
    return SeriesValue(value=value, nterms=k + 1, terminated=True)


def _check_q(q: Scalar, *, allow_one: bool = True) -> None:
    upper_ok = q <= 1 if allow_one else q < 1
    if not (q > 0 and upper_ok):
        bound = "(0, 1]" if allow_one else "(0, 1)"
        raise DomainError(f"q must lie in {bound}, got {q}")


def gauss_binomial(n: int, k: int, q: Any) -> Scalar:
    """Gaussian polynomial [n k]_q as a product; C(n, k) at q = 1."""
    q_ = as_scalar(q)
    _check_q(q_)
    if k < 0 or k > n:
        return q_ * 0
    if q_ == 1:
        # the product form is 0/0 here
        return q_ * math.comb(n, k)
    k = min(k, n - k)
    value = q_ * 0 + 1
    for m in range(1, k + 1):
        value *= (1 - q_power(q_, n - k + m)) / (1 - q_power(q_, m))
    return value


def gauss_binomial_pochhammer(
    n: int, k: int, q: Any, *, reflected: bool = False
) -> Scalar:
    """[n k]_q through q-Pochhammer symbols, for 0 < q < 1.

    Direct form (q^(n-k+1); q)_k / (q; q)_k; reflected form
    q^(-k(k-1)/2) (-q^n)^k (q^(-n); q)_k / (q; q)_k.
    """
    q_ = as_scalar(q)
    _check_q(q_, allow_one=False)
    if k < 0 or k > n:
        return q_ * 0
    denominator = q_pochhammer(q_, q_, k).value
    if not reflected:
        return q_pochhammer(q_power(q_, n - k + 1), q_, k).value / denominator
    numerator = q_pochhammer(q_power(q_, -n), q_, k).value
    prefactor = q_power(q_, -(k * (k - 1) // 2)) * (-q_power(q_, n)) ** k
    return prefactor * numerator / denominator


def elem_sym_geometric(
    x: Any, q: Any, n: int, k: int, exclude: int | None = None
) -> Scalar:
    """e_k(x, qx, ..., q^(n-1) x), optionally with orbital ``exclude`` removed.

    Without exclusion this is q^(k(k-1)/2) [n k]_q x^k. With orbital i
    removed it is the alternating sum over l of
    (-1)^l q^(l(i-1) + (k-l)(k-l-1)/2) [n, k-l]_q x^k.
    """
    if k < 0:
        raise PreconditionError(f"k must be nonnegative, got {k}")
    if exclude is not None and not 1 <= exclude <= n:
        raise PreconditionError(f"Orbital index must lie in 1..{n}, got {exclude}")
    x_, q_ = _unify([x, q])
    _check_q(q_)
    x_power = x_**k
    if exclude is None:
        return q_power(q_, k * (k - 1) // 2) * gauss_binomial(n, k, q_) * x_power
    total = x_ * 0
    for l in range(k + 1):  # noqa: E741
        exponent = l * (exclude - 1) + (k - l) * (k - l - 1) // 2
        term = q_power(q_, exponent) * gauss_binomial(n, k - l, q_)
        total += -term if l % 2 else term
    return total * x_power


def _nonpositive_integer(value: Scalar) -> int | None:
    """-value when value is 0, -1, -2, ...; otherwise None."""
    if isinstance(value, Fraction):
        if value.denominator == 1 and value <= 0:
            return int(-value)
        return None
    if float(value).is_integer() and value <= 0:
        return int(-value)
    return None


def hyp2f1_terminating(a: Any, b: Any, c: Any, z: Any) -> SeriesValue:
    """Gauss series 2F1(a, b; c; z) = sum (a)_k (b)_k / ((c)_k k!) z^k.

    Terminating mode (a or b a nonpositive integer) sums exactly
    min(-a, -b) + 1 terms, in rationals when all arguments are rational.
    Otherwise the series is summed for |z| < 1 with mpmath, raising the
    working precision when partial sums lose digits to cancellation.

    Raises:
        PoleError: if (c)_k vanishes before the series terminates
        DomainError: for a non-terminating series with |z| >= 1
    """
    a_, b_, c_, z_ = _unify([a, b, c, z])
    stops = [
        m
        for m in (_nonpositive_integer(a_), _nonpositive_integer(b_))
        if m is not None
    ]
    c_pole = _nonpositive_integer(c_)

    if stops:
        m = min(stops)
        if c_pole is not None and c_pole < m:
            raise PoleError(
                f"(c)_k vanishes at k={c_pole + 1} before the series ends"
            )
        term = z_ * 0 + 1
        total = term
        for k in range(m):
            term = term * (a_ + k) * (b_ + k) / ((c_ + k) * (k + 1)) * z_
            total += term
        return SeriesValue(value=total, nterms=m + 1, terminated=True)

    if c_pole is not None:
        raise PoleError(f"c = {c_} is a pole of the non-terminating series")
    if abs(z_) >= 1:
        raise DomainError(f"Non-terminating 2F1 needs |z| < 1, got z={z_}")
    value, nterms = _hyp2f1_convergent(a_, b_, c_, z_)
    return SeriesValue(value=value, nterms=nterms, terminated=False)


def _mpf(value: Scalar) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _hyp2f1_convergent(
    a: Scalar, b: Scalar, c: Scalar, z: Scalar
) -> tuple[float, int]:
    dps = 30
    while True:
        with mpmath.workdps(dps):
            a_m, b_m, c_m, z_m = (_mpf(v) for v in (a, b, c, z))
            term = mpmath.mpf(1)
            total = mpmath.mpf(1)
            largest = mpmath.mpf(1)
            k = 0
            while True:
                term = term * (a_m + k) * (b_m + k) / ((c_m + k) * (k + 1)) * z_m
                total += term
                largest = max(largest, abs(term))
                k += 1
                if abs(term) < CONVERGENCE_RTOL * abs(total):
                    break
                if k >= MAX_SERIES_TERMS:
                    raise DomainError(
                        f"2F1 did not converge within {MAX_SERIES_TERMS} terms"
                    )
            if total == 0:
                lost = dps
            else:
                lost = int(mpmath.ceil(mpmath.log10(largest / abs(total))))
            if lost + 20 <= dps:
                return float(total), k + 1
        logger.debug("2F1 lost %d digits at dps=%d, retrying", lost, dps)
        dps = lost + 30


def _is_zero(value: Scalar, scale: Scalar) -> bool:
    if isinstance(value, Fraction):
        return value == 0
    return abs(value) <= FLOAT_ZERO * max(1.0, abs(float(scale)))


def basic_2phi1_terminating(a: Any, b: Any, c: Any, q: Any, z: Any) -> SeriesValue:
    """Basic series 2phi1(a, b; c; q, z) = sum (a;q)_k (b;q)_k /
    ((c;q)_k (q;q)_k) z^k, summed until a numerator factor vanishes.

    The numerator is tested before the denominator, so b = c sums to the
    point where b's factor closes the series.

    Raises:
        DomainError: unless 0 < q < 1
        PoleError: if (c;q)_k vanishes first
        PreconditionError: if neither a nor b terminates the series
    """
    a_, b_, c_, q_, z_ = _unify([a, b, c, q, z])
    _check_q(q_, allow_one=False)
    one = q_ * 0 + 1
    if z_ == 0:
        return SeriesValue(value=one, nterms=1, terminated=True)

    term = one
    total = one
    qk = one
    for k in range(MAX_BASIC_TERMS):
        a_factor = 1 - a_ * qk
        b_factor = 1 - b_ * qk
        if _is_zero(a_factor, a_ * qk) or _is_zero(b_factor, b_ * qk):
            return SeriesValue(value=total, nterms=k + 1, terminated=True)
        c_factor = 1 - c_ * qk
        if _is_zero(c_factor, c_ * qk):
            raise PoleError(f"(c;q)_k vanishes at k={k + 1}")
        qk = qk * q_
        term = term * a_factor * b_factor / (c_factor * (1 - qk)) * z_
        total += term
    raise PreconditionError(
        f"2phi1 did not terminate within {MAX_BASIC_TERMS} terms; "
        "a or b must be a power q^-m"
    )
