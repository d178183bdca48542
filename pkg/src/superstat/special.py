"""Closed forms for degenerate and equidistant orbitals, and figure data.

Degenerate orbitals share one fugacity x, so e_k = C(n, k) x^k and the
partition function is a truncated binomial, expressible through a
terminating 2F1. Equidistant levels eps_i = eps_1 + (i - 1) delta give
geometric fugacities x q^(i-1) and q-binomial sums.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import thermo
from .config import Q_GRID, Q_TOL, Y_GRID
from .errors import ConsistencyError, DomainError, PreconditionError
from .models import (
    DegenerateRoute,
    EquidistantRoute,
    FigureSeries,
    GridSpec,
    Number,
    ThermoParams,
)
from .symfun import (
    Scalar,
    as_scalar,
    basic_2phi1_terminating,
    checked_exp,
    elem_sym_geometric,
    hyp2f1_terminating,
    q_pochhammer,
)

logger = logging.getLogger(__name__)

SPOT_CHECK_RTOL = 1e-9


class DegenerateParams(BaseModel):
    """All n orbitals at one energy: x_i = x = exp(-y)."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    x: Number | None = Field(None, description="Common fugacity")
    y: float | None = Field(None, description="(eps - mu) / tau")

    @model_validator(mode="after")
    def one_of_x_or_y(self) -> DegenerateParams:
        if (self.x is None) == (self.y is None):
            raise ValueError("Give exactly one of x and y")
        if self.x is not None and self.x < 0:
            raise ValueError("x must be nonnegative")
        return self

    @property
    def fugacity(self) -> Scalar:
        if self.x is not None:
            return as_scalar(self.x)
        assert self.y is not None
        return checked_exp(-self.y)

    def thermo_params(self) -> ThermoParams:
        return ThermoParams(p=self.p, fugacities=(self.fugacity,) * self.n)


class EquidistantParams(BaseModel):
    """Levels eps_1 + (i - 1) delta: fugacities x q^(i-1)."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    x: Number = Field(..., description="Fugacity of the lowest orbital")
    q: Number = Field(..., description="exp(-delta / tau)")

    @model_validator(mode="after")
    def ranges(self) -> EquidistantParams:
        if self.x < 0:
            raise ValueError("x must be nonnegative")
        if not 0 < self.q <= 1:
            raise ValueError(f"q must lie in (0, 1], got {self.q}")
        return self

    @classmethod
    def from_physical(
        cls, p: int, n: int, epsilon1: float, delta: float, mu: float, tau: float
    ) -> EquidistantParams:
        """x = exp((mu - eps_1) / tau), q = exp(-delta / tau).

        Raises:
            DomainError: if tau <= 0 or delta <= 0
        """
        if tau <= 0:
            raise DomainError(f"Temperature must be positive, got {tau}")
        if delta <= 0:
            raise DomainError(f"Level spacing must be positive, got {delta}")
        return cls(
            p=p,
            n=n,
            x=checked_exp((mu - epsilon1) / tau),
            q=checked_exp(-delta / tau),
        )

    def fugacities(self) -> tuple[Scalar, ...]:
        x, q = as_scalar(self.x), as_scalar(self.q)
        if isinstance(x, float) or isinstance(q, float):
            x, q = float(x), float(q)
        return tuple(x * q**i for i in range(self.n))

    def thermo_params(self) -> ThermoParams:
        return ThermoParams(p=self.p, fugacities=self.fugacities())

    def degenerate(self) -> DegenerateParams:
        return DegenerateParams(p=self.p, n=self.n, x=self.x)


def _binomial_sum(n: int, p: int, x: Scalar, weight: Callable[[int], int]) -> Scalar:
    return sum(
        (weight(k) * math.comb(n, k) * x**k for k in range(min(p, n) + 1)), x * 0
    )


def degenerate_gpf(
    params: DegenerateParams, route: DegenerateRoute = DegenerateRoute.DIRECT
) -> Scalar:
    """Z(p, n) for equal fugacities.

    direct: sum_{k <= p} C(n, k) x^k;
    additive_2F1: (1 + x)^n - C(n, p+1) x^(p+1) 2F1(1, p-n+1; p+2; -x);
    multiplicative_2F1: (1 + x)^n (1 - C(n, p+1) x^(p+1) 2F1(p+1, n+1; p+2; -x)),
    the Euler transform of the additive form, whose series only converges
    for x < 1.

    Raises:
        DomainError: multiplicative_2F1 with x >= 1
    """
    p, n, x = params.p, params.n, params.fugacity
    if route is DegenerateRoute.MULTIPLICATIVE_2F1 and x >= 1:
        raise DomainError(f"The multiplicative form needs x < 1, got x={x}")
    fermi = (1 + x) ** n
    if p >= n:
        return fermi
    tail = math.comb(n, p + 1) * x ** (p + 1)
    if route is DegenerateRoute.DIRECT:
        return _binomial_sum(n, p, x, lambda k: 1)
    if route is DegenerateRoute.ADDITIVE_2F1:
        series = hyp2f1_terminating(1, p - n + 1, p + 2, -x)
        return fermi - tail * series.value
    series = hyp2f1_terminating(p + 1, n + 1, p + 2, -x)
    return float(fermi) * (1 - float(tail) * float(series.value))


def degenerate_averages(params: DegenerateParams) -> tuple[Scalar, Scalar]:
    """(N, theta) with theta the common occupancy.

    N = sum k C(n, k) x^k / Z and
    theta = x / (1 + x) - C(n - 1, p) x^(p+1) / ((1 + x) Z).
    """
    p, n, x = params.p, params.n, params.fugacity
    z = degenerate_gpf(params)
    nbar = _binomial_sum(n, p, x, lambda k: k) / z
    theta = x / (1 + x) - math.comb(n - 1, p) * x ** (p + 1) / ((1 + x) * z)
    return nbar, theta


def degenerate_N_hypergeometric(params: DegenerateParams) -> Scalar:
    """N = [n x (1+x)^(n-1) - (p+1) C(n, p+1) x^(p+1) 2F1(1, p-n+1; p+1; -x)] / Z."""
    p, n, x = params.p, params.n, params.fugacity
    if p >= n:
        return n * x / (1 + x)
    series = hyp2f1_terminating(1, p - n + 1, p + 1, -x)
    numerator = n * x * (1 + x) ** (n - 1) - (p + 1) * math.comb(
        n, p + 1
    ) * x ** (p + 1) * series.value
    return numerator / degenerate_gpf(params, DegenerateRoute.ADDITIVE_2F1)


def degenerate_theta_bar_ratio(params: DegenerateParams) -> Scalar:
    """theta = x sum_{k < p} C(n-1, k) x^k / Z, a sum of positive terms."""
    p, n, x = params.p, params.n, params.fugacity
    if p == 0:
        return x * 0
    return x * _binomial_sum(n - 1, p - 1, x, lambda k: 1) / degenerate_gpf(params)


def hardcore_boson_N(n: int, y: float) -> float:
    """N(1, n) = n / (e^y + n): at most one particle in n orbitals."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if y >= 0:
        t = n * math.exp(-y)
        return t / (1 + t)
    return n / (math.exp(y) + n)


def equidistant_gpf(
    params: EquidistantParams, route: EquidistantRoute = EquidistantRoute.QBINOMIAL
) -> Scalar:
    """Z(p, n) for fugacities x q^(i-1).

    qbinomial: sum_{k <= p} q^(k(k-1)/2) [n k]_q x^k;
    phi21: 2phi1(q^-n, q^-p; q^-p; q, -q^n x);
    product: (-x; q)_n, only for p >= n.
    q = 1 reduces to the degenerate case.

    Raises:
        PreconditionError: product route with p < n
    """
    p, n = params.p, params.n
    x, q = _unified(params)
    if route is EquidistantRoute.PRODUCT and p < n:
        raise PreconditionError(f"The product form needs p >= n, got p={p}, n={n}")
    if q == 1:
        return degenerate_gpf(params.degenerate())
    if route is EquidistantRoute.QBINOMIAL:
        return sum(
            (elem_sym_geometric(x, q, n, k) for k in range(min(p, n) + 1)), x * 0
        )
    if route is EquidistantRoute.PHI21:
        return basic_2phi1_terminating(q**-n, q**-p, q**-p, q, -(q**n) * x).value
    return q_pochhammer(-x, q, n).value


def _unified(params: EquidistantParams) -> tuple[Scalar, Scalar]:
    x, q = as_scalar(params.x), as_scalar(params.q)
    if isinstance(x, Fraction) and isinstance(q, Fraction):
        return x, q
    return float(x), float(q)


def equidistant_averages(
    params: EquidistantParams,
) -> tuple[Scalar, tuple[Scalar, ...]]:
    """(N, (theta_1, ..., theta_n)) for equidistant levels.

    theta_i = x q^(i-1) sum_{k < p} e_k(excluding orbital i) / Z with the
    excluded sums in q-binomial form.
    """
    p, n = params.p, params.n
    x, q = _unified(params)
    if q == 1:
        nbar, theta = degenerate_averages(params.degenerate())
        return nbar, (theta,) * n
    p_eff = min(p, n)
    e = [elem_sym_geometric(x, q, n, k) for k in range(p_eff + 1)]
    z = sum(e[1:], e[0])
    nbar = sum((k * e[k] for k in range(1, p_eff + 1)), x * 0) / z
    theta = tuple(
        x
        * q ** (i - 1)
        * sum(
            (elem_sym_geometric(x, q, n, k, exclude=i) for k in range(p_eff)), x * 0
        )
        / z
        for i in range(1, n + 1)
    )
    return nbar, theta


def equidistant_N_typical(x: Any, q: Any, n: int) -> Scalar:
    """N(n, n) = x sum_{i < n} q^i / (1 + q^i x)."""
    x_, q_ = _unified(EquidistantParams(p=n, n=n, x=x, q=q))
    return x_ * sum((q_**i / (1 + q_**i * x_) for i in range(n)), x_ * 0)


class EquidistantP1Result(BaseModel):
    """The p = 1 equidistant system and its low-temperature limit."""

    n: int
    q: float
    y: float
    Z: float
    Nbar: float
    theta_bar: list[float]
    low_temperature: bool = Field(
        ..., description="Whether q <= q_tol, so the limits below apply"
    )
    fermi_dirac: float = Field(..., description="1 / (e^y + 1)")
    nbar_deviation: float | None = None
    theta1_deviation: float | None = None
    max_excited_theta: float | None = None


def equidistant_p1(
    n: int,
    q: float,
    *,
    x: float | None = None,
    y: float | None = None,
    q_tol: float = Q_TOL,
) -> EquidistantP1Result:
    """Z = 1 + x S, N = x S / (1 + x S), theta_i = x q^(i-1) / (1 + x S)
    with S = 1 + q + ... + q^(n-1).

    For q <= q_tol the system approaches a single Fermi-Dirac level: the
    deviations of N and theta_1 from 1 / (e^y + 1) and the largest excited
    occupancy are reported.
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if (x is None) == (y is None):
        raise PreconditionError("Give exactly one of x and y")
    if not 0 < q <= 1:
        raise DomainError(f"q must lie in (0, 1], got {q}")
    if x is not None:
        if x <= 0:
            raise DomainError(f"x must be positive, got {x}")
        y = -math.log(x)
    assert y is not None
    x_value = checked_exp(-y)
    s = math.fsum(q**i for i in range(n))
    z = 1 + x_value * s
    theta = [x_value * q ** (i - 1) / z for i in range(1, n + 1)]
    nbar = x_value * s / z
    fermi_dirac = 1 / (math.exp(y) + 1) if y < 700 else 0.0
    low = q <= q_tol
    return EquidistantP1Result(
        n=n,
        q=q,
        y=y,
        Z=z,
        Nbar=nbar,
        theta_bar=theta,
        low_temperature=low,
        fermi_dirac=fermi_dirac,
        nbar_deviation=abs(nbar - fermi_dirac) if low else None,
        theta1_deviation=abs(theta[0] - fermi_dirac) if low else None,
        max_excited_theta=max(theta[1:], default=0.0) if low else None,
    )


def _spot_indices(num: int, count: int = 3) -> list[int]:
    if num <= count:
        return list(range(num))
    return sorted({0, num // 2, num - 1})


def _check_point(label: str, closed: float, reference: Scalar) -> None:
    reference = float(reference)
    if not math.isclose(closed, reference, rel_tol=SPOT_CHECK_RTOL, abs_tol=1e-300):
        raise ConsistencyError(
            f"{label}: closed form {closed!r} differs from enumeration {reference!r}"
        )
    logger.debug("%s: closed form agrees with enumeration (%r)", label, closed)


def _figure_occupancy_vs_y(grid: GridSpec) -> FigureSeries:
    n = 5
    ys = grid.points()
    curves = {
        f"p{p}": [
            float(degenerate_averages(DegenerateParams(p=p, n=n, y=y))[1]) for y in ys
        ]
        for p in range(1, n + 1)
    }
    for idx in _spot_indices(len(ys)):
        for p in range(1, n + 1):
            reference = thermo.occupancies(
                DegenerateParams(p=p, n=n, y=ys[idx]).thermo_params()
            )[0]
            _check_point(f"fig1 p={p} y={ys[idx]}", curves[f"p{p}"][idx], reference)
    return FigureSeries(
        figure_id=1,
        abscissa_name="y",
        abscissa=ys,
        curves=curves,
        metadata={"n": n, "p": list(range(1, n + 1)), "grid": _grid_text(grid)},
    )


def _figure_hardcore_bosons(grid: GridSpec) -> FigureSeries:
    ys = grid.points()
    sizes = range(1, 6)
    curves = {f"n{n}": [hardcore_boson_N(n, y) for y in ys] for n in sizes}
    for idx in _spot_indices(len(ys)):
        for n in sizes:
            reference = thermo.average_N(
                DegenerateParams(p=1, n=n, y=ys[idx]).thermo_params()
            )
            _check_point(f"fig2 n={n} y={ys[idx]}", curves[f"n{n}"][idx], reference)
    return FigureSeries(
        figure_id=2,
        abscissa_name="y",
        abscissa=ys,
        curves=curves,
        metadata={"p": 1, "n": list(sizes), "grid": _grid_text(grid)},
    )


def _figure_equidistant_p1(grid: GridSpec, y: float, q_tol: float) -> FigureSeries:
    n = 5
    qs = grid.points()
    results = [equidistant_p1(n, q, y=y, q_tol=q_tol) for q in qs]
    deviations = [r.nbar_deviation for r in results if r.nbar_deviation is not None]
    curves = {
        f"theta{i}": [result.theta_bar[i - 1] for result in results]
        for i in range(1, n + 1)
    }
    for idx in _spot_indices(len(qs)):
        params = EquidistantParams(p=1, n=n, x=checked_exp(-y), q=qs[idx])
        reference = thermo.occupancies(params.thermo_params())
        for i in range(1, n + 1):
            _check_point(
                f"fig3 theta{i} q={qs[idx]}", curves[f"theta{i}"][idx], reference[i - 1]
            )
    return FigureSeries(
        figure_id=3,
        abscissa_name="q",
        abscissa=qs,
        curves=curves,
        metadata={
            "p": 1,
            "n": n,
            "y": y,
            "grid": _grid_text(grid),
            "q_tol": q_tol,
            "low_temperature_points": len(deviations),
            "max_fermi_dirac_deviation": max(deviations, default=None),
        },
    )


def _grid_text(grid: GridSpec) -> str:
    return f"{grid.start:g}:{grid.stop:g}:{grid.num}"


def figure_data(
    figure_id: int,
    grid: GridSpec | None = None,
    *,
    fig3_y: float = 0.0,
    q_tol: float = Q_TOL,
) -> FigureSeries:
    """Curves behind the three figures.

    1: degenerate occupancy theta vs y for n = 5, p = 1..5;
    2: hard-core boson N(1, n) vs y for n = 1..5;
    3: equidistant theta_i vs q for p = 1, n = 5 at fixed y.
    Each curve is spot-checked against enumeration at three grid points.

    Raises:
        PreconditionError: for an unknown figure id
        ConsistencyError: if a closed form disagrees with enumeration
    """
    if figure_id in (1, 2):
        grid = grid or GridSpec.parse(Y_GRID)
        if figure_id == 1:
            return _figure_occupancy_vs_y(grid)
        return _figure_hardcore_bosons(grid)
    if figure_id == 3:
        grid = grid or GridSpec.parse(Q_GRID)
        if grid.start <= 0 or grid.stop >= 1:
            raise DomainError("Figure 3 needs a q grid inside (0, 1)")
        return _figure_equidistant_p1(grid, fig3_y, q_tol)
    raise PreconditionError(f"Unknown figure id {figure_id}; choose 1, 2 or 3")
