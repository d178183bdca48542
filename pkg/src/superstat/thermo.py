"""Grand canonical thermodynamics of A-superstatistics.

Z(p, n) = e_0 + e_1 + ... + e_p of the fugacities. Every quantity is
available through the elementary symmetric functions (the default route),
by enumerating the admissible occupation vectors (the oracle), and in
closed form for p >= n and p = n - 1.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterator, Sequence
from fractions import Fraction
from typing import Any

from .config import BRUTEFORCE_CAP, EXACT_CAP
from .errors import CapacityError, DomainError, PreconditionError
from .models import Route, StateProbability, ThermoParams, ThermoReport
from .symfun import (
    Scalar,
    as_scalar,
    checked_exp,
    elem_sym_excluding,
    elem_sym_table,
)

logger = logging.getLogger(__name__)


def fugacities(params: ThermoParams) -> tuple[Scalar, ...]:
    """x_i as given, or exp((mu_i - eps_i) / tau) from physical data.

    Raises:
        DomainError: if tau <= 0 in physical mode
    """
    if params.fugacities is not None:
        values = [as_scalar(x) for x in params.fugacities]
        if all(isinstance(v, Fraction) for v in values):
            return tuple(values)
        return tuple(float(v) for v in values)
    assert params.energies is not None and params.chemical_potentials is not None
    tau = params.temperature
    if tau is None or tau <= 0:
        raise DomainError(f"Temperature must be positive, got {tau}")
    return tuple(
        checked_exp((float(mu) - float(eps)) / tau)
        for eps, mu in zip(params.energies, params.chemical_potentials, strict=True)
    )


def _prepare(
    params: ThermoParams, *, exact_cap: int = EXACT_CAP
) -> tuple[tuple[Scalar, ...], int]:
    """Fugacities and the effective order min(p, n)."""
    xs = fugacities(params)
    if any(x < 0 for x in xs):
        raise DomainError("Fugacities must be nonnegative")
    if xs and isinstance(xs[0], Fraction) and len(xs) > exact_cap:
        raise CapacityError(
            f"Exact mode is capped at n = {exact_cap} orbitals, got {len(xs)}"
        )
    if params.p > len(xs):
        logger.info(
            "p = %d exceeds n = %d; using the typical case p = n", params.p, len(xs)
        )
    return xs, params.p_effective


def _zero_like(xs: Sequence[Scalar]) -> Scalar:
    return xs[0] * 0 if xs else Fraction(0)


def gpf(params: ThermoParams, *, exact_cap: int = EXACT_CAP) -> Scalar:
    """Z(p, n) = sum_{k <= min(p, n)} e_k(x)."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    return elem_sym_table(xs, p).total()


def admissible_states(n: int, p: int) -> Iterator[tuple[int, ...]]:
    """All theta in {0,1}^n with |theta| <= p, lowest weight first."""
    for k in range(min(p, n) + 1):
        for combo in itertools.combinations(range(n), k):
            theta = [0] * n
            for idx in combo:
                theta[idx] = 1
            yield tuple(theta)


def gibbs_weight(xs: Sequence[Scalar], theta: Sequence[int]) -> Scalar:
    """x_1^theta_1 ... x_n^theta_n."""
    one = _zero_like(xs) + 1
    return math.prod((x for x, bit in zip(xs, theta, strict=True) if bit), start=one)


def _check_bruteforce(n: int, cap: int) -> None:
    if n > cap:
        raise CapacityError(f"Brute force is capped at n = {cap} orbitals, got {n}")


def gpf_bruteforce(
    params: ThermoParams,
    *,
    cap: int = BRUTEFORCE_CAP,
    exact_cap: int = EXACT_CAP,
) -> Scalar:
    """Z as the sum of Gibbs factors over every admissible state."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    _check_bruteforce(len(xs), cap)
    return sum(
        (gibbs_weight(xs, theta) for theta in admissible_states(len(xs), p)),
        _zero_like(xs),
    )


def state_probability(
    params: ThermoParams, theta: Sequence[int], *, exact_cap: int = EXACT_CAP
) -> Scalar:
    """P(p, n; theta) = x^theta / Z; zero for |theta| > p."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    if len(theta) != len(xs) or any(bit not in (0, 1) for bit in theta):
        raise PreconditionError(
            f"theta must be a 0/1 vector of length {len(xs)}, got {tuple(theta)}"
        )
    if sum(theta) > params.p:
        return _zero_like(xs)
    return gibbs_weight(xs, theta) / elem_sym_table(xs, p).total()


def average_N(params: ThermoParams, *, exact_cap: int = EXACT_CAP) -> Scalar:
    """N = sum k e_k / sum e_k over k <= min(p, n)."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    table = elem_sym_table(xs, p)
    weighted = sum((k * table[k] for k in range(1, p + 1)), _zero_like(xs))
    return weighted / table.total()


def average_N_complement(params: ThermoParams, *, exact_cap: int = EXACT_CAP) -> Scalar:
    """The rearrangement N = p - sum (p - k) e_k / Z, which shows N <= p."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    table = elem_sym_table(xs, p)
    deficit = sum(((p - k) * table[k] for k in range(p)), _zero_like(xs))
    return p - deficit / table.total()


def _occupancies(xs: tuple[Scalar, ...], p: int) -> tuple[Scalar, ...]:
    z = elem_sym_table(xs, p).total()
    if p == 0:
        return tuple(_zero_like(xs) for _ in xs)
    return tuple(
        x * elem_sym_excluding(xs, i, p - 1).total() / z
        for i, x in enumerate(xs, start=1)
    )


def occupancies(
    params: ThermoParams, *, exact_cap: int = EXACT_CAP
) -> tuple[Scalar, ...]:
    """theta_i = x_i sum_{k < p} e_k(x without x_i) / Z."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    return _occupancies(xs, p)


def empty_probabilities(
    params: ThermoParams, *, exact_cap: int = EXACT_CAP
) -> tuple[Scalar, ...]:
    """P(theta_i = 0) = 1 - theta_i for every orbital."""
    return tuple(1 - t for t in occupancies(params, exact_cap=exact_cap))


def empty_probability_from_frozen(
    params: ThermoParams, i: int, *, exact_cap: int = EXACT_CAP
) -> Scalar:
    """P(theta_i = 0) as Z with x_i set to 0, divided by Z."""
    xs, p = _prepare(params, exact_cap=exact_cap)
    if not 1 <= i <= len(xs):
        raise PreconditionError(f"Orbital index must lie in 1..{len(xs)}, got {i}")
    frozen = list(xs)
    frozen[i - 1] = _zero_like(xs)
    return elem_sym_table(frozen, p).total() / elem_sym_table(xs, p).total()


def log_derivative_check(params: ThermoParams, i: int, h: float) -> float:
    """|theta_i - x_i d(ln Z)/dx_i| with a central difference of step h.

    Raises:
        DomainError: if h <= 0 or x_i - h <= 0
    """
    xs, p = _prepare(params)
    if not 1 <= i <= len(xs):
        raise PreconditionError(f"Orbital index must lie in 1..{len(xs)}, got {i}")
    floats = [float(x) for x in xs]
    x_i = floats[i - 1]
    if h <= 0 or x_i - h <= 0:
        raise DomainError(f"Need 0 < h < x_i, got h={h}, x_i={x_i}")

    def log_z(value: float) -> float:
        shifted = list(floats)
        shifted[i - 1] = value
        return math.log(float(elem_sym_table(shifted, p).total()))

    derivative = (log_z(x_i + h) - log_z(x_i - h)) / (2 * h)
    theta = float(_occupancies(tuple(floats), p)[i - 1])
    return abs(theta - x_i * derivative)


def _energies(
    params: ThermoParams, energies: Sequence[Any] | None
) -> tuple[Scalar, ...]:
    values = energies if energies is not None else params.energies
    if values is None:
        raise PreconditionError("Orbital energies are required for the average energy")
    if len(values) != params.n:
        raise PreconditionError(f"Expected {params.n} energies, got {len(values)}")
    return tuple(as_scalar(e) for e in values)


def average_energy(
    params: ThermoParams,
    energies: Sequence[Any] | None = None,
    *,
    exact_cap: int = EXACT_CAP,
) -> tuple[tuple[Scalar, ...], Scalar]:
    """Per-orbital energies E_i = eps_i theta_i and their total."""
    eps = _energies(params, energies)
    per_orbital = tuple(
        e * t
        for e, t in zip(eps, occupancies(params, exact_cap=exact_cap), strict=True)
    )
    return per_orbital, sum(per_orbital[1:], per_orbital[0])


def deviation_p_n_minus_1(
    xs: Sequence[Any], energies: Sequence[Any] | None = None
) -> tuple[tuple[Scalar, ...], Scalar, Scalar | None]:
    """Averages at p = n - 1 from the Fermi occupancies t_j = x_j / (1 + x_j).

    With P = t_1 t_2 ... t_n:
    theta_i = (t_i - P) / (1 - P), N = (sum t - n P) / (1 - P) and
    E = (sum eps t - (sum eps) P) / (1 - P).
    """
    if not xs:
        raise PreconditionError("At least one orbital is required")
    values = [as_scalar(x) for x in xs]
    if not all(isinstance(v, Fraction) for v in values):
        values = [float(v) for v in values]
    fermi = [x / (1 + x) for x in values]
    product = math.prod(fermi[1:], start=fermi[0])
    scale = 1 - product
    theta = tuple((t - product) / scale for t in fermi)
    nbar = (sum(fermi[1:], fermi[0]) - len(fermi) * product) / scale
    ebar = None
    if energies is not None:
        eps = [as_scalar(e) for e in energies]
        if len(eps) != len(values):
            raise PreconditionError(f"Expected {len(values)} energies, got {len(eps)}")
        weighted = sum((e * t for e, t in zip(eps, fermi, strict=True)), values[0] * 0)
        ebar = (weighted - sum(eps, values[0] * 0) * product) / scale
    return theta, nbar, ebar


def _report(
    params: ThermoParams,
    route: Route,
    z: Scalar,
    theta: Sequence[Scalar],
    nbar: Scalar,
    probabilities: list[StateProbability] | None,
) -> ThermoReport:
    ebar = None
    if params.energies is not None:
        eps = [as_scalar(e) for e in params.energies]
        ebar = sum((e * t for e, t in zip(eps, theta, strict=True)), z * 0)
    return ThermoReport(
        p=params.p,
        n=params.n,
        route=route,
        clamped=params.p > params.n,
        Z=z,
        Nbar=nbar,
        theta_bar=list(theta),
        Ebar=ebar,
        probabilities=probabilities,
    )


def thermo_report(
    params: ThermoParams,
    route: Route = Route.SYMFUN,
    *,
    include_probabilities: bool = False,
    exact_cap: int = EXACT_CAP,
    bruteforce_cap: int = BRUTEFORCE_CAP,
) -> ThermoReport:
    """Z, N, theta_i and E (when energies are known) by the chosen route.

    Raises:
        PreconditionError: closed_form with p < n - 1
        CapacityError: brute force or probabilities beyond the enumeration cap
    """
    xs, p = _prepare(params, exact_cap=exact_cap)
    n = len(xs)
    zero = _zero_like(xs)

    if route is Route.BRUTEFORCE:
        _check_bruteforce(n, bruteforce_cap)
        z = zero
        nbar_w = zero
        theta_w = [zero] * n
        for theta in admissible_states(n, p):
            weight = gibbs_weight(xs, theta)
            z += weight
            nbar_w += sum(theta) * weight
            theta_w = [
                acc + bit * weight
                for acc, bit in zip(theta_w, theta, strict=True)
            ]
        occupancy = [w / z for w in theta_w]
        nbar = nbar_w / z
    elif route is Route.SYMFUN:
        table = elem_sym_table(xs, p)
        z = table.total()
        nbar = sum((k * table[k] for k in range(1, p + 1)), zero) / z
        occupancy = list(_occupancies(xs, p))
    elif route is Route.CLOSED_FORM:
        fermi_z = math.prod((1 + x for x in xs), start=zero + 1)
        if p == n:
            z = fermi_z
            occupancy = [x / (1 + x) for x in xs]
            nbar = sum(occupancy, zero)
        elif p == n - 1:
            z = fermi_z - math.prod(xs, start=zero + 1)
            theta_dev, nbar, _ = deviation_p_n_minus_1(xs)
            occupancy = list(theta_dev)
        else:
            raise PreconditionError(
                f"Closed forms cover p >= n and p = n - 1, got p={params.p}, n={n}"
            )
    else:
        raise PreconditionError(f"Unknown route {route!r}")

    probabilities = None
    if include_probabilities:
        _check_bruteforce(n, bruteforce_cap)
        probabilities = [
            StateProbability(theta=theta, probability=gibbs_weight(xs, theta) / z)
            for theta in admissible_states(n, p)
        ]
    return _report(params, route, z, occupancy, nbar, probabilities)


def sweep(
    params: ThermoParams,
    temperatures: Sequence[float],
    route: Route = Route.SYMFUN,
    **kwargs: Any,
) -> list[ThermoReport]:
    """Reports over a temperature grid; needs energies and chemical potentials."""
    if params.energies is None or params.chemical_potentials is None:
        raise PreconditionError(
            "A temperature sweep needs energies and chemical potentials"
        )
    reports = []
    for tau in temperatures:
        point = params.model_copy(
            update={"temperature": float(tau), "fugacities": None}
        )
        reports.append(thermo_report(point, route, **kwargs))
    return reports
