"""Tests for the degenerate and equidistant special cases and figure data."""

import math
from fractions import Fraction

import pytest

from superstat import thermo
from superstat.errors import DomainError, PreconditionError
from superstat.models import DegenerateRoute, EquidistantRoute, GridSpec
from superstat.special import (
    DegenerateParams,
    EquidistantParams,
    degenerate_averages,
    degenerate_gpf,
    degenerate_N_hypergeometric,
    degenerate_theta_bar_ratio,
    equidistant_averages,
    equidistant_gpf,
    equidistant_N_typical,
    equidistant_p1,
    figure_data,
    hardcore_boson_N,
)

HALF = Fraction(1, 2)
Y_POINTS = [k / 10 for k in range(-50, 51)]


def _fermi_dirac(y: float) -> float:
    return 1 / (math.exp(y) + 1)


class TestDegenerate:
    """Test equal fugacities."""

    def test_direct_sum(self):
        assert degenerate_gpf(DegenerateParams(p=2, n=5, x=1)) == 16

    def test_additive_route(self):
        params = DegenerateParams(p=2, n=3, x=1)
        assert degenerate_gpf(params, DegenerateRoute.ADDITIVE_2F1) == 7
        assert degenerate_gpf(params) == 7

    def test_typical_case(self):
        params = DegenerateParams(p=5, n=5, x=1)
        assert degenerate_gpf(params) == 32
        assert degenerate_gpf(params, DegenerateRoute.ADDITIVE_2F1) == 32
        small = DegenerateParams(p=5, n=5, x=HALF)
        assert degenerate_gpf(small, DegenerateRoute.MULTIPLICATIVE_2F1) == (
            pytest.approx(float(HALF + 1) ** 5)
        )

    def test_averages(self):
        params = DegenerateParams(p=2, n=5, x=1)
        nbar, theta = degenerate_averages(params)
        assert nbar == Fraction(25, 16)
        assert theta == Fraction(5, 16)
        assert degenerate_theta_bar_ratio(params) == theta
        assert degenerate_N_hypergeometric(params) == nbar

    @pytest.mark.parametrize("x", [0.1, 0.5, 0.9])
    def test_multiplicative_route(self, x):
        params = DegenerateParams(p=2, n=5, x=x)
        direct = degenerate_gpf(params)
        assert degenerate_gpf(params, DegenerateRoute.MULTIPLICATIVE_2F1) == (
            pytest.approx(direct, rel=1e-9)
        )

    @pytest.mark.parametrize("x", [1, 2.5])
    def test_multiplicative_needs_small_x(self, x):
        with pytest.raises(DomainError):
            degenerate_gpf(
                DegenerateParams(p=2, n=5, x=x), DegenerateRoute.MULTIPLICATIVE_2F1
            )

    @pytest.mark.parametrize("n", range(1, 7))
    def test_against_enumeration(self, n):
        x = Fraction(2, 3)
        for p in range(n + 2):
            params = DegenerateParams(p=p, n=n, x=x)
            reference = thermo.thermo_report(params.thermo_params())
            assert degenerate_gpf(params) == reference.Z
            assert degenerate_gpf(params, DegenerateRoute.ADDITIVE_2F1) == reference.Z
            nbar, theta = degenerate_averages(params)
            assert nbar == reference.Nbar
            assert theta == reference.theta_bar[0]
            assert degenerate_N_hypergeometric(params) == reference.Nbar
            assert degenerate_theta_bar_ratio(params) == theta

    @pytest.mark.parametrize("x", [Fraction(1, 100), 1, 100, 10**6])
    def test_saturation_bound(self, x):
        """theta <= p / n, approached as x grows."""
        for n in range(1, 8):
            for p in range(1, n + 1):
                theta = degenerate_averages(DegenerateParams(p=p, n=n, x=x))[1]
                assert theta <= Fraction(p, n)
                if x == 10**6:
                    assert Fraction(p, n) - theta < Fraction(1, 10**4)

    def test_y_parameterization(self):
        params = DegenerateParams(p=1, n=1, y=0.0)
        assert params.fugacity == 1.0
        assert degenerate_averages(params)[1] == pytest.approx(0.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            DegenerateParams(p=1, n=2)
        with pytest.raises(ValueError):
            DegenerateParams(p=1, n=2, x=1, y=0.0)
        with pytest.raises(ValueError):
            DegenerateParams(p=1, n=2, x=-1)


class TestHardcoreBosons:
    """Test N(1, n)."""

    def test_reference_values(self):
        assert hardcore_boson_N(1, 0.0) == pytest.approx(0.5)
        assert hardcore_boson_N(5, 0.0) == pytest.approx(5 / 6)

    def test_extreme_arguments(self):
        assert hardcore_boson_N(3, 800.0) == 0.0
        assert hardcore_boson_N(3, -800.0) == 1.0

    def test_needs_orbitals(self):
        with pytest.raises(PreconditionError):
            hardcore_boson_N(0, 0.0)


class TestEquidistant:
    """Test fugacities x q^(i-1)."""

    @pytest.mark.parametrize(
        "route", [EquidistantRoute.QBINOMIAL, EquidistantRoute.PHI21]
    )
    def test_single_particle(self, route):
        params = EquidistantParams(p=1, n=2, x=1, q=HALF)
        assert equidistant_gpf(params, route) == Fraction(5, 2)
        assert thermo.gpf_bruteforce(params.thermo_params()) == Fraction(5, 2)

    def test_product_route(self):
        params = EquidistantParams(p=2, n=2, x=1, q=HALF)
        assert equidistant_gpf(params, EquidistantRoute.PRODUCT) == 3

    def test_product_needs_typical(self):
        params = EquidistantParams(p=1, n=2, x=1, q=1)
        with pytest.raises(PreconditionError):
            equidistant_gpf(params, EquidistantRoute.PRODUCT)

    def test_q_one_is_degenerate(self):
        assert equidistant_gpf(EquidistantParams(p=2, n=5, x=1, q=1)) == 16
        nbar, theta = equidistant_averages(EquidistantParams(p=2, n=5, x=1, q=1))
        assert nbar == Fraction(25, 16)
        assert theta == (Fraction(5, 16),) * 5

    def test_averages(self):
        nbar, theta = equidistant_averages(EquidistantParams(p=2, n=2, x=1, q=HALF))
        assert nbar == Fraction(5, 6)
        assert equidistant_N_typical(1, HALF, 2) == Fraction(5, 6)
        nbar, theta = equidistant_averages(EquidistantParams(p=1, n=2, x=1, q=HALF))
        assert theta == (Fraction(2, 5), Fraction(1, 5))
        assert nbar == Fraction(3, 5)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_against_enumeration(self, n):
        x, q = Fraction(3, 2), Fraction(1, 3)
        for p in range(n + 2):
            params = EquidistantParams(p=p, n=n, x=x, q=q)
            reference = thermo.thermo_report(params.thermo_params())
            assert equidistant_gpf(params) == reference.Z
            assert equidistant_gpf(params, EquidistantRoute.PHI21) == reference.Z
            if p >= n:
                product = equidistant_gpf(params, EquidistantRoute.PRODUCT)
                assert product == reference.Z
            nbar, theta = equidistant_averages(params)
            assert nbar == reference.Nbar
            assert list(theta) == reference.theta_bar

    @pytest.mark.parametrize("n", range(1, 6))
    def test_continuity_at_q_one(self, n):
        """The q-binomial route tends to the degenerate case as q -> 1."""
        x = Fraction(7, 10)
        for p in range(n + 1):
            degenerate = DegenerateParams(p=p, n=n, x=x)
            z_one = degenerate_gpf(degenerate)
            nbar_one, theta_one = degenerate_averages(degenerate)
            for k in (4, 6, 8):
                eps = Fraction(1, 10**k)
                params = EquidistantParams(p=p, n=n, x=x, q=1 - eps)
                z = equidistant_gpf(params)
                assert 0 <= z_one - z <= n * n * eps * z_one
                nbar, theta = equidistant_averages(params)
                assert abs(nbar - nbar_one) <= n**3 * eps
                assert all(abs(t - theta_one) <= 2 * n * n * eps for t in theta)

    def test_float_inputs(self):
        params = EquidistantParams(p=2, n=4, x=0.7, q=0.4)
        reference = thermo.gpf(params.thermo_params())
        for route in (EquidistantRoute.QBINOMIAL, EquidistantRoute.PHI21):
            assert equidistant_gpf(params, route) == pytest.approx(reference, rel=1e-12)

    def test_from_physical(self):
        params = EquidistantParams.from_physical(
            p=1, n=3, epsilon1=1.0, delta=2.0, mu=1.0, tau=1.0
        )
        assert params.x == pytest.approx(1.0)
        assert params.q == pytest.approx(math.exp(-2.0))
        with pytest.raises(DomainError):
            EquidistantParams.from_physical(1, 3, 1.0, 2.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            EquidistantParams.from_physical(1, 3, 1.0, 0.0, 1.0, 1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            EquidistantParams(p=1, n=2, x=1, q=0)
        with pytest.raises(ValueError):
            EquidistantParams(p=1, n=2, x=1, q=Fraction(3, 2))


class TestEquidistantSingleParticle:
    """Test p = 1 and its low-temperature limit."""

    def test_low_temperature_limit(self):
        result = equidistant_p1(5, 0.001, y=0.0)
        assert result.low_temperature
        assert result.fermi_dirac == pytest.approx(0.5)
        assert abs(result.Nbar - 0.5) < 1.1e-3
        assert result.nbar_deviation < 1.1e-3
        assert result.theta_bar[1] < 5.1e-4
        assert result.max_excited_theta == result.theta_bar[1]

    @pytest.mark.parametrize("y", Y_POINTS)
    def test_single_level_bounds(self, y):
        """|N - 1 / (e^y + 1)| <= 2 n q and excited occupancies stay below 2 q."""
        n, q = 5, 1e-3
        result = equidistant_p1(n, q, y=y)
        assert abs(result.Nbar - _fermi_dirac(y)) <= 2 * n * q
        assert all(theta <= 2 * q for theta in result.theta_bar[1:])

    def test_away_from_limit(self):
        result = equidistant_p1(5, 0.5, x=1.0)
        assert not result.low_temperature
        assert result.nbar_deviation is None
        assert result.Nbar == pytest.approx(sum(result.theta_bar))

    def test_matches_enumeration(self):
        result = equidistant_p1(4, 0.3, y=0.5)
        params = EquidistantParams(p=1, n=4, x=math.exp(-0.5), q=0.3)
        reference = thermo.occupancies(params.thermo_params())
        assert result.theta_bar == pytest.approx(list(reference), rel=1e-12)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            equidistant_p1(5, 0.5)
        with pytest.raises(PreconditionError):
            equidistant_p1(0, 0.5, y=0.0)
        with pytest.raises(DomainError):
            equidistant_p1(5, 1.5, y=0.0)
        with pytest.raises(DomainError):
            equidistant_p1(5, 0.5, x=0.0)

    def test_overflowing_fugacity(self):
        with pytest.raises(PreconditionError):
            equidistant_p1(5, 0.5, y=-800.0)
        with pytest.raises(PreconditionError):
            DegenerateParams(p=1, n=2, y=-800.0).fugacity
        with pytest.raises(PreconditionError):
            EquidistantParams.from_physical(1, 3, 0.0, 1.0, 1000.0, 1.0)


class TestFigures:
    """Test the curves behind the three figures."""

    def test_occupancy_vs_y(self):
        series = figure_data(1)
        assert series.abscissa_name == "y"
        assert len(series.abscissa) == 201
        assert list(series.curves) == ["p1", "p2", "p3", "p4", "p5"]
        for y, theta in zip(series.abscissa, series.curves["p5"], strict=True):
            assert theta == pytest.approx(_fermi_dirac(y), abs=1e-12)
        assert all(theta <= 0.2 + 1e-12 for theta in series.curves["p1"])
        assert series.curves["p1"][0] > 0.1999

    def test_hardcore_bosons(self):
        series = figure_data(2)
        assert list(series.curves) == ["n1", "n2", "n3", "n4", "n5"]
        for y, nbar in zip(series.abscissa, series.curves["n1"], strict=True):
            assert nbar == pytest.approx(_fermi_dirac(y), abs=1e-12)

    def test_equidistant_levels(self):
        series = figure_data(3)
        assert series.abscissa_name == "q"
        assert len(series.abscissa) == 99
        assert series.metadata["y"] == 0.0
        for k in range(len(series.abscissa)):
            values = [series.curves[f"theta{i}"][k] for i in range(1, 6)]
            assert values == sorted(values, reverse=True)

    def test_custom_grid(self):
        series = figure_data(1, GridSpec.parse("-1:1:5"))
        assert series.abscissa == [-1.0, -0.5, 0.0, 0.5, 1.0]
        assert series.metadata["grid"] == "-1:1:5"

    def test_low_temperature_metadata(self):
        series = figure_data(3, GridSpec.parse("0.0005:0.5:11"), q_tol=1e-3)
        assert series.metadata["low_temperature_points"] == 1
        assert series.metadata["max_fermi_dirac_deviation"] < 1.1e-3

    def test_errors(self):
        with pytest.raises(PreconditionError):
            figure_data(4)
        with pytest.raises(DomainError):
            figure_data(3, GridSpec.parse("0.5:1.5:3"))


@pytest.mark.slow
class TestClosedFormGrids:
    """Closed forms against the general route over wider parameter grids."""

    def test_degenerate_routes(self):
        for x in (Fraction(1, 10), HALF, 1, 2, 10):
            for n in range(1, 13):
                for p in range(n + 1):
                    params = DegenerateParams(p=p, n=n, x=x)
                    direct = degenerate_gpf(params)
                    additive = degenerate_gpf(params, DegenerateRoute.ADDITIVE_2F1)
                    assert additive == direct
                    assert direct == thermo.gpf(params.thermo_params())

    def test_equidistant_routes(self):
        for x in (HALF, 1, 2):
            for q in (Fraction(3, 10), Fraction(7, 10), Fraction(19, 20)):
                for n in range(1, 9):
                    for p in range(n + 1):
                        params = EquidistantParams(p=p, n=n, x=x, q=q)
                        reference = thermo.gpf_bruteforce(params.thermo_params())
                        assert equidistant_gpf(params) == reference
                        phi21 = equidistant_gpf(params, EquidistantRoute.PHI21)
                        assert phi21 == reference
                        if p == n:
                            product = equidistant_gpf(params, EquidistantRoute.PRODUCT)
                            assert product == reference
