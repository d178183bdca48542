"""Tests for superstat report models and schema export."""

import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from superstat.models import (
    FigureSeries,
    FockSpec,
    GridSpec,
    Route,
    SamplerConfig,
    ThermoParams,
    ThermoReport,
    VerificationReport,
    VerificationSuite,
    export_json_schemas,
    to_canonical_json,
)


class TestNumbers:
    """Test exact and float number coercion."""

    def test_coercion(self):
        params = ThermoParams(p=1, fugacities=("1/3", 2, 0.5))
        assert params.fugacities == (Fraction(1, 3), Fraction(2), 0.5)
        assert isinstance(params.fugacities[1], Fraction)
        assert isinstance(params.fugacities[2], float)

    @pytest.mark.parametrize("bad", ["abc", True, None])
    def test_rejected_values(self, bad):
        with pytest.raises(ValidationError):
            ThermoParams(p=1, fugacities=(bad,))

    def test_json_dump(self):
        report = ThermoReport(
            p=1,
            n=1,
            route=Route.SYMFUN,
            Z=Fraction(3, 2),
            Nbar=0.25,
            theta_bar=[Fraction(1, 3)],
        )
        data = json.loads(to_canonical_json(report))
        assert data["Z"] == "3/2"
        assert data["Nbar"] == 0.25
        assert data["theta_bar"] == ["1/3"]
        assert "Ebar" not in data

    def test_canonical_json_is_sorted_and_compact(self):
        text = to_canonical_json(FockSpec(p=2, n=3))
        assert text == '{"n":3,"p":2}'


class TestModels:
    """Test model validation and derived properties."""

    def test_fock_spec(self):
        spec = FockSpec(p=2, n=3)
        assert spec.dimension == 7
        assert not spec.typical
        assert FockSpec(p=3, n=3).dimension == 8
        assert FockSpec(p=5, n=3).typical
        with pytest.raises(ValidationError):
            FockSpec(p=0, n=3)

    def test_suite_passed(self):
        ok = VerificationReport(identity="weyl", p=2, n=3, passed=True)
        bad = VerificationReport(identity="quasi", p=2, n=3, passed=False)
        assert VerificationSuite(p=2, n=3, suite="all", reports=[ok]).passed
        assert not VerificationSuite(p=2, n=3, suite="all", reports=[ok, bad]).passed

    def test_grid_spec(self):
        grid = GridSpec.parse("0:1:3")
        assert grid.points() == [0.0, 0.5, 1.0]

    @pytest.mark.parametrize("text", ["0:1", "1:0:5", "0:1:1", "a:b:c"])
    def test_invalid_grid(self, text):
        with pytest.raises(ValueError):
            GridSpec.parse(text)

    def test_figure_series_lengths(self):
        with pytest.raises(ValidationError):
            FigureSeries(
                figure_id=1,
                abscissa_name="y",
                abscissa=[0.0, 1.0],
                curves={"p1": [0.5]},
            )
        with pytest.raises(ValidationError):
            FigureSeries(figure_id=1, abscissa_name="y", abscissa=[1.0, 0.0], curves={})

    def test_sampler_config(self):
        params = ThermoParams(p=1, fugacities=(1, 1))
        with pytest.raises(ValidationError):
            SamplerConfig(params=params, count=0)
        with pytest.raises(ValidationError):
            SamplerConfig(params=params, count=10, thinning=0)
        assert SamplerConfig(params=params, count=10).chains == 1


class TestSchemaExport:
    """Test JSON schema export."""

    def test_export_json_schemas(self, tmp_path):
        export_json_schemas(tmp_path)
        names = sorted(p.name for p in tmp_path.glob("*.json"))
        assert names == [
            "figureseries.json",
            "sampleestimate.json",
            "thermoreport.json",
            "verificationsuite.json",
        ]
        schema = json.loads((tmp_path / "thermoreport.json").read_text())
        assert "Z" in schema["properties"]
