"""Tests for configuration, artifact storage and output formats."""

from fractions import Fraction

import numpy as np
import pytest

from superstat.config import ENUMERATION_CAP, Config
from superstat.formats import (
    format_csv_value,
    format_human_value,
    render,
    samples_csv,
    sweep_csv,
    write_artifact,
)
from superstat.models import (
    FigureSeries,
    OutputFormat,
    Route,
    SamplingMethod,
    ThermoReport,
)
from superstat.storage import FileSystemStorage


@pytest.fixture
def report():
    return ThermoReport(
        p=2,
        n=2,
        route=Route.SYMFUN,
        Z=Fraction(4),
        Nbar=Fraction(1),
        theta_bar=[Fraction(1, 2), Fraction(1, 2)],
    )


class TestConfig:
    """Test TOML configuration."""

    def test_defaults(self, tmp_path):
        config = Config(tmp_path / "missing.toml")
        assert config.enumeration_cap == ENUMERATION_CAP
        assert config.sampler_method is SamplingMethod.EXACT_CATEGORICAL
        assert config.y_grid.num == 201
        assert config.log_level == "WARNING"

    def test_overrides(self, tmp_path):
        path = tmp_path / "superstat.toml"
        path.write_text(
            "[fock]\nenumeration_cap = 8\n"
            "[sampler]\nmethod = \"metropolis\"\nseed = 42\n"
            "[logging]\nlevel = \"debug\"\n"
        )
        config = Config(path)
        assert config.enumeration_cap == 8
        assert config.sampler_method is SamplingMethod.METROPOLIS
        assert config.sampler_seed == 42
        assert config.log_level == "DEBUG"

    def test_invalid_toml(self, tmp_path):
        path = tmp_path / "superstat.toml"
        path.write_text("[fock\n")
        with pytest.raises(ValueError):
            Config(path)

    def test_invalid_values(self, tmp_path):
        path = tmp_path / "superstat.toml"
        path.write_text('[fock]\nenumeration_cap = "many"\n[sampler]\nmethod = "x"\n')
        config = Config(path)
        with pytest.raises(ValueError):
            config.enumeration_cap
        with pytest.raises(ValueError):
            config.sampler_method


class TestStorage:
    """Test atomic artifact storage."""

    def test_save_and_load(self, tmp_path, report):
        storage = FileSystemStorage(tmp_path)
        text = render(report, OutputFormat.JSON)
        path = storage.save_text("nested/report.json", text)
        assert path == (tmp_path / "nested" / "report.json").resolve()
        assert ThermoReport.model_validate_json(path.read_text()) == report

    def test_no_temporary_files_left(self, tmp_path):
        storage = FileSystemStorage(tmp_path)
        storage.save_text("a.csv", "x\n1\n")
        storage.save_text("a.csv", "x\n2\n")
        assert [p.name for p in tmp_path.iterdir()] == ["a.csv"]
        assert (tmp_path / "a.csv").read_text() == "x\n2\n"

    def test_refuses_escape(self, tmp_path):
        with pytest.raises(ValueError):
            FileSystemStorage(tmp_path / "root").save_text("../outside.txt", "")

    def test_creates_missing_root(self, tmp_path):
        storage = FileSystemStorage(tmp_path / "absent")
        path = storage.save_text("fig1.csv", "y\n0\n")
        assert path.read_text() == "y\n0\n"


class TestFormats:
    """Test CSV, JSON and human rendering."""

    def test_csv_values(self):
        assert format_csv_value(0.1) == "0.10000000000000001"
        assert format_csv_value(Fraction(1, 3)) == "1/3"
        assert format_csv_value(True) == "true"
        assert format_csv_value(None) == ""
        assert format_csv_value(np.float64(2.0)) == "2"

    def test_human_values(self):
        assert format_human_value(Fraction(1, 3)) == "0.333333"
        assert format_human_value(False) == "no"

    def test_report_csv(self, report):
        text = render(report, OutputFormat.CSV)
        assert text == (
            "p,n,route,clamped,Z,Nbar,theta_bar_1,theta_bar_2\n"
            "2,2,symfun,false,4,1,1/2,1/2\n"
        )

    def test_json_ends_with_newline(self, report):
        text = render(report, OutputFormat.JSON)
        assert text.endswith("}\n")
        assert text.count("\n") == 1

    def test_human_table(self, report):
        text = render(report, OutputFormat.HUMAN)
        assert "ThermoReport" in text
        assert "theta_bar_2" in text

    def test_figure_csv(self):
        series = FigureSeries(
            figure_id=2,
            abscissa_name="y",
            abscissa=[0.0, 1.0],
            curves={"n1": [0.5, 0.25], "n2": [0.75, 0.5]},
        )
        assert render(series, OutputFormat.CSV) == "y,n1,n2\n0,0.5,0.75\n1,0.25,0.5\n"

    def test_sweep_csv(self, report):
        text = sweep_csv([1.0, 2.0], [report, report])
        assert text.splitlines()[0] == "tau,Z,Nbar,theta_bar_1,theta_bar_2"
        with pytest.raises(ValueError):
            sweep_csv([1.0], [report, report])

    def test_samples_csv(self):
        states = np.array([[1, 0], [0, 1]], dtype=np.int8)
        assert samples_csv(states) == "theta_1,theta_2\n1,0\n0,1\n"

    def test_write_artifact(self, tmp_path):
        path = write_artifact(tmp_path / "out" / "a.txt", "line\n")
        assert path.read_bytes() == b"line\n"
