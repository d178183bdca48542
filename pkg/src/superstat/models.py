"""Core data models for superstat."""

from __future__ import annotations

import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    field_validator,
    model_validator,
)


def _coerce_number(value: Any) -> Fraction | float:
    """Accept exact rationals (ints, Fractions, "p/q" strings) or floats."""
    if isinstance(value, bool):
        raise ValueError("Booleans are not numbers")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int | np.integer):
        return Fraction(int(value))
    if isinstance(value, float | np.floating):
        return float(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as e:
            raise ValueError(f"Not a rational literal: {value!r}") from e
    raise ValueError(f"Not a number: {value!r}")


def _dump_number(value: Fraction | float) -> str | float:
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


Number = Annotated[
    Fraction | float,
    PlainValidator(_coerce_number),
    PlainSerializer(_dump_number, when_used="json"),
    WithJsonSchema(
        {
            "anyOf": [
                {"type": "number"},
                {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
            ]
        }
    ),
]
"""A value that is either exact (Fraction, serialized as "p/q") or a float."""


def to_canonical_json(obj: Any) -> str:
    """Convert object to canonical JSON string with sorted keys and
    consistent formatting.

    Args:
        obj: Object to serialize (typically a Pydantic model)

    Returns:
        Canonical JSON string with sorted keys and compact separators
    """
    if hasattr(obj, "model_dump"):
        data = obj.model_dump(mode="json", exclude_none=True)
    elif isinstance(obj, list):
        data = [
            item.model_dump(mode="json", exclude_none=True)
            if hasattr(item, "model_dump")
            else item
            for item in obj
        ]
    else:
        data = obj
    return json.dumps(data, separators=(",", ":"), sort_keys=True, ensure_ascii=False)


class Route(str, Enum):
    """Computation route of a thermodynamic report."""

    BRUTEFORCE = "bruteforce"
    SYMFUN = "symfun"
    CLOSED_FORM = "closed_form"


class DegenerateRoute(str, Enum):
    """Evaluation route of the degenerate grand partition function."""

    DIRECT = "direct"
    ADDITIVE_2F1 = "additive_2F1"
    MULTIPLICATIVE_2F1 = "multiplicative_2F1"


class EquidistantRoute(str, Enum):
    """Evaluation route of the equidistant grand partition function."""

    QBINOMIAL = "qbinomial"
    PHI21 = "phi21"
    PRODUCT = "product"


class SamplingMethod(str, Enum):
    """Sampling backend."""

    EXACT_CATEGORICAL = "exact_categorical"
    METROPOLIS = "metropolis"


class OutputFormat(str, Enum):
    """Artifact format emitted by the CLI."""

    JSON = "json"
    CSV = "csv"
    HUMAN = "human"


class FockSpec(BaseModel):
    """Labels of the Fock module W(p, n)."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=1, description="Order of statistics")
    n: int = Field(..., ge=1, description="Number of orbitals")

    @property
    def typical(self) -> bool:
        """True when p >= n and the module has dimension 2**n."""
        return self.p >= self.n

    @property
    def dimension(self) -> int:
        """dim W(p, n) from the binomial sum, without enumerating."""
        return sum(math.comb(self.n, k) for k in range(min(self.p, self.n) + 1))


class Counterexample(BaseModel):
    """First matrix entry where an identity failed."""

    identity: str = Field(..., description="Instance of the identity that failed")
    row: int = Field(..., description="Basis index of the row")
    col: int = Field(..., description="Basis index of the column")
    expected: str = Field(..., description="Right hand side entry")
    got: str = Field(..., description="Left hand side entry")


class VerificationReport(BaseModel):
    """Outcome of checking one family of operator identities."""

    identity: str = Field(..., description="Name of the identity family")
    p: int = Field(..., description="Order of statistics")
    n: int = Field(..., description="Number of orbitals")
    passed: bool = Field(..., description="Whether every instance held")
    exact: bool = Field(
        True, description="Verified in exact Amplitude arithmetic throughout"
    )
    max_residual: float = Field(
        0.0, ge=0.0, description="Largest float residual when a fallback was used"
    )
    checks: int = Field(0, ge=0, description="Number of identity instances checked")
    counterexample: Counterexample | None = Field(
        None, description="First failing entry"
    )

    @model_validator(mode="after")
    def exact_means_no_residual(self) -> VerificationReport:
        if self.exact and self.max_residual != 0.0:
            raise ValueError("An exact verification carries no float residual")
        return self


class VerificationSuite(BaseModel):
    """All reports of one `verify` invocation."""

    p: int
    n: int
    suite: str
    passed: bool = False
    reports: list[VerificationReport] = Field(default_factory=list)

    @model_validator(mode="after")
    def compute_passed(self) -> VerificationSuite:
        self.passed = all(report.passed for report in self.reports)
        return self


class DimensionReport(BaseModel):
    """Dimension of W(p, n)."""

    p: int
    n: int
    dimension: int
    typical: bool
    enumerated: bool = Field(
        ..., description="Whether the count came from enumerating the basis"
    )


class ThermoParams(BaseModel):
    """Grand canonical input: fugacities directly, or (epsilon, mu, tau)."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=0, description="Order of statistics")
    fugacities: tuple[Number, ...] | None = Field(
        None, description="x_1..x_n; derived from the physical data when omitted"
    )
    energies: tuple[Number, ...] | None = Field(
        None, description="Orbital energies epsilon_i"
    )
    chemical_potentials: tuple[Number, ...] | None = Field(
        None, description="Chemical potentials mu_i"
    )
    temperature: float | None = Field(None, description="Temperature tau")

    @field_validator("fugacities")
    @classmethod
    def nonnegative_fugacities(cls, v: tuple | None) -> tuple | None:
        if v is None:
            return v
        if len(v) == 0:
            raise ValueError("At least one orbital is required")
        if any(x < 0 for x in v):
            raise ValueError("Fugacities must be nonnegative")
        return v

    @model_validator(mode="after")
    def check_mode(self) -> ThermoParams:
        if self.fugacities is None:
            if (
                self.energies is None
                or self.chemical_potentials is None
                or self.temperature is None
            ):
                raise ValueError(
                    "Give either fugacities or energies, chemical potentials "
                    "and temperature"
                )
            if len(self.energies) != len(self.chemical_potentials):
                raise ValueError("energies and chemical_potentials differ in length")
        if (
            self.fugacities is not None
            and self.energies is not None
            and len(self.energies) != len(self.fugacities)
        ):
            raise ValueError("energies and fugacities differ in length")
        return self

    @property
    def n(self) -> int:
        if self.fugacities is not None:
            return len(self.fugacities)
        assert self.energies is not None
        return len(self.energies)

    @property
    def p_effective(self) -> int:
        return min(self.p, self.n)


class StateProbability(BaseModel):
    """Gibbs probability of one admissible occupation vector."""

    theta: tuple[int, ...]
    probability: Number


class ThermoReport(BaseModel):
    """Thermodynamic averages of A-superstatistics."""

    p: int = Field(..., description="Order of statistics as requested")
    n: int = Field(..., description="Number of orbitals")
    route: Route = Field(..., description="Computation route")
    clamped: bool = Field(False, description="Whether p > n was clamped to n")
    Z: Number = Field(..., description="Grand partition function")
    Nbar: Number = Field(..., description="Average particle number")
    theta_bar: list[Number] = Field(..., description="Orbital occupancies")
    Ebar: Number | None = Field(None, description="Average energy")
    probabilities: list[StateProbability] | None = Field(
        None, description="Per-state Gibbs probabilities"
    )


class GpfReport(BaseModel):
    """Grand partition function only."""

    p: int
    n: int
    route: str
    Z: Number


class GridSpec(BaseModel):
    """Uniform abscissa grid ``start:stop:num``."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    num: int = Field(..., ge=2)

    @model_validator(mode="after")
    def increasing(self) -> GridSpec:
        if not self.stop > self.start:
            raise ValueError("Grid must be strictly increasing")
        return self

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"Grid spec must be START:STOP:NUM, got {text!r}")
        return cls(start=float(parts[0]), stop=float(parts[1]), num=int(parts[2]))

    def points(self) -> list[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.num)]


class FigureSeries(BaseModel):
    """Data behind one figure: an abscissa and one named curve per parameter."""

    figure_id: int = Field(..., ge=1, le=3)
    abscissa_name: str
    abscissa: list[float]
    curves: dict[str, list[float]]
    metadata: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def consistent(self) -> FigureSeries:
        if any(b <= a for a, b in zip(self.abscissa, self.abscissa[1:], strict=False)):
            raise ValueError("Abscissa must be strictly increasing")
        for name, values in self.curves.items():
            if len(values) != len(self.abscissa):
                raise ValueError(f"Curve {name} does not match the abscissa length")
        return self


class SamplerConfig(BaseModel):
    """Configuration of a Gibbs sampling run."""

    model_config = ConfigDict(frozen=True)

    params: ThermoParams
    count: int = Field(..., ge=1, description="Draws (exact) or steps (metropolis)")
    seed: int = Field(0, ge=0, lt=2**64)
    method: SamplingMethod = SamplingMethod.EXACT_CATEGORICAL
    burn_in: int = Field(0, ge=0, description="Discarded leading steps")
    thinning: int = Field(1, ge=1, description="Keep every k-th step")
    chains: int = Field(1, ge=1, description="Independent chains / draw batches")
    blocks: int = Field(100, ge=2, description="Jackknife blocks")


class SampleEstimate(BaseModel):
    """Sample means with jackknife standard errors."""

    method: SamplingMethod
    samples: int
    Nbar_hat: float
    Nbar_se: float
    theta_bar_hat: list[float]
    theta_bar_se: list[float]
    Ebar_hat: float | None = None
    Ebar_se: float | None = None
    acceptance_rate: float | None = None


def export_json_schemas(output_dir: Path) -> None:
    """Export JSON schemas for the report models to the specified directory.

    Args:
        output_dir: Directory to export schemas to
    """
    output_dir.mkdir(parents=True, exist_ok=True)

    schemas = {
        "VerificationSuite": VerificationSuite.model_json_schema(),
        "ThermoReport": ThermoReport.model_json_schema(),
        "FigureSeries": FigureSeries.model_json_schema(),
        "SampleEstimate": SampleEstimate.model_json_schema(),
    }

    for name, schema in schemas.items():
        schema_file = output_dir / f"{name.lower()}.json"
        with open(schema_file, "w", encoding="utf-8") as f:
            json.dump(schema, f, indent=2, sort_keys=True)
        print(f"Exported {name} schema to {schema_file}")
