"""Configuration management for superstat."""

from __future__ import annotations

from pathlib import Path
from typing import Any

try:
    import tomllib as _toml  # Python 3.11+

    TOMLDecodeError = _toml.TOMLDecodeError
except ModuleNotFoundError:
    import tomli as _toml  # type: ignore[no-redef]
    from tomli import TOMLDecodeError  # type: ignore

from .models import GridSpec, SamplingMethod

DEFAULT_CONFIG_NAME = "superstat.toml"

ENUMERATION_CAP = 20
FLOAT_TOLERANCE = 1e-12
EXACT_CAP = 64
BRUTEFORCE_CAP = 24
Y_GRID = "-10:10:201"
Q_GRID = "0.01:0.99:99"
Q_TOL = 1e-3


class Config:
    """Configuration manager for superstat."""

    def __init__(self, config_path: Path | None = None):
        """Initialize configuration from TOML file."""
        if config_path is None:
            config_path = Path.cwd() / DEFAULT_CONFIG_NAME

        self.config_path = config_path
        self._config: dict[str, Any] = {}

        if config_path.exists():
            self._load_config()

    def _load_config(self) -> None:
        """Load configuration from TOML file."""
        try:
            with open(self.config_path, "rb") as f:
                self._config = _toml.load(f)
        except TOMLDecodeError as e:
            # Re-raise TOML parsing errors so CLI can handle them
            raise ValueError(
                f"Invalid TOML configuration in {self.config_path}: {e}"
            ) from e
        except OSError as e:
            raise ValueError(
                f"Failed to load configuration from {self.config_path}: {e}"
            ) from e

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key."""
        keys = key.split(".")
        value = self._config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def _typed(self, key: str, default: Any, kind: type) -> Any:
        value = self.get(key, default)
        if value is None:
            return default
        try:
            return kind(value)
        except (TypeError, ValueError) as e:
            raise ValueError(f"Invalid value for {key} in {self.config_path}") from e

    @property
    def enumeration_cap(self) -> int:
        """Largest n for which the Fock basis is enumerated."""
        return int(self._typed("fock.enumeration_cap", ENUMERATION_CAP, int))

    @property
    def float_tolerance(self) -> float:
        """Residual tolerance of the float verification fallback."""
        return float(self._typed("fock.float_tolerance", FLOAT_TOLERANCE, float))

    @property
    def exact_cap(self) -> int:
        return int(self._typed("thermo.exact_cap", EXACT_CAP, int))

    @property
    def bruteforce_cap(self) -> int:
        return int(self._typed("thermo.bruteforce_cap", BRUTEFORCE_CAP, int))

    @property
    def y_grid(self) -> GridSpec:
        """Abscissa grid of the y-indexed figures."""
        return GridSpec.parse(str(self.get("figures.y_grid", Y_GRID)))

    @property
    def q_grid(self) -> GridSpec:
        return GridSpec.parse(str(self.get("figures.q_grid", Q_GRID)))

    @property
    def fig3_y(self) -> float:
        return float(self._typed("figures.fig3_y", 0.0, float))

    @property
    def q_tol(self) -> float:
        """Threshold below which low-temperature approximations are reported."""
        return float(self._typed("special.q_tol", Q_TOL, float))

    @property
    def sampler_method(self) -> SamplingMethod:
        value = self.get("sampler.method", SamplingMethod.EXACT_CATEGORICAL.value)
        try:
            return SamplingMethod(str(value))
        except ValueError as e:
            raise ValueError(
                f"Unknown sampler.method {value!r} in {self.config_path}"
            ) from e

    @property
    def sampler_seed(self) -> int:
        return int(self._typed("sampler.seed", 0, int))

    @property
    def sampler_burn_in(self) -> int:
        return int(self._typed("sampler.burn_in", 0, int))

    @property
    def sampler_thinning(self) -> int:
        return int(self._typed("sampler.thinning", 1, int))

    @property
    def sampler_blocks(self) -> int:
        return int(self._typed("sampler.blocks", 100, int))

    @property
    def log_level(self) -> str:
        value = self.get("logging.level", "WARNING")
        return str(value).upper() if value is not None else "WARNING"

    @property
    def log_format(self) -> str:
        value = self.get("logging.format", "%(message)s")
        return str(value) if value is not None else "%(message)s"
