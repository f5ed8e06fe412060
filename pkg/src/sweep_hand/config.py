"""Configuration management for sweep-hand.

``Settings`` carries process-wide knobs read from the environment;
``BenchConfig`` describes one benchmark run and is loaded from TOML.
"""

import tomllib
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings

from sweep_hand.exceptions import ConfigError
from sweep_hand.formulas.coefficients import get_scheme
from sweep_hand.hamiltonians.problems import ProblemSpec

__all__ = [
    "Settings",
    "get_settings",
    "Family",
    "SchemeConfig",
    "RunConfig",
    "BenchConfig",
    "load_bench_config",
]

Family = Literal["pointwise", "hdr", "iacs", "mpf", "qdrift", "taylor2"]

_VARIANTS: dict[str, tuple[str, ...]] = {
    "mpf": ("pointwise", "hdr"),
    "qdrift": ("v1", "v2", "continuous"),
}


class Settings(BaseSettings):
    """Process settings loaded from environment variables.

    All settings are optional and have defaults suited to a laptop run.
    Environment variables use the SWEEP_HAND_ prefix.
    """

    debug: bool = False
    output_dir: Path = Path("results")

    # Oracle and quadrature defaults
    reference_tol: float = 1e-11
    max_reference_steps: int = 2**18
    quadrature_nodes: int = 32
    clock_nodes: int = 33

    workers: int = 1
    cache_size: int = 256

    model_config = {"env_prefix": "SWEEP_HAND_"}

    @field_validator("reference_tol")
    @classmethod
    def validate_reference_tol(cls, v: float) -> float:
        """Validate the oracle tolerance is positive."""
        if v <= 0:
            raise ValueError("reference_tol must be positive")
        return v

    @field_validator("max_reference_steps")
    @classmethod
    def validate_max_reference_steps(cls, v: int) -> int:
        if v < 16:
            raise ValueError("max_reference_steps must be at least 16")
        return v

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, v: int) -> int:
        """Validate the thread-pool width."""
        if not 1 <= v <= 64:
            raise ValueError("workers must be between 1 and 64")
        return v

    @field_validator("cache_size")
    @classmethod
    def validate_cache_size(cls, v: int) -> int:
        if v < 1:
            raise ValueError("cache_size must be at least 1")
        return v

    @field_validator("quadrature_nodes")
    @classmethod
    def validate_quadrature_nodes(cls, v: int) -> int:
        if v < 2:
            raise ValueError("quadrature_nodes must be at least 2")
        return v

    @field_validator("clock_nodes")
    @classmethod
    def validate_clock_nodes(cls, v: int) -> int:
        if v < 3:
            raise ValueError("clock_nodes must be at least 3")
        return v


def get_settings() -> Settings:
    """Get settings instance."""
    return Settings()


class SchemeConfig(BaseModel):
    """One scheme entry of a benchmark run."""

    family: Family
    base: str = "Strang"
    lambda_prime: int = Field(default=1, ge=0)
    k: list[int] = Field(default_factory=lambda: [1, 2])
    variant: str | None = None
    samples: int = Field(default=0, ge=0)
    label: str | None = None

    @field_validator("base")
    @classmethod
    def validate_base(cls, v: str) -> str:
        """Validate the base scheme exists, normalizing its spelling."""
        try:
            return get_scheme(v).name
        except KeyError as e:
            raise ValueError(e.args[0]) from e

    @field_validator("k")
    @classmethod
    def validate_k(cls, v: list[int]) -> list[int]:
        if not v or any(x < 1 for x in v) or len(set(v)) != len(v):
            raise ValueError("k must be distinct positive integers")
        return sorted(v)

    @model_validator(mode="after")
    def check_variant(self) -> "SchemeConfig":
        """Fill in and validate the family-specific variant."""
        allowed = _VARIANTS.get(self.family)
        if allowed is None:
            if self.variant is not None:
                raise ValueError(f"family {self.family} takes no variant")
            if self.samples > 0:
                raise ValueError("samples is only available for qdrift v1")
            return self
        if self.variant is None:
            self.variant = allowed[0]
        elif self.variant not in allowed:
            raise ValueError(
                f"{self.family} variant must be one of {', '.join(allowed)}"
            )
        if self.samples > 0 and self.variant != "v1":
            raise ValueError("samples is only available for qdrift v1")
        return self

    @property
    def scheme_id(self) -> str:
        """Stable identifier used in records, CSV and charts."""
        if self.label:
            return self.label
        if self.family == "mpf":
            ks = ",".join(str(x) for x in self.k)
            return f"mpf-{self.variant}-k{ks}"
        if self.family == "qdrift":
            return f"qdrift-{self.variant}"
        if self.family == "taylor2":
            return "taylor2"
        if self.family == "pointwise":
            return f"pointwise{self.lambda_prime}-{self.base}"
        return f"{self.family}-{self.base}"


class RunConfig(BaseModel):
    """Grid, seeds, metric and acceptance thresholds of a run."""

    n_grid: list[int]
    seeds: list[int] = Field(default_factory=lambda: [0])
    metric: Literal["trace", "operator"] = "trace"
    error_window: tuple[float, float] = (1e-10, 1e-2)
    expected_slope: float | None = None
    slope_tolerance: float = Field(default=0.5, gt=0)
    ordering: tuple[str, str] | None = None
    ordering_threshold: float = Field(default=0.7, ge=0.0, le=1.0)
    output: str = "bench"

    @field_validator("n_grid")
    @classmethod
    def validate_n_grid(cls, v: list[int]) -> list[int]:
        """Validate the step grid is positive and strictly increasing."""
        if not v or v[0] < 1 or any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("n_grid must be positive and strictly increasing")
        return v

    @field_validator("seeds")
    @classmethod
    def validate_seeds(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("at least one seed is required")
        return v

    @field_validator("error_window")
    @classmethod
    def validate_error_window(cls, v: tuple[float, float]) -> tuple[float, float]:
        if not 0 < v[0] < v[1]:
            raise ValueError("error_window must satisfy 0 < low < high")
        return v


class BenchConfig(BaseModel):
    """A complete benchmark description."""

    problem: ProblemSpec = Field(default_factory=ProblemSpec)
    schemes: list[SchemeConfig] = Field(min_length=1)
    run: RunConfig

    @model_validator(mode="after")
    def check_ordering(self) -> "BenchConfig":
        """The ordering pair must name configured schemes."""
        if self.run.ordering is not None:
            ids = {scheme.scheme_id for scheme in self.schemes}
            missing = [x for x in self.run.ordering if x not in ids]
            if missing:
                raise ValueError(f"ordering names unknown schemes: {missing}")
        return self


def load_bench_config(path: Path | str) -> BenchConfig:
    """Load and validate a benchmark TOML file.

    Args:
        path: Path to the TOML file.

    Returns:
        The validated BenchConfig.

    Raises:
        ConfigError: If the file is missing, not TOML, or fails validation.
    """
    path = Path(path)
    try:
        with path.open("rb") as handle:
            raw = tomllib.load(handle)
    except OSError as e:
        raise ConfigError(f"{path}: cannot read config: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: invalid TOML: {e}") from e
    try:
        return BenchConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"{path}: {e}") from e
