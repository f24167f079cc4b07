"""Experiment configuration: schema and loaders.

Config files are either JSON or plain ``key = value`` text::

    # Convergence trajectories for four controls
    experiment = mf-trajectory
    params.k_agents = 100
    params.lambda = 50
    u_values = 0.3, 0.5, 0.7, 0.9

Dotted keys nest, comma-separated values become lists and ``#`` starts a
comment. A manifest written by a previous run is also accepted.
"""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..config import DEFAULTS, SOLVER
from ..errors import ConfigError
from ..schemas import ModelParams

logger = logging.getLogger(__name__)

RECIPES_DIR = Path(__file__).parent / "recipes"


class ExperimentName(str, Enum):
    MICRO_VALIDATE = "micro-validate"
    MF_TRAJECTORY = "mf-trajectory"
    ERROR_DECAY = "error-decay"
    EQUILIBRIUM_SCAN = "equilibrium-scan"
    FRONTIER = "frontier"
    OPTIMAL_U = "optimal-u"


class InitSpec(BaseModel):
    """Initial condition: homogeneous (x0, n0) or a sampled heterogeneous population."""

    model_config = ConfigDict(extra="forbid")

    x0: float = Field(DEFAULTS.x0, ge=0.0, le=1.0, description="Initial adherence")
    n0: float = Field(DEFAULTS.n0, gt=0.0, description="Initial pseudo-count")
    heterogeneous: bool = Field(False, description="Sample alpha, beta, p per driver")
    alpha_range: Tuple[float, float] = (1.0, 50.0)
    beta_range: Tuple[float, float] = (1.0, 50.0)
    p_range: Tuple[float, float] = (0.0, 1.0)


class Tolerances(BaseModel):
    model_config = ConfigDict(extra="forbid")

    delta_u: float = Field(SOLVER.delta_u, gt=0.0)
    delta_x: float = Field(SOLVER.delta_x, gt=0.0)
    epsilon: float = Field(SOLVER.epsilon, gt=0.0)


class ExperimentConfig(BaseModel):
    """Everything needed to reproduce one experiment run."""

    model_config = ConfigDict(extra="forbid")

    experiment: ExperimentName
    params: ModelParams
    init: InitSpec = Field(default_factory=InitSpec)
    horizon: int = Field(DEFAULTS.steady_state_horizon, ge=0, description="Epochs T")
    runs: int = Field(1, ge=1, description="Monte Carlo runs M")
    seed: int = Field(0, ge=0)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output_path: str = "results"
    output_format: Literal["csv", "json"] = "csv"
    u_values: Optional[List[float]] = Field(
        None, description="Controls for trajectory, error-decay and frontier experiments"
    )
    x_floor: Optional[float] = Field(None, gt=0.0, lt=1.0)
    grid_size: int = Field(10_000, ge=100, description="Fixed-point scan grid")
    frontier_method: Literal["equilibrium", "transient"] = "equilibrium"
    steady_state_window: int = Field(DEFAULTS.steady_state_window, ge=1)
    decay_window: Tuple[int, int] = (100, 10_000)
    certificate_resolution: int = Field(200, ge=100)
    workers: int = Field(1, ge=1)

    @field_validator("u_values", mode="before")
    @classmethod
    def _single_control_as_list(cls, v: Any) -> Any:
        if isinstance(v, (str, int, float)):
            return [v]
        return v

    @field_validator("u_values")
    @classmethod
    def _controls_in_unit_interval(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None:
            if not v:
                raise ValueError("u_values must not be empty")
            if any(not 0.0 <= u <= 1.0 for u in v):
                raise ValueError("every u must lie in [0, 1]")
        return v

    @model_validator(mode="after")
    def _experiment_requirements(self) -> "ExperimentConfig":
        if self.experiment == ExperimentName.OPTIMAL_U and self.x_floor is None:
            raise ValueError("x_floor is required for optimal-u")
        lo, hi = self.decay_window
        if not 1 <= lo < hi:
            raise ValueError("decay_window must satisfy 1 <= start < end")
        return self

    def controls(self) -> List[float]:
        """u_values, or the single control in params."""
        return list(self.u_values) if self.u_values is not None else [self.params.u]


def _parse_scalar(raw: str) -> Any:
    value = raw.strip()
    if "," in value:
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


def parse_key_value(text: str) -> Dict[str, Any]:
    """Parse ``key = value`` lines into a nested dict (values stay strings)."""
    data: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{line}'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        node = data
        parts = key.split(".")
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"line {lineno}: '{part}' is both a value and a section", field=key)
            node = child
        node[parts[-1]] = _parse_scalar(raw)
    return data


def _first_error_field(error: ValidationError) -> Optional[str]:
    errors = error.errors()
    if not errors:
        return None
    return ".".join(str(part) for part in errors[0]["loc"]) or None


def build_config(data: Dict[str, Any]) -> ExperimentConfig:
    """Validate a raw mapping; manifests are unwrapped to their config."""
    if "manifest_version" in data:
        data = data.get("config", {})
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        field = _first_error_field(e)
        message = e.errors()[0]["msg"] if e.errors() else str(e)
        raise ConfigError(f"invalid config field '{field}': {message}", field=field) from e


def load_config(path: Path) -> ExperimentConfig:
    """Load a JSON or key-value config file (or a manifest).

    Raises:
        ConfigError: If the file is missing, unparsable or invalid
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}", field="config")
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})", field="config") from e
    else:
        data = parse_key_value(text)
    config = build_config(data)
    logger.info(f"Loaded {config.experiment.value} config from {path}")
    return config


def recipe_path(name: str) -> Path:
    """Path of a shipped recipe, with or without extension."""
    for candidate in (RECIPES_DIR / name, RECIPES_DIR / f"{name}.cfg", RECIPES_DIR / f"{name}.json"):
        if candidate.is_file():
            return candidate
    raise ConfigError(f"unknown recipe '{name}' (available: {', '.join(list_recipes())})", field="recipe")


def list_recipes() -> List[str]:
    return sorted(p.stem for p in RECIPES_DIR.iterdir() if p.suffix in (".cfg", ".json"))


def load_recipe(name: str) -> ExperimentConfig:
    return load_config(recipe_path(name))
