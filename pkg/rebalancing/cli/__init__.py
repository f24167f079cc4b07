"""Command-line front end: configs, recipes and artifact emission."""

from .config import ExperimentConfig, ExperimentName, load_config, load_recipe
from .experiments import (
    EXIT_INFEASIBLE,
    EXIT_INVALID_CONFIG,
    EXIT_OK,
    ExperimentOutcome,
    run_experiment,
)

__all__ = [
    "EXIT_INFEASIBLE",
    "EXIT_INVALID_CONFIG",
    "EXIT_OK",
    "ExperimentConfig",
    "ExperimentName",
    "ExperimentOutcome",
    "load_config",
    "load_recipe",
    "run_experiment",
]
