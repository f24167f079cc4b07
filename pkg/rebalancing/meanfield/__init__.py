"""Mean-field recursion, trajectories and convergence diagnostics."""

from ..schemas import ModelParams
from .convergence import (
    convergence_time,
    error_decay_slope,
    predicted_decay_exponent,
    steady_state_window,
)
from .recursion import (
    MeanFieldState,
    MeanFieldTrajectory,
    StepDiagnostics,
    mf_step,
    mf_trajectory,
    mf_trajectory_pooled,
    step_diagnostics,
)

__all__ = [
    "MeanFieldState",
    "MeanFieldTrajectory",
    "ModelParams",
    "StepDiagnostics",
    "convergence_time",
    "error_decay_slope",
    "mf_step",
    "mf_trajectory",
    "mf_trajectory_pooled",
    "predicted_decay_exponent",
    "step_diagnostics",
    "steady_state_window",
]
