"""Convergence diagnostics for mean-field trajectories."""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..config import DEFAULTS, SOLVER
from ..demand import PoissonTable, build_poisson_table, eval_g_prime
from ..errors import InvalidParameterError
from ..schemas import ModelParams
from .recursion import MeanFieldTrajectory, mf_trajectory

logger = logging.getLogger(__name__)

TrajectoryLike = Union[MeanFieldTrajectory, Sequence[float], np.ndarray]


def _adherence_series(traj: TrajectoryLike) -> np.ndarray:
    if isinstance(traj, MeanFieldTrajectory):
        return traj.x_bar
    return np.asarray(traj, dtype=float)


def convergence_time(
    traj: TrajectoryLike, x_star: float, epsilon: float = SOLVER.epsilon
) -> Optional[int]:
    """Smallest t after which every recorded x_bar stays within epsilon of x_star.

    Args:
        traj: Trajectory or sequence of x_bar values indexed by epoch
        x_star: Reference fixed point
        epsilon: Band half-width (> 0)

    Returns:
        The epoch, or None when the final sample lies outside the band
    """
    if not epsilon > 0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")
    x = _adherence_series(traj)
    if x.size == 0:
        raise InvalidParameterError("trajectory is empty")

    outside = np.abs(x - x_star) > epsilon
    if outside[-1]:
        logger.warning(
            f"epsilon-band not reached: |x(T) - x*| = {abs(x[-1] - x_star):.3e} > {epsilon}"
        )
        return None
    violations = np.flatnonzero(outside)
    return int(violations[-1]) + 1 if violations.size else 0


def steady_state_window(
    params: ModelParams,
    x0: float = DEFAULTS.x0,
    n0: float = DEFAULTS.n0,
    horizon: int = DEFAULTS.steady_state_horizon,
    window: int = DEFAULTS.steady_state_window,
    table: Optional[PoissonTable] = None,
) -> Tuple[float, float]:
    """Transient steady-state estimate: run T epochs, average the final W samples.

    Returns:
        (mean adherence, mean throughput q_bar * s) over the window
    """
    if not 1 <= window <= horizon + 1:
        raise InvalidParameterError(f"window must lie in [1, horizon + 1], got {window}")
    traj = mf_trajectory(params, x0, n0, horizon, table)
    return float(traj.x_bar[-window:].mean()), float(traj.throughput[-window:].mean())


def error_decay_slope(
    traj: TrajectoryLike,
    x_star: float,
    t_min: int = 100,
    t_max: int = 10_000,
) -> float:
    """Least-squares slope of log|x_bar(t) - x_star| against log t on [t_min, t_max].

    Epochs where the error is exactly zero are skipped.
    """
    if not 1 <= t_min < t_max:
        raise InvalidParameterError(f"need 1 <= t_min < t_max, got ({t_min}, {t_max})")
    x = _adherence_series(traj)
    t = np.arange(x.size)
    err = np.abs(x - x_star)
    mask = (t >= t_min) & (t <= t_max) & (err > 0)
    if np.count_nonzero(mask) < 2:
        raise InvalidParameterError("fewer than two usable samples in the regression window")
    slope, _ = np.polyfit(np.log(t[mask]), np.log(err[mask]), 1)
    return float(slope)


def predicted_decay_exponent(
    x_star: float, params: ModelParams, table: Optional[PoissonTable] = None
) -> float:
    """Local rate c of |x_bar(t) - x*| ~ t^(-c) from linearizing at x*.

    gamma(t) ~ 1/t near the fixed point, so the error contracts like
    t^(-(1 - s'(x*))) with s'(x) = (K-1)(u-p) g'(a(x)).
    """
    if table is None:
        table = build_poisson_table(params.lam, params.k_agents)
    k, p, u = params.k_agents, params.p_base, params.u
    a = 1.0 + (k - 1) * (p + (u - p) * x_star)
    slope = (k - 1) * (u - p) * eval_g_prime(a, table)
    return 1.0 - slope
