"""Deterministic mean-field recursion for population adherence.

With q = (1 - x) p + u x and s = g(1 + (K-1) q):

    n' = n + q
    x' = x + gamma (s - x),   gamma = q / (n + q)

Equivalently alpha' = alpha + q s and n' = n + q with x = alpha / n.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from ..demand import PoissonTable, build_poisson_table, eval_g
from ..errors import InvalidParameterError
from ..schemas import ModelParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeanFieldState:
    """Population adherence x_bar, mean pseudo-count n_bar and epoch."""

    x_bar: float
    n_bar: float
    epoch: int = 0

    def __post_init__(self):
        if not 0.0 <= self.x_bar <= 1.0:
            raise InvalidParameterError(f"x_bar must lie in [0, 1], got {self.x_bar}")
        if not self.n_bar > 0:
            raise InvalidParameterError(f"n_bar must be positive, got {self.n_bar}")


@dataclass(frozen=True)
class StepDiagnostics:
    """Quantities evaluated at the state a step starts from."""

    q_bar: float
    s: float
    gamma: float

    @property
    def throughput(self) -> float:
        """Expected allocations per driver in the epoch, q_bar * s."""
        return self.q_bar * self.s


def step_diagnostics(
    state: MeanFieldState, params: ModelParams, table: PoissonTable
) -> StepDiagnostics:
    """q_bar, s and gamma at ``state`` without advancing it."""
    p, u = params.p_base, params.u
    q_bar = (1.0 - state.x_bar) * p + u * state.x_bar
    s = eval_g(1.0 + (params.k_agents - 1) * q_bar, table)
    gamma = q_bar / (state.n_bar + q_bar)
    return StepDiagnostics(q_bar=q_bar, s=s, gamma=gamma)


def mf_step(
    state: MeanFieldState, params: ModelParams, table: PoissonTable
) -> Tuple[MeanFieldState, StepDiagnostics]:
    """Advance the recursion by one epoch.

    Returns:
        (next state, diagnostics evaluated at ``state``)
    """
    diag = step_diagnostics(state, params, table)
    x_next = state.x_bar + diag.gamma * (diag.s - state.x_bar)
    # convex combination of x_bar and s; clamp rounding only
    x_next = min(1.0, max(0.0, x_next))
    nxt = MeanFieldState(
        x_bar=x_next, n_bar=state.n_bar + diag.q_bar, epoch=state.epoch + 1
    )
    return nxt, diag


@dataclass(frozen=True, eq=False)
class MeanFieldTrajectory:
    """T + 1 states with the diagnostics evaluated at each of them."""

    t: np.ndarray
    x_bar: np.ndarray
    n_bar: np.ndarray
    q_bar: np.ndarray
    s: np.ndarray
    gamma: np.ndarray

    @property
    def horizon(self) -> int:
        return int(self.t.size) - 1

    @property
    def throughput(self) -> np.ndarray:
        return self.q_bar * self.s

    @property
    def final(self) -> MeanFieldState:
        return MeanFieldState(
            x_bar=float(self.x_bar[-1]), n_bar=float(self.n_bar[-1]), epoch=int(self.t[-1])
        )

    def states(self) -> List[MeanFieldState]:
        return [
            MeanFieldState(x_bar=float(x), n_bar=float(n), epoch=int(t))
            for t, x, n in zip(self.t, self.x_bar, self.n_bar)
        ]

    def to_frame(self) -> pd.DataFrame:
        """Columns t, x_bar, n_bar, q_bar, s, gamma, throughput."""
        return pd.DataFrame(
            {
                "t": self.t,
                "x_bar": self.x_bar,
                "n_bar": self.n_bar,
                "q_bar": self.q_bar,
                "s": self.s,
                "gamma": self.gamma,
                "throughput": self.throughput,
            }
        )


def _check_initial(x0: float, n0: float, horizon: int) -> None:
    if not 0.0 <= x0 <= 1.0:
        raise InvalidParameterError(f"x0 must lie in [0, 1], got {x0}")
    if not n0 > 0:
        raise InvalidParameterError(f"n0 must be positive, got {n0}")
    if horizon < 0:
        raise InvalidParameterError(f"horizon must be >= 0, got {horizon}")


def mf_trajectory(
    params: ModelParams,
    x0: float,
    n0: float,
    horizon: int,
    table: Optional[PoissonTable] = None,
) -> MeanFieldTrajectory:
    """Iterate mf_step for ``horizon`` epochs from (x0, n0).

    Args:
        params: Model parameters including the control u
        x0: Initial adherence
        n0: Initial mean pseudo-count (> 0)
        horizon: Number of epochs T (>= 0)
        table: Poisson table; built from params when omitted

    Returns:
        MeanFieldTrajectory with T + 1 rows
    """
    _check_initial(x0, n0, horizon)
    if table is None:
        table = build_poisson_table(params.lam, params.k_agents)

    size = horizon + 1
    x_bar = np.empty(size)
    n_bar = np.empty(size)
    q_bar = np.empty(size)
    s = np.empty(size)
    gamma = np.empty(size)

    state = MeanFieldState(x_bar=float(x0), n_bar=float(n0))
    for t in range(size):
        if t < horizon:
            nxt, diag = mf_step(state, params, table)
        else:
            nxt, diag = None, step_diagnostics(state, params, table)
        x_bar[t], n_bar[t] = state.x_bar, state.n_bar
        q_bar[t], s[t], gamma[t] = diag.q_bar, diag.s, diag.gamma
        state = nxt

    logger.debug(f"Mean-field trajectory u={params.u}, T={horizon}: x_bar(T)={x_bar[-1]:.6f}")
    return MeanFieldTrajectory(
        t=np.arange(size), x_bar=x_bar, n_bar=n_bar, q_bar=q_bar, s=s, gamma=gamma
    )


def mf_trajectory_pooled(
    params: ModelParams,
    x0: float,
    n0: float,
    horizon: int,
    table: Optional[PoissonTable] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Evolve (alpha_bar, n_bar) and return (alpha_bar / n_bar, n_bar)."""
    _check_initial(x0, n0, horizon)
    if table is None:
        table = build_poisson_table(params.lam, params.k_agents)

    p, u, k = params.p_base, params.u, params.k_agents
    alpha_bar, n_bar = x0 * n0, float(n0)
    xs = np.empty(horizon + 1)
    ns = np.empty(horizon + 1)
    for t in range(horizon + 1):
        x = alpha_bar / n_bar
        xs[t], ns[t] = x, n_bar
        q = (1.0 - x) * p + u * x
        alpha_bar += q * eval_g(1.0 + (k - 1) * q, table)
        n_bar += q
    return xs, ns
