"""Monte Carlo harness for the microscopic model."""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..demand import PoissonTable, build_poisson_table
from ..errors import InvalidParameterError
from ..schemas import ModelParams
from .agents import MicroState, direct_mean, pooled_mean
from .stepper import sample_epoch, update_beliefs
from .streams import make_run_stream

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MonteCarloResult:
    """Per-run direct and pooled adherence series.

    Attributes:
        direct: Shape (runs, horizon + 1); (1/K) sum_i x_i per run and epoch
        pooled: Shape (runs, horizon + 1); sum_i alpha_i / sum_i n_i
        seed: Master seed
    """

    direct: np.ndarray
    pooled: np.ndarray
    seed: int

    @property
    def runs(self) -> int:
        return int(self.direct.shape[0])

    @property
    def horizon(self) -> int:
        return int(self.direct.shape[1]) - 1

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.horizon + 1)

    @property
    def mean_direct(self) -> np.ndarray:
        return self.direct.mean(axis=0)

    @property
    def mean_pooled(self) -> np.ndarray:
        return self.pooled.mean(axis=0)

    def to_frame(self) -> pd.DataFrame:
        """Long table with columns run, t, direct_mean, pooled_mean."""
        runs, steps = self.direct.shape
        return pd.DataFrame(
            {
                "run": np.repeat(np.arange(runs), steps),
                "t": np.tile(np.arange(steps), runs),
                "direct_mean": self.direct.ravel(),
                "pooled_mean": self.pooled.ravel(),
            }
        )

    def summary(self) -> Dict[str, Any]:
        """Monte Carlo averages per epoch."""
        return {
            "runs": self.runs,
            "horizon": self.horizon,
            "seed": self.seed,
            "t": self.t.tolist(),
            "direct_mean": self.mean_direct.tolist(),
            "pooled_mean": self.mean_pooled.tolist(),
        }


def _simulate_run(
    initial: MicroState,
    u: float,
    table: PoissonTable,
    horizon: int,
    rng: np.random.Generator,
) -> Tuple[np.ndarray, np.ndarray]:
    direct = np.empty(horizon + 1)
    pooled = np.empty(horizon + 1)
    state = initial
    direct[0] = direct_mean(state)
    pooled[0] = pooled_mean(state)
    for t in range(1, horizon + 1):
        outcome = sample_epoch(state, u, table, rng)
        state = update_beliefs(state, outcome)
        direct[t] = direct_mean(state)
        pooled[t] = pooled_mean(state)
    return direct, pooled


def run_monte_carlo(
    params: ModelParams,
    initial: MicroState,
    horizon: int,
    runs: int,
    seed: int,
    table: Optional[PoissonTable] = None,
    workers: int = 1,
) -> MonteCarloResult:
    """Simulate independent runs from a common initial population.

    Run m uses make_run_stream(seed, m) regardless of scheduling, so the
    result does not depend on ``workers``.

    Args:
        params: K, lambda and the control u (p_base comes from ``initial``)
        initial: Initial population; its size must equal params.k_agents
        horizon: Number of epochs T (>= 0)
        runs: Number of runs M (>= 1)
        seed: Master seed (>= 0)
        table: Poisson table; built from params when omitted
        workers: Threads used to execute runs

    Returns:
        MonteCarloResult
    """
    if runs < 1:
        raise InvalidParameterError(f"runs must be >= 1, got {runs}")
    if horizon < 0:
        raise InvalidParameterError(f"horizon must be >= 0, got {horizon}")
    if workers < 1:
        raise InvalidParameterError(f"workers must be >= 1, got {workers}")
    if initial.k_agents != params.k_agents:
        raise InvalidParameterError(
            f"initial population has {initial.k_agents} drivers, params.k_agents={params.k_agents}"
        )
    if table is None:
        table = build_poisson_table(params.lam, params.k_agents)

    logger.info(
        f"Monte Carlo: K={params.k_agents}, lambda={params.lam}, u={params.u}, "
        f"T={horizon}, M={runs}, seed={seed}, workers={workers}"
    )
    direct = np.empty((runs, horizon + 1))
    pooled = np.empty((runs, horizon + 1))

    def run(index: int) -> Tuple[int, np.ndarray, np.ndarray]:
        rng = make_run_stream(seed, index)
        d, p = _simulate_run(initial, params.u, table, horizon, rng)
        return index, d, p

    if workers == 1:
        for m in range(runs):
            _, direct[m], pooled[m] = run(m)
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="mc-run") as executor:
            futures = [executor.submit(run, m) for m in range(runs)]
            for future in as_completed(futures):
                m, d, p = future.result()
                direct[m] = d
                pooled[m] = p

    logger.info(
        f"Monte Carlo done: final direct={direct[:, -1].mean():.4f}, "
        f"pooled={pooled[:, -1].mean():.4f}"
    )
    return MonteCarloResult(direct=direct, pooled=pooled, seed=seed)
