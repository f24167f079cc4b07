"""One epoch of the microscopic dynamics.

Within an epoch the random stream is consumed in a fixed order:
participation (one uniform per driver, in agent order), then demand
(one Poisson draw), then the matching shuffle (one uniform per slot).
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..demand import PoissonTable
from ..errors import InvalidParameterError
from .agents import EpochOutcome, MicroState, participation_probabilities

logger = logging.getLogger(__name__)


def uniform_match(
    active: Sequence[int], demand: int, rng: np.random.Generator
) -> np.ndarray:
    """Pick min(demand, len(active)) active drivers uniformly without replacement.

    Partial Fisher-Yates shuffle of the active index list: slot i swaps with a
    uniformly chosen position in [i, n). The uniforms for all slots are drawn
    in one call.

    Args:
        active: Indices of participating drivers
        demand: Number of requests in the epoch
        rng: Random stream

    Returns:
        Indices of the matched drivers
    """
    if demand < 0:
        raise InvalidParameterError(f"demand must be >= 0, got {demand}")
    pool = [int(i) for i in active]
    n = len(pool)
    m = min(int(demand), n)
    if m == 0:
        return np.empty(0, dtype=np.int64)

    draws = rng.random(m).tolist()
    for i in range(m):
        j = min(i + int(draws[i] * (n - i)), n - 1)
        pool[i], pool[j] = pool[j], pool[i]
    return np.array(pool[:m], dtype=np.int64)


def sample_epoch(
    state: MicroState,
    u: float,
    table: PoissonTable,
    rng: np.random.Generator,
    demand_override: Optional[int] = None,
) -> EpochOutcome:
    """Draw participation, demand and allocation for one epoch.

    Args:
        state: Population at epoch t
        u: Recommendation intensity
        table: Poisson table (supplies lambda)
        rng: Random stream positioned for this epoch
        demand_override: Fixed demand instead of a Poisson draw; no demand draw
            is consumed when given. Pass a value >= K to disable rationing.

    Returns:
        EpochOutcome
    """
    q = participation_probabilities(state, u)
    participation = rng.random(state.k_agents) < q

    if demand_override is None:
        demand = int(rng.poisson(table.lam))
    else:
        if demand_override < 0:
            raise InvalidParameterError(f"demand_override must be >= 0, got {demand_override}")
        demand = int(demand_override)

    winners = uniform_match(np.flatnonzero(participation), demand, rng)
    allocation = np.zeros(state.k_agents, dtype=bool)
    allocation[winners] = True
    return EpochOutcome(participation=participation, demand=demand, allocation=allocation, q=q)


def update_beliefs(state: MicroState, outcome: EpochOutcome) -> MicroState:
    """Beta-Bernoulli conjugate update.

    alpha_i += A_i and beta_i += (1 - A_i) B_i; drivers that did not
    participate keep their beliefs.
    """
    if outcome.participation.shape != state.alpha.shape:
        raise InvalidParameterError("outcome does not match the population size")
    allocated = outcome.allocation.astype(float)
    participated = outcome.participation.astype(float)
    return MicroState(
        alpha=state.alpha + allocated,
        beta=state.beta + (1.0 - allocated) * participated,
        p_base=state.p_base,
        epoch=state.epoch + 1,
    )
