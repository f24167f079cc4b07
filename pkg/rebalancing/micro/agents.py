"""Driver beliefs and population state.

Each driver i carries Beta(alpha_i, beta_i) beliefs about being matched when
following a recommendation. Adherence is the posterior mean
x_i = alpha_i / (alpha_i + beta_i) and n_i = alpha_i + beta_i is the
pseudo-count.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AgentState:
    """One driver's Beta parameters and baseline participation."""

    alpha: float
    beta: float
    p_base: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise InvalidParameterError(
                f"Beta parameters must be positive, got alpha={self.alpha}, beta={self.beta}"
            )
        if not 0.0 <= self.p_base <= 1.0:
            raise InvalidParameterError(f"p_base must lie in [0, 1], got {self.p_base}")

    @property
    def x(self) -> float:
        """Adherence (posterior mean)."""
        return self.alpha / (self.alpha + self.beta)

    @property
    def n(self) -> float:
        """Pseudo-count."""
        return self.alpha + self.beta


@dataclass(eq=False)
class MicroState:
    """Population of K drivers stored column-wise.

    Attributes:
        alpha: Success pseudo-counts, shape (K,)
        beta: Failure pseudo-counts, shape (K,)
        p_base: Baseline participation probabilities, shape (K,)
        epoch: Epoch index t
    """

    alpha: np.ndarray
    beta: np.ndarray
    p_base: np.ndarray
    epoch: int = 0

    def __post_init__(self):
        self.alpha = np.asarray(self.alpha, dtype=float)
        self.beta = np.asarray(self.beta, dtype=float)
        self.p_base = np.asarray(self.p_base, dtype=float)
        if not (self.alpha.shape == self.beta.shape == self.p_base.shape) or self.alpha.ndim != 1:
            raise InvalidParameterError("alpha, beta and p_base must be 1-D arrays of equal length")
        if self.alpha.size < 1:
            raise InvalidParameterError("population must contain at least one driver")
        if np.any(self.alpha <= 0) or np.any(self.beta <= 0):
            raise InvalidParameterError("Beta parameters must be positive")
        if np.any((self.p_base < 0) | (self.p_base > 1)):
            raise InvalidParameterError("p_base must lie in [0, 1]")
        if self.epoch < 0:
            raise InvalidParameterError(f"epoch must be >= 0, got {self.epoch}")

    @property
    def k_agents(self) -> int:
        return int(self.alpha.size)

    @property
    def x(self) -> np.ndarray:
        return self.alpha / (self.alpha + self.beta)

    @property
    def n(self) -> np.ndarray:
        return self.alpha + self.beta

    @property
    def agents(self) -> List[AgentState]:
        return [
            AgentState(alpha=float(a), beta=float(b), p_base=float(p))
            for a, b, p in zip(self.alpha, self.beta, self.p_base)
        ]

    @classmethod
    def from_agents(cls, agents: Sequence[AgentState], epoch: int = 0) -> "MicroState":
        return cls(
            alpha=np.array([a.alpha for a in agents], dtype=float),
            beta=np.array([a.beta for a in agents], dtype=float),
            p_base=np.array([a.p_base for a in agents], dtype=float),
            epoch=epoch,
        )

    @classmethod
    def homogeneous(
        cls, k_agents: int, alpha: float, beta: float, p_base: float
    ) -> "MicroState":
        """K identical drivers."""
        if k_agents < 1:
            raise InvalidParameterError(f"k_agents must be >= 1, got {k_agents}")
        return cls(
            alpha=np.full(k_agents, float(alpha)),
            beta=np.full(k_agents, float(beta)),
            p_base=np.full(k_agents, float(p_base)),
        )


@dataclass(frozen=True, eq=False)
class EpochOutcome:
    """Realized draws of one epoch.

    Attributes:
        participation: B_i(t), shape (K,) bool
        demand: D(t)
        allocation: A_i(t), shape (K,) bool
        q: Effective participation probabilities q_i(t)
    """

    participation: np.ndarray
    demand: int
    allocation: np.ndarray
    q: np.ndarray = field(repr=False)

    def __post_init__(self):
        if np.any(self.allocation & ~self.participation):
            raise InvalidParameterError("allocation without participation")

    @property
    def active_count(self) -> int:
        """N(t), the number of participating drivers."""
        return int(np.count_nonzero(self.participation))

    def congestion(self, i: int) -> int:
        """M_{-i}(t), participating drivers other than i."""
        return self.active_count - int(self.participation[i])


def effective_participation(agent: AgentState, u: float) -> float:
    """q_i = (1 - x_i) p_i + x_i u."""
    if not 0.0 <= u <= 1.0:
        raise InvalidParameterError(f"u must lie in [0, 1], got {u}")
    x = agent.x
    return (1.0 - x) * agent.p_base + x * u


def participation_probabilities(state: MicroState, u: float) -> np.ndarray:
    """Vectorized effective_participation for the whole population."""
    if not 0.0 <= u <= 1.0:
        raise InvalidParameterError(f"u must lie in [0, 1], got {u}")
    x = state.x
    return (1.0 - x) * state.p_base + x * u


def direct_mean(state: MicroState) -> float:
    """(1/K) sum_i x_i."""
    return float(np.mean(state.x))


def pooled_mean(state: MicroState) -> float:
    """sum_i alpha_i / sum_i n_i."""
    return float(state.alpha.sum() / state.n.sum())


def heterogeneous_population(
    k_agents: int,
    rng: np.random.Generator,
    alpha_range: Tuple[float, float] = (1.0, 50.0),
    beta_range: Tuple[float, float] = (1.0, 50.0),
    p_range: Tuple[float, float] = (0.0, 1.0),
) -> MicroState:
    """Population with continuous-uniform Beta parameters and baselines.

    Draw order is alpha (all agents), then beta, then p_base.
    """
    if k_agents < 1:
        raise InvalidParameterError(f"k_agents must be >= 1, got {k_agents}")
    for name, (lo, hi) in (("alpha", alpha_range), ("beta", beta_range)):
        if not 0 < lo <= hi:
            raise InvalidParameterError(f"{name}_range must satisfy 0 < lo <= hi, got ({lo}, {hi})")
    if not 0.0 <= p_range[0] <= p_range[1] <= 1.0:
        raise InvalidParameterError(f"p_range must lie in [0, 1], got {p_range}")

    alpha = rng.uniform(alpha_range[0], alpha_range[1], size=k_agents)
    beta = rng.uniform(beta_range[0], beta_range[1], size=k_agents)
    p_base = rng.uniform(p_range[0], p_range[1], size=k_agents)
    logger.debug(f"Sampled heterogeneous population of {k_agents} drivers")
    return MicroState(alpha=alpha, beta=beta, p_base=p_base)
