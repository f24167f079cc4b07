"""Exact allocation probability under Poisson-binomial congestion."""

import logging
from typing import Sequence

import numpy as np

from ..demand import PoissonTable, eval_g_many
from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)

MAX_EXACT_AGENTS = 2000


def poisson_binomial_pmf(probabilities: Sequence[float]) -> np.ndarray:
    """pmf of the number of successes among independent Bernoulli trials.

    Coefficients of the generating function prod_j (1 - q_j + q_j z),
    built one factor at a time.
    """
    pmf = np.array([1.0])
    for q in probabilities:
        nxt = np.zeros(len(pmf) + 1)
        nxt[:-1] = pmf * (1.0 - q)
        nxt[1:] += pmf * q
        pmf = nxt
    return pmf


def allocation_prob_exact(q: Sequence[float], tagged: int, table: PoissonTable) -> float:
    """s_i = sum_k P(M_{-i} = k) E[pi(D, k)] with E[pi(D, k)] = g(k + 1).

    Args:
        q: Effective participation probabilities of all K drivers
        tagged: Index of the tagged driver
        table: Poisson table with k_max >= K

    Returns:
        Probability that the tagged driver is matched given it participates
    """
    q = np.asarray(q, dtype=float)
    k_agents = q.size
    if k_agents < 1 or k_agents > MAX_EXACT_AGENTS:
        raise InvalidParameterError(
            f"exact allocation needs 1 <= K <= {MAX_EXACT_AGENTS}, got {k_agents}"
        )
    if not 0 <= tagged < k_agents:
        raise InvalidParameterError(f"tagged index {tagged} out of range for K={k_agents}")
    if np.any((q < 0) | (q > 1)):
        raise InvalidParameterError("participation probabilities must lie in [0, 1]")

    congestion_pmf = poisson_binomial_pmf(np.delete(q, tagged))
    expected_share = eval_g_many(np.arange(1, k_agents + 1, dtype=float), table)
    return float(np.clip(congestion_pmf @ expected_share, 0.0, 1.0))
