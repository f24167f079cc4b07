"""Poisson demand table.

Precomputes pmf and CDF values F(k) = P(D <= k) for D ~ Poisson(lambda) so that
the allocation expectation g(a) can be evaluated in O(1).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson

from ..config import SOLVER
from ..errors import InvalidParameterError

logger = logging.getLogger(__name__)

# exp(-lambda) stays a normal float up to ~708; above this the recurrence
# is carried in log space.
EXP_UNDERFLOW_LAMBDA = 700.0


@dataclass(frozen=True)
class PoissonTable:
    """Immutable pmf/CDF table for Poisson demand.

    Attributes:
        lam: Expected demand per epoch
        pmf: pmf[k] = P(D = k), k = 0..k_max
        cdf: cdf[k] = P(D <= k), k = 0..k_max
        k_max: Largest tabulated count (>= the requested cap)
    """

    lam: float
    pmf: np.ndarray
    cdf: np.ndarray
    k_max: int

    def F(self, k: int) -> float:
        """CDF with the convention F(k) = 0 for k < 0."""
        if k < 0:
            return 0.0
        return float(self.cdf[k])

    def F_many(self, k: np.ndarray) -> np.ndarray:
        """Vectorized F(k); entries with k < 0 map to 0."""
        k = np.asarray(k, dtype=np.int64)
        values = self.cdf[np.clip(k, 0, self.k_max)]
        return np.where(k < 0, 0.0, values)

    @property
    def tail(self) -> float:
        """Mass beyond k_max neglected by the table."""
        return max(0.0, 1.0 - float(self.cdf[-1]))


def _pmf_by_recurrence(lam: float, k_max: int) -> np.ndarray:
    """pmf[k] = pmf[k-1] * lam / k starting from pmf[0] = exp(-lam)."""
    ratios = lam / np.arange(1, k_max + 1, dtype=float)
    if lam <= EXP_UNDERFLOW_LAMBDA:
        factors = np.concatenate(([math.exp(-lam)], ratios))
        return np.cumprod(factors)

    # Same recurrence in log space; the drift of the running sum is
    # removed by renormalizing.
    log_pmf = np.concatenate(([-lam], -lam + np.cumsum(np.log(ratios))))
    pmf = np.exp(log_pmf - log_pmf.max())
    return pmf / pmf.sum()


def build_poisson_table(
    lam: float, k_cap: int, tail_tolerance: float = SOLVER.tail_tolerance
) -> PoissonTable:
    """Build the Poisson table up to max(k_cap, tail point).

    Args:
        lam: Expected demand per epoch (> 0)
        k_cap: Smallest k_max the caller needs, usually the population size K
        tail_tolerance: Largest admissible neglected mass 1 - F(k_max)

    Returns:
        PoissonTable

    Raises:
        InvalidParameterError: If lam <= 0 or k_cap < 1
    """
    if not lam > 0 or not math.isfinite(lam):
        raise InvalidParameterError(f"lambda must be positive and finite, got {lam}")
    if k_cap < 1:
        raise InvalidParameterError(f"k_cap must be >= 1, got {k_cap}")

    tail_point = int(poisson.isf(tail_tolerance, lam))
    k_max = max(int(k_cap), tail_point)

    while True:
        pmf = _pmf_by_recurrence(lam, k_max)
        cdf = np.minimum(np.cumsum(pmf), 1.0)
        if 1.0 - cdf[-1] <= tail_tolerance:
            break
        # quantile rounded on the wrong side
        k_max += max(1, int(math.sqrt(lam)))

    pmf.setflags(write=False)
    cdf.setflags(write=False)
    logger.debug(f"Built Poisson table: lambda={lam}, k_max={k_max}, tail={1.0 - cdf[-1]:.3e}")
    return PoissonTable(lam=float(lam), pmf=pmf, cdf=cdf, k_max=k_max)
