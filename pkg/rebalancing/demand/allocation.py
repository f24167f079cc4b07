"""Allocation expectation g(a) = E[min(1, D/a)] for Poisson demand.

g is the probability that a participating driver is matched when the
effective supply is a = 1 + (K-1) q. Closed form, with k0 = ceil(a):

    g(a) = 1 - F(k0 - 1) + (lambda / a) F(k0 - 2)

and on each open interval (n, n+1)

    g'(a) = -(lambda / a^2) F(n - 1).
"""

import logging
import math

import numpy as np
from scipy.stats import poisson

from ..errors import DomainError, InvalidParameterError, TableTooSmallError
from .poisson import PoissonTable

logger = logging.getLogger(__name__)

ORACLE_TAIL = 1e-13


def _check_supply(a: float) -> None:
    if not a > 0:
        raise DomainError(f"effective supply must be positive, got a={a}")


def eval_g(a: float, table: PoissonTable) -> float:
    """Evaluate g(a) from the precomputed CDF.

    Args:
        a: Effective supply (> 0)
        table: Poisson table with k_max >= ceil(a)

    Returns:
        g(a) in [0, 1]

    Raises:
        DomainError: If a <= 0
        TableTooSmallError: If ceil(a) > table.k_max
    """
    _check_supply(a)
    k0 = math.ceil(a)
    if k0 > table.k_max:
        raise TableTooSmallError(a, table.k_max)
    value = 1.0 - table.F(k0 - 1) + (table.lam / a) * table.F(k0 - 2)
    return min(1.0, max(0.0, value))


def eval_g_many(a: np.ndarray, table: PoissonTable) -> np.ndarray:
    """Vectorized eval_g over an array of effective supplies."""
    a = np.asarray(a, dtype=float)
    if np.any(~(a > 0)):
        raise DomainError("effective supply must be positive")
    k0 = np.ceil(a).astype(np.int64)
    if k0.size and int(k0.max()) > table.k_max:
        raise TableTooSmallError(float(a.max()), table.k_max)
    values = 1.0 - table.F_many(k0 - 1) + (table.lam / a) * table.F_many(k0 - 2)
    return np.clip(values, 0.0, 1.0)


def eval_g_prime(a: float, table: PoissonTable) -> float:
    """Slope of g.

    g is differentiable only off the integers. At an integer a the
    right-hand derivative (using floor(a)) is returned; this is the larger
    of the two one-sided slopes in magnitude.

    Raises:
        DomainError: If a <= 0
        TableTooSmallError: If floor(a) - 1 > table.k_max
    """
    _check_supply(a)
    n = math.floor(a)
    if n - 1 > table.k_max:
        raise TableTooSmallError(a, table.k_max)
    if n == a:
        logger.debug(f"g'({a}) at an integer: returning right-hand derivative")
    return -(table.lam / (a * a)) * table.F(n - 1)


def g_oracle(a: float, lam: float) -> float:
    """Brute-force E[min(1, D/a)] by direct summation over the pmf.

    Independent of the table and of the closed form: the pmf comes from
    scipy and the sum runs until the neglected tail mass is below 1e-13.
    """
    _check_supply(a)
    if not lam > 0:
        raise InvalidParameterError(f"lambda must be positive, got {lam}")
    m = int(poisson.isf(ORACLE_TAIL, lam)) + 1
    k = np.arange(m + 1, dtype=float)
    return float(np.sum(poisson.pmf(k, lam) * np.minimum(1.0, k / a)))
