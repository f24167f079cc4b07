"""Sufficient condition for strictly increasing steady-state throughput.

The throughput Gamma(u) is strictly increasing on [p, 1] when

    (K-1) sup|g'(a*(u))| * sup(p + 2 (u-p) x_inf(u)) < inf x_inf(u)

with suprema and infima over u in [p, 1]. They are approximated on a uniform
grid augmented with every control where a*(u) = 1 + (K-1) q*(u) crosses an
integer, since |g'| jumps exactly there.
"""

import logging
import math
from typing import Dict, List

import numpy as np

from ..config import SOLVER
from ..demand import PoissonTable, eval_g_prime
from ..equilibrium import bisect_sign, solve_x_star
from ..errors import InvalidParameterError
from ..schemas import ModelParams, MonotonicityCertificate

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 100
CROSSING_TOLERANCE = 1e-9


def throughput_monotonicity_certificate(
    params: ModelParams,
    table: PoissonTable,
    resolution: int = 200,
    delta_x: float = SOLVER.delta_x,
) -> MonotonicityCertificate:
    """Evaluate both sides of the throughput-monotonicity condition.

    Args:
        params: Model parameters (params.u is ignored)
        table: Poisson table
        resolution: Number of grid intervals on [p, 1] (>= 100)
        delta_x: Bracket width for equilibrium solves

    Returns:
        MonotonicityCertificate; integer_crossings lists the controls where
        a*(u) is an integer
    """
    if resolution < MIN_RESOLUTION:
        raise InvalidParameterError(f"resolution must be >= {MIN_RESOLUTION}, got {resolution}")

    k, p = params.k_agents, params.p_base
    cache: Dict[float, float] = {}

    def x_inf(u: float) -> float:
        if u not in cache:
            cache[u] = solve_x_star(u, params, table, delta_x).x_star
        return cache[u]

    def supply(u: float) -> float:
        return 1.0 + (k - 1) * (p + (u - p) * x_inf(u))

    grid = [float(u) for u in np.linspace(p, 1.0, resolution + 1)]

    crossings: List[float] = []
    for lo, hi in zip(grid[:-1], grid[1:]):
        a_lo, a_hi = supply(lo), supply(hi)
        if math.floor(a_lo) == math.floor(a_hi):
            continue
        start, stop = sorted((a_lo, a_hi))
        for n in range(math.floor(start) + 1, math.floor(stop) + 1):
            u_cross, _ = bisect_sign(lambda u: supply(u) - n, lo, hi, CROSSING_TOLERANCE)
            crossings.append(u_cross)

    # |g'| at a crossing is taken at the integer itself (right-hand value)
    slopes = [abs(eval_g_prime(supply(u), table)) for u in grid]
    slopes += [abs(eval_g_prime(float(round(supply(u))), table)) for u in crossings]

    controls = grid + crossings
    weights = [p + 2.0 * (u - p) * x_inf(u) for u in controls]
    adherence = [x_inf(u) for u in controls]

    sup_slope = max(slopes)
    sup_weight = max(weights)
    inf_x = min(adherence)
    lhs = (k - 1) * sup_slope * sup_weight
    holds = lhs < inf_x

    if crossings:
        logger.warning(
            f"a*(u) crosses {len(crossings)} integer(s) on [p, 1]: "
            f"g' is one-sided there"
        )
    logger.info(f"Throughput monotonicity: lhs={lhs:.4g}, rhs={inf_x:.4g}, holds={holds}")
    return MonotonicityCertificate(
        holds=holds,
        lhs=lhs,
        rhs=inf_x,
        sup_abs_g_prime=sup_slope,
        sup_weight=sup_weight,
        inf_x_inf=inf_x,
        integer_crossings=sorted(crossings),
    )
