"""Grid scan for all fixed points, including the multi-equilibrium regime."""

import logging

import numpy as np
import pandas as pd

from ..config import SOLVER
from ..demand import PoissonTable, eval_g_many, eval_g_prime
from ..errors import InvalidParameterError
from ..schemas import FixedPointScan, ModelParams
from .bisection import bisect_sign
from .fixed_point import effective_supply, phi, phi_many

logger = logging.getLogger(__name__)

MIN_GRID_SIZE = 100


def scan_fixed_points(
    u: float,
    params: ModelParams,
    table: PoissonTable,
    grid_size: int = 10_000,
) -> FixedPointScan:
    """Roots of Phi(.; u) on [0, 1].

    Every sign change between neighbouring grid points is refined by
    bisection; roots closer than the dedup threshold are merged. Interior
    local minima of |Phi| below the tangency tolerance with no sign change
    are reported separately as tangential near-roots.

    Args:
        u: Control intensity
        params: Model parameters (params.u is ignored)
        table: Poisson table
        grid_size: Number of grid points (>= 100)

    Returns:
        FixedPointScan with the grid and residuals for plotting
    """
    if grid_size < MIN_GRID_SIZE:
        raise InvalidParameterError(f"grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}")

    xs = np.linspace(0.0, 1.0, grid_size)
    values = phi_many(xs, u, params, table)

    def residual(x: float) -> float:
        return phi(x, u, params, table)

    candidates = []
    for i in range(grid_size - 1):
        f0, f1 = values[i], values[i + 1]
        if f0 == 0.0:
            candidates.append(float(xs[i]))
        elif f1 != 0.0 and (f0 > 0) != (f1 > 0):
            root, _ = bisect_sign(residual, float(xs[i]), float(xs[i + 1]), SOLVER.root_refine)
            candidates.append(root)
    if values[-1] == 0.0:
        candidates.append(float(xs[-1]))

    roots = []
    for root in sorted(candidates):
        if not roots or root - roots[-1] >= SOLVER.root_dedup:
            roots.append(root)

    spacing = xs[1] - xs[0]
    tangential = []
    magnitude = np.abs(values)
    for i in range(1, grid_size - 1):
        if magnitude[i] >= SOLVER.tangent_tolerance or values[i] == 0.0:
            continue
        same_sign = (values[i - 1] > 0) == (values[i] > 0) == (values[i + 1] > 0)
        local_min = magnitude[i] <= magnitude[i - 1] and magnitude[i] <= magnitude[i + 1]
        near_root = any(abs(xs[i] - r) <= spacing for r in roots)
        if same_sign and local_min and not near_root:
            tangential.append(float(xs[i]))

    logger.info(
        f"Fixed-point scan u={u}: {len(roots)} root(s) {[round(r, 6) for r in roots]}, "
        f"{len(tangential)} tangential"
    )
    return FixedPointScan(
        roots=roots, tangential=tangential, x_grid=xs.tolist(), phi=values.tolist()
    )


def fixed_point_map(
    u: float, params: ModelParams, table: PoissonTable, grid_size: int = 1001
) -> pd.DataFrame:
    """Tabulate s(x) and its slope ds/dx = (K-1)(u-p) g'(a(x)).

    Returns:
        DataFrame with columns x, a, s, s_slope
    """
    if grid_size < 2:
        raise InvalidParameterError(f"grid_size must be >= 2, got {grid_size}")
    xs = np.linspace(0.0, 1.0, grid_size)
    a = effective_supply(xs, u, params)
    scale = (params.k_agents - 1) * (u - params.p_base)
    return pd.DataFrame(
        {
            "x": xs,
            "a": a,
            "s": eval_g_many(a, table),
            "s_slope": [scale * eval_g_prime(float(v), table) for v in a],
        }
    )
