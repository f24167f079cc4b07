"""Throughput-maximizing constant control under an adherence floor.

Steady-state adherence is nonincreasing and throughput is increasing in u on
[p, 1], so the optimum is the largest control whose equilibrium adherence
still meets the floor. It is located by bisection on feasibility.
"""

import logging
from typing import Optional

import numpy as np

from ..config import SOLVER
from ..demand import PoissonTable, build_poisson_table
from ..equilibrium import bisect_predicate, solve_x_star
from ..errors import InvalidParameterError
from ..schemas import ControlStatus, ModelParams, OptimalControlResult

logger = logging.getLogger(__name__)


def _check_floor(x_floor: float) -> None:
    if not 0.0 < x_floor < 1.0:
        raise InvalidParameterError(f"x_floor must lie in (0, 1), got {x_floor}")


def optimal_u(
    params: ModelParams,
    x_floor: float,
    delta_u: float = SOLVER.delta_u,
    delta_x: float = SOLVER.delta_x,
    table: Optional[PoissonTable] = None,
) -> OptimalControlResult:
    """Largest feasible control by bisection on equilibrium solves.

    Feasible(u) holds when x*(u) >= x_floor (equality counts as feasible).

    Args:
        params: Model parameters (params.u is ignored)
        x_floor: Adherence floor in (0, 1)
        delta_u: Final bracket width in u
        delta_x: Bracket width of each equilibrium solve
        table: Poisson table; built from params when omitted

    Returns:
        OptimalControlResult with status infeasible (floor above x*(p)),
        saturated_at_one (floor met at u = 1) or optimal
    """
    _check_floor(x_floor)
    if not (delta_u > 0 and delta_x > 0):
        raise InvalidParameterError(
            f"tolerances must be positive, got delta_u={delta_u}, delta_x={delta_x}"
        )
    if table is None:
        table = build_poisson_table(params.lam, params.k_agents)

    p = params.p_base

    def adherence(u: float) -> float:
        return solve_x_star(u, params, table, delta_x).x_star

    def feasible(u: float) -> bool:
        return adherence(u) >= x_floor

    def result(status: ControlStatus, u_star: Optional[float], iterations: int):
        x = throughput = None
        if u_star is not None:
            x = adherence(u_star)
            throughput = (p + (u_star - p) * x) * x
        return OptimalControlResult(
            status=status,
            u_star=u_star,
            x_at_u_star=x,
            throughput_at_u_star=throughput,
            iterations=iterations,
            x_floor=x_floor,
            delta_u=delta_u,
            delta_x=delta_x,
        )

    if not feasible(p):
        logger.warning(f"Adherence floor {x_floor} infeasible: x*(p) < floor")
        return result(ControlStatus.INFEASIBLE, None, 0)
    if feasible(1.0):
        logger.info(f"Adherence floor {x_floor} met at u=1")
        return result(ControlStatus.SATURATED_AT_ONE, 1.0, 0)

    u_star, iterations = bisect_predicate(feasible, p, 1.0, delta_u)
    outcome = result(ControlStatus.OPTIMAL, u_star, iterations)
    logger.info(
        f"Optimal control: u*={u_star:.7f}, x*={outcome.x_at_u_star:.7f}, "
        f"throughput={outcome.throughput_at_u_star:.6f}, iterations={iterations}"
    )
    return outcome


def grid_scan_u_max(
    params: ModelParams,
    x_floor: float,
    table: PoissonTable,
    points: int = 10_000,
    delta_x: float = SOLVER.delta_x,
) -> Optional[float]:
    """Largest feasible control on a uniform grid over [p, 1], or None."""
    _check_floor(x_floor)
    if points < 2:
        raise InvalidParameterError(f"points must be >= 2, got {points}")
    best = None
    for u in np.linspace(params.p_base, 1.0, points):
        if solve_x_star(float(u), params, table, delta_x).x_star >= x_floor:
            best = float(u)
    return best
