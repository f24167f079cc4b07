"""Steady-state adherence and throughput under a constant control."""

import logging
import math
from typing import List, Literal, Sequence

from ..config import DEFAULTS, SOLVER
from ..demand import PoissonTable, eval_g, eval_g_prime
from ..equilibrium import solve_x_star
from ..errors import InvalidParameterError, RegimeError
from ..meanfield import steady_state_window
from ..schemas import ModelParams, SteadyStateMetrics

logger = logging.getLogger(__name__)

FrontierMethod = Literal["equilibrium", "transient"]


def steady_state_throughput(
    u: float, params: ModelParams, table: PoissonTable, delta_x: float = SOLVER.delta_x
) -> float:
    """Gamma(u) = (p + (u-p) x*) x* for any u with a certified unique x*."""
    x = solve_x_star(u, params, table, delta_x).x_star
    return (params.p_base + (u - params.p_base) * x) * x


def steady_state_metrics(
    u: float, params: ModelParams, table: PoissonTable, delta_x: float = SOLVER.delta_x
) -> SteadyStateMetrics:
    """x_inf, q* and throughput at the unique equilibrium for u in [p, 1].

    Raises:
        RegimeError: If u < p
    """
    if u < params.p_base:
        raise RegimeError(f"steady-state metrics need u >= p, got u={u} < p={params.p_base}")
    x = solve_x_star(u, params, table, delta_x).x_star
    q = params.p_base + (u - params.p_base) * x
    return SteadyStateMetrics(u=u, x_inf=x, q_star=q, throughput=q * x)


def gamma_prime_at_p(params: ModelParams, table: PoissonTable) -> float:
    """Slope of the steady-state throughput at u = p.

    x_p^2 + p (K-1) x_p g'(a_p) with a_p = 1 + (K-1) p and x_p = g(a_p).
    When a_p is an integer g' is one-sided and the right-hand value is used.
    """
    k, p = params.k_agents, params.p_base
    a_p = 1.0 + (k - 1) * p
    if a_p == math.floor(a_p):
        logger.warning(f"a_p={a_p} is an integer: using the right-hand derivative of g")
    x_p = eval_g(a_p, table)
    return x_p * x_p + p * (k - 1) * x_p * eval_g_prime(a_p, table)


def frontier(
    params: ModelParams,
    u_values: Sequence[float],
    table: PoissonTable,
    method: FrontierMethod = "equilibrium",
    delta_x: float = SOLVER.delta_x,
    x0: float = DEFAULTS.x0,
    n0: float = DEFAULTS.n0,
    horizon: int = DEFAULTS.steady_state_horizon,
    window: int = DEFAULTS.steady_state_window,
) -> List[SteadyStateMetrics]:
    """Adherence/throughput points for each control, in input order.

    Args:
        params: Model parameters (params.u is ignored)
        u_values: Controls, all >= p
        table: Poisson table
        method: "equilibrium" solves for x*; "transient" runs the mean-field
            recursion for ``horizon`` epochs from (x0, n0) and averages the
            final ``window`` samples
        delta_x: Bracket width for equilibrium solves

    Raises:
        RegimeError: If any u < p
    """
    below = [u for u in u_values if u < params.p_base]
    if below:
        raise RegimeError(f"frontier needs u >= p={params.p_base}, got {below}")
    if method not in ("equilibrium", "transient"):
        raise InvalidParameterError(f"unknown frontier method '{method}'")

    logger.info(f"Frontier ({method}) over {len(u_values)} controls")
    points = []
    for u in u_values:
        if method == "equilibrium":
            points.append(steady_state_metrics(u, params, table, delta_x))
            continue
        x_inf, throughput = steady_state_window(
            params.with_u(u), x0=x0, n0=n0, horizon=horizon, window=window, table=table
        )
        points.append(
            SteadyStateMetrics(
                u=u,
                x_inf=x_inf,
                q_star=params.p_base + (u - params.p_base) * x_inf,
                throughput=throughput,
            )
        )
    return points
