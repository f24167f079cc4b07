"""Solver and experiment defaults.

Values can be overridden through REBALANCING_* environment variables.
"""

import os
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SolverConfig:
    """Numerical tolerances shared by the solvers."""

    # Bisection width in x for equilibrium solves (~34 iterations)
    delta_x: float = float(os.getenv("REBALANCING_DELTA_X", "1e-10"))
    # Bisection width in u for the optimal-control search
    delta_u: float = float(os.getenv("REBALANCING_DELTA_U", "1e-6"))
    # Band for the epsilon-convergence time
    epsilon: float = float(os.getenv("REBALANCING_EPSILON", "1e-2"))
    # Neglected Poisson tail mass when sizing tables
    tail_tolerance: float = float(os.getenv("REBALANCING_TAIL_TOLERANCE", "1e-12"))
    # Roots of the residual closer than this are merged
    root_dedup: float = float(os.getenv("REBALANCING_ROOT_DEDUP", "1e-8"))
    # Residual magnitude reported as a tangential near-root
    tangent_tolerance: float = float(os.getenv("REBALANCING_TANGENT_TOLERANCE", "1e-6"))
    # Width to which scanned brackets are refined
    root_refine: float = float(os.getenv("REBALANCING_ROOT_REFINE", "1e-10"))


@dataclass(frozen=True)
class ExperimentDefaults:
    """Parameter set used throughout the numerical experiments."""

    k_agents: int = 100
    p_base: float = 0.3
    lam: float = 50.0
    x0: float = 0.25
    n0: float = 4.0
    # Transient steady-state estimate: run this many steps ...
    steady_state_horizon: int = 1000
    # ... and average this many final samples
    steady_state_window: int = 200
    u_grid: tuple = field(
        default_factory=lambda: tuple(round(0.3 + 0.05 * i, 2) for i in range(15))
    )


SOLVER = SolverConfig()
DEFAULTS = ExperimentDefaults()
