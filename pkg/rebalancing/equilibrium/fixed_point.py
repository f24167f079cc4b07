"""Residual of the adherence fixed-point equation and its solver.

x* solves x = s(x) with s(x) = g(1 + (K-1)(p + (u-p) x)), i.e. Phi(x*; u) = 0
for Phi(x; u) = s(x) - x. Phi(0) >= 0 and Phi(1) <= 0 always hold.
"""

import logging

import numpy as np

from ..config import SOLVER
from ..demand import PoissonTable, eval_g, eval_g_many
from ..errors import InvalidParameterError, RegimeError
from ..schemas import CertificateRegime, EquilibriumResult, ModelParams
from .bisection import bisect_sign
from .uniqueness import uniqueness_certificate

logger = logging.getLogger(__name__)


def effective_supply(x, u: float, params: ModelParams):
    """a(x) = 1 + (K-1)(p + (u-p) x); works on floats and arrays."""
    return 1.0 + (params.k_agents - 1) * (params.p_base + (u - params.p_base) * x)


def phi(x: float, u: float, params: ModelParams, table: PoissonTable) -> float:
    """Phi(x; u) = s(x) - x."""
    if not 0.0 <= x <= 1.0:
        raise InvalidParameterError(f"x must lie in [0, 1], got {x}")
    return eval_g(effective_supply(x, u, params), table) - x


def phi_many(x: np.ndarray, u: float, params: ModelParams, table: PoissonTable) -> np.ndarray:
    """Vectorized phi over a grid of adherence values."""
    x = np.asarray(x, dtype=float)
    return eval_g_many(effective_supply(x, u, params), table) - x


def solve_x_star(
    u: float,
    params: ModelParams,
    table: PoissonTable,
    delta_x: float = SOLVER.delta_x,
) -> EquilibriumResult:
    """Unique fixed point by bisection on [0, 1].

    Valid for u >= p, where Phi is strictly decreasing, and for u < p when the
    uniqueness certificate reports a contraction.

    Args:
        u: Control intensity
        params: Model parameters (params.u is ignored)
        table: Poisson table
        delta_x: Final bracket width (> 0)

    Returns:
        EquilibriumResult with unique_certified=True

    Raises:
        RegimeError: If u < p and uniqueness cannot be certified; use
            scan_fixed_points to enumerate the equilibria instead
    """
    if not delta_x > 0:
        raise InvalidParameterError(f"delta_x must be positive, got {delta_x}")
    if not 0.0 <= u <= 1.0:
        raise InvalidParameterError(f"u must lie in [0, 1], got {u}")
    if u < params.p_base:
        certificate = uniqueness_certificate(u, params, table)
        if certificate.regime == CertificateRegime.INCONCLUSIVE:
            raise RegimeError(
                f"u={u} < p={params.p_base} and uniqueness is not certified "
                f"(L={certificate.lipschitz_constant:.4f}); use scan_fixed_points"
            )

    x_star, iterations = bisect_sign(lambda x: phi(x, u, params, table), 0.0, 1.0, delta_x)
    residual = phi(x_star, u, params, table)
    logger.debug(f"x*(u={u}) = {x_star:.12f}, residual={residual:.3e}, iterations={iterations}")
    return EquilibriumResult(
        x_star=x_star, residual=residual, iterations=iterations, unique_certified=True
    )
