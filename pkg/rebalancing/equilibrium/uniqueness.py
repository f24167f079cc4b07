"""Uniqueness certificate for the adherence fixed point.

For u >= p the residual is strictly decreasing and the fixed point is
unique. For u < p the map s(x) is nondecreasing with Lipschitz constant

    L = (K-1)(p-u) * lambda * max_{a in A} F(floor(a) - 1) / a^2

where A = {a_min} plus the integers in (a_min, a_max]. |g'| decreases on each
smooth piece, so its supremum is attained at left endpoints, which is what
A enumerates. L < 1 makes s a contraction.
"""

import logging
import math
from typing import List

from ..demand import PoissonTable
from ..errors import TableTooSmallError
from ..schemas import CertificateRegime, ModelParams, UniquenessCertificate

logger = logging.getLogger(__name__)


def breakpoint_set(a_min: float, a_max: float) -> List[float]:
    """{a_min} followed by the integers in (a_min, a_max]."""
    points = [a_min]
    points.extend(float(n) for n in range(math.floor(a_min) + 1, math.floor(a_max) + 1))
    return points


def uniqueness_certificate(
    u: float, params: ModelParams, table: PoissonTable
) -> UniquenessCertificate:
    """Classify the control u as u_ge_p, contraction or inconclusive.

    Args:
        u: Control intensity
        params: Model parameters (params.u is ignored)
        table: Poisson table with k_max >= 1 + (K-1) max(p, u)

    Returns:
        UniquenessCertificate
    """
    k, p, lam = params.k_agents, params.p_base, table.lam
    a_min = 1.0 + (k - 1) * u
    a_max = 1.0 + (k - 1) * p
    if math.floor(max(a_min, a_max)) - 1 > table.k_max:
        raise TableTooSmallError(max(a_min, a_max), table.k_max)

    points = breakpoint_set(a_min, a_max)

    # L is only defined below the baseline; reported as 0 otherwise
    lipschitz = 0.0
    if u >= p:
        regime = CertificateRegime.U_GE_P
    else:
        l_g = lam * max(table.F(math.floor(a) - 1) / (a * a) for a in points)
        lipschitz = (k - 1) * (p - u) * l_g
        regime = CertificateRegime.CONTRACTION if lipschitz < 1.0 else CertificateRegime.INCONCLUSIVE

    if regime == CertificateRegime.INCONCLUSIVE:
        logger.warning(
            f"Uniqueness not certified at u={u}: L={lipschitz:.4f} >= 1 "
            f"(multiple equilibria possible)"
        )

    return UniquenessCertificate(
        regime=regime,
        lipschitz_constant=lipschitz,
        breakpoint_set=points,
        a_min=a_min,
        a_max=a_max,
    )
