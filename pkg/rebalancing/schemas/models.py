"""Pydantic models shared across the toolkit.

Parameters flow into every module through ModelParams; the result models
are what the analysis modules return and what the CLI serializes into its
JSON reports.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ModelParams(BaseModel):
    """Population, demand and control parameters.

    ``lam`` is exposed under the alias ``lambda`` in config files and JSON.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    k_agents: int = Field(..., ge=1, description="Population size K")
    p_base: float = Field(
        ..., ge=0.0, le=1.0, description="Population mean baseline participation p"
    )
    lam: float = Field(..., gt=0.0, alias="lambda", description="Expected demand per epoch")
    u: float = Field(0.0, ge=0.0, le=1.0, description="Uniform recommendation intensity")

    def with_u(self, u: float) -> "ModelParams":
        """Copy of these parameters with a different control."""
        return self.model_copy(update={"u": u})


class CertificateRegime(str, Enum):
    """Outcome of the uniqueness analysis."""

    U_GE_P = "u_ge_p"
    CONTRACTION = "contraction"
    INCONCLUSIVE = "inconclusive"


class EquilibriumResult(BaseModel):
    """Fixed point of the adherence map."""

    x_star: float = Field(..., ge=0.0, le=1.0)
    residual: float = Field(..., description="Residual Phi(x_star; u)")
    iterations: int = Field(..., ge=0)
    unique_certified: bool


class UniquenessCertificate(BaseModel):
    """Evidence for (or against) a unique fixed point."""

    regime: CertificateRegime
    lipschitz_constant: float = Field(..., ge=0.0, description="L for u < p; 0 in the u_ge_p regime")
    breakpoint_set: List[float] = Field(default_factory=list)
    a_min: float
    a_max: float

    @model_validator(mode="after")
    def _contraction_needs_l_below_one(self) -> "UniquenessCertificate":
        if self.regime == CertificateRegime.CONTRACTION and not self.lipschitz_constant < 1.0:
            raise ValueError("contraction regime requires lipschitz_constant < 1")
        return self

    @property
    def unique(self) -> bool:
        return self.regime != CertificateRegime.INCONCLUSIVE


class FixedPointScan(BaseModel):
    """Roots of the residual found on a grid."""

    roots: List[float]
    tangential: List[float] = Field(
        default_factory=list, description="Near-roots with |Phi| small but no sign change"
    )
    x_grid: List[float]
    phi: List[float]


class SteadyStateMetrics(BaseModel):
    """Steady-state adherence and throughput under a constant control."""

    u: float = Field(..., ge=0.0, le=1.0)
    x_inf: float = Field(..., ge=0.0, le=1.0)
    q_star: float = Field(..., ge=0.0, le=1.0)
    throughput: float = Field(..., ge=0.0)


class MonotonicityCertificate(BaseModel):
    """Both sides of the strict throughput-monotonicity condition."""

    holds: bool
    lhs: float
    rhs: float
    sup_abs_g_prime: float
    sup_weight: float
    inf_x_inf: float
    integer_crossings: List[float] = Field(
        default_factory=list,
        description="Controls u where a*(u) is an integer (|g'| is one-sided there)",
    )

    @property
    def hypothesis_violated(self) -> bool:
        return bool(self.integer_crossings)


class ControlStatus(str, Enum):
    """Outcome of the adherence-floor throughput maximization."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    SATURATED_AT_ONE = "saturated_at_one"


class OptimalControlResult(BaseModel):
    """Result of the bisection search for the maximal feasible control."""

    status: ControlStatus
    u_star: Optional[float] = Field(None, ge=0.0, le=1.0)
    x_at_u_star: Optional[float] = None
    throughput_at_u_star: Optional[float] = None
    iterations: int = Field(0, ge=0)
    x_floor: float
    delta_u: float
    delta_x: float
