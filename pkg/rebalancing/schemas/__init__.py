"""Shared pydantic models."""

from .models import (
    CertificateRegime,
    ControlStatus,
    EquilibriumResult,
    FixedPointScan,
    ModelParams,
    MonotonicityCertificate,
    OptimalControlResult,
    SteadyStateMetrics,
    UniquenessCertificate,
)

__all__ = [
    "CertificateRegime",
    "ControlStatus",
    "EquilibriumResult",
    "FixedPointScan",
    "ModelParams",
    "MonotonicityCertificate",
    "OptimalControlResult",
    "SteadyStateMetrics",
    "UniquenessCertificate",
]
