"""Steady-state metrics, frontier geometry and the optimal constant control."""

from .certificate import throughput_monotonicity_certificate
from .metrics import (
    frontier,
    gamma_prime_at_p,
    steady_state_metrics,
    steady_state_throughput,
)
from .optimal import grid_scan_u_max, optimal_u

__all__ = [
    "frontier",
    "gamma_prime_at_p",
    "grid_scan_u_max",
    "optimal_u",
    "steady_state_metrics",
    "steady_state_throughput",
    "throughput_monotonicity_certificate",
]
