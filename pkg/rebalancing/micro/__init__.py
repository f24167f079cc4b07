"""Microscopic simulation of belief-driven participation and uniform matching."""

from .agents import (
    AgentState,
    EpochOutcome,
    MicroState,
    direct_mean,
    effective_participation,
    heterogeneous_population,
    participation_probabilities,
    pooled_mean,
)
from .congestion import allocation_prob_exact, poisson_binomial_pmf
from .monte_carlo import MonteCarloResult, run_monte_carlo
from .stepper import sample_epoch, uniform_match, update_beliefs
from .streams import make_init_stream, make_run_stream

__all__ = [
    "AgentState",
    "EpochOutcome",
    "MicroState",
    "MonteCarloResult",
    "allocation_prob_exact",
    "direct_mean",
    "effective_participation",
    "heterogeneous_population",
    "make_init_stream",
    "make_run_stream",
    "participation_probabilities",
    "poisson_binomial_pmf",
    "pooled_mean",
    "run_monte_carlo",
    "sample_epoch",
    "uniform_match",
    "update_beliefs",
]
