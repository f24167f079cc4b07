"""Seeded random streams.

Splitting rule: every stream is seeded by SeedSequence([seed, branch, ...]).
Branch 0 draws the initial population, branch 1 drives run m through
SeedSequence([seed, 1, m]). Runs therefore never share draws and can be
executed in any order.
"""

import numpy as np

from ..errors import InvalidParameterError

INIT_BRANCH = 0
RUN_BRANCH = 1


def _check_seed(seed: int) -> None:
    if seed < 0:
        raise InvalidParameterError(f"seed must be >= 0, got {seed}")


def make_init_stream(seed: int) -> np.random.Generator:
    """Stream used to sample the initial population."""
    _check_seed(seed)
    return np.random.default_rng(np.random.SeedSequence([seed, INIT_BRANCH]))


def make_run_stream(seed: int, run_index: int) -> np.random.Generator:
    """Independent stream for one Monte Carlo run."""
    _check_seed(seed)
    if run_index < 0:
        raise InvalidParameterError(f"run_index must be >= 0, got {run_index}")
    return np.random.default_rng(np.random.SeedSequence([seed, RUN_BRANCH, run_index]))
