"""Shared fixtures for the rebalancing toolkit tests."""
import sys
from pathlib import Path

# Add project root to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import pytest

from rebalancing.demand import build_poisson_table
from rebalancing.schemas import ModelParams


@pytest.fixture
def baseline_params():
    """K=100, p=0.3, lambda=50 used throughout the numerical experiments."""
    return ModelParams(k_agents=100, p_base=0.3, lam=50.0, u=0.5)


@pytest.fixture
def baseline_table(baseline_params):
    """Poisson table for the baseline parameters."""
    return build_poisson_table(baseline_params.lam, baseline_params.k_agents)


@pytest.fixture
def crowded_params():
    """K=50, p=0.9, lambda=10: multiple equilibria at small u."""
    return ModelParams(k_agents=50, p_base=0.9, lam=10.0, u=0.05)


@pytest.fixture
def crowded_table(crowded_params):
    return build_poisson_table(crowded_params.lam, crowded_params.k_agents)
