"""Poisson demand law and the allocation expectation g(a)."""

from .allocation import eval_g, eval_g_many, eval_g_prime, g_oracle
from .poisson import PoissonTable, build_poisson_table

__all__ = [
    "PoissonTable",
    "build_poisson_table",
    "eval_g",
    "eval_g_many",
    "eval_g_prime",
    "g_oracle",
]
