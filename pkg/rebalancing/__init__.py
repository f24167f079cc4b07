"""Adherence-coupled rebalancing toolkit.

Microscopic simulator of belief-driven driver participation, its mean-field
recursion, equilibrium analysis and the optimal constant recommendation
intensity under an adherence floor.
"""

__version__ = "0.1.0"
