"""Fixed-point analysis of the adherence map."""

from .bisection import bisect_predicate, bisect_sign
from .fixed_point import effective_supply, phi, phi_many, solve_x_star
from .scan import fixed_point_map, scan_fixed_points
from .uniqueness import breakpoint_set, uniqueness_certificate

__all__ = [
    "bisect_predicate",
    "bisect_sign",
    "breakpoint_set",
    "effective_supply",
    "fixed_point_map",
    "phi",
    "phi_many",
    "scan_fixed_points",
    "solve_x_star",
    "uniqueness_certificate",
]
