"""Bisection primitives shared by the equilibrium and control solvers."""

from typing import Callable, Tuple

from ..errors import InvalidParameterError

MAX_ITERATIONS = 200


def bisect_sign(
    func: Callable[[float], float], lo: float, hi: float, tol: float
) -> Tuple[float, int]:
    """Root of func on [lo, hi] given a sign change (or zero) at the ends.

    The half keeping the sign change is retained until hi - lo <= tol.

    Returns:
        (midpoint of the final bracket, iterations)
    """
    if not tol > 0:
        raise InvalidParameterError(f"tolerance must be positive, got {tol}")
    if not lo <= hi:
        raise InvalidParameterError(f"empty bracket [{lo}, {hi}]")
    f_lo = func(lo)
    if f_lo == 0.0:
        return lo, 0
    f_hi = func(hi)
    if f_hi == 0.0:
        return hi, 0
    if (f_lo > 0) == (f_hi > 0):
        raise InvalidParameterError(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}"
        )

    iterations = 0
    while hi - lo > tol and iterations < MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        iterations += 1
        if f_mid == 0.0:
            return mid, iterations
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi), iterations


def bisect_predicate(
    predicate: Callable[[float], bool], lo: float, hi: float, tol: float
) -> Tuple[float, int]:
    """Boundary of a predicate that holds at lo and fails at hi.

    Moves lo right while the predicate holds at the midpoint and returns the
    last point known to satisfy it.

    Returns:
        (lo, iterations)
    """
    if not tol > 0:
        raise InvalidParameterError(f"tolerance must be positive, got {tol}")
    iterations = 0
    while hi - lo > tol and iterations < MAX_ITERATIONS:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
        iterations += 1
    return lo, iterations
