"""Safeguarded secant root finder."""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from src.services.errors import SolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SecantResult:
    """Root found by :func:`secant` with its iterate trace."""
    root: float
    value: float
    iterations: int
    trace: Tuple[float, ...]


def secant(
    func: Callable[[float], float],
    x0: float,
    x1: float,
    tol: float = 1e-8,
    max_iter: int = 200,
    lower: float = -math.inf,
    upper: float = math.inf,
    bracket: Optional[Tuple[float, float]] = None
) -> SecantResult:
    """
    Secant iteration x_{i+1} = x_i - (x_i - x_{i-1}) f(x_i) / (f(x_i) - f(x_{i-1})).

    Stops when two consecutive iterates differ by at most ``tol``. Iterates are
    clamped to ``[lower, upper]``. When ``bracket`` holds two points with
    opposite signs of ``func``, an update leaving it is replaced by the
    bracket midpoint and the bracket shrinks with every evaluation.

    Args:
        func: Function whose root is sought
        x0: First starting point
        x1: Second starting point, distinct from ``x0``
        tol: Stopping distance between consecutive iterates
        max_iter: Maximum number of secant updates
        lower: Smallest admissible iterate
        upper: Largest admissible iterate
        bracket: Optional sign-change interval

    Returns:
        SecantResult with the last iterate

    Raises:
        SolverError: On a flat secant, an iterate stuck at a bound, or when
            ``max_iter`` updates do not meet the tolerance
    """
    if x0 == x1:
        raise SolverError("secant needs two distinct starting points", [x0, x1])

    p0, p1 = float(x0), float(x1)
    q0, q1 = func(p0), func(p1)
    trace = [p0, p1]
    if q1 == 0.0:
        return SecantResult(p1, q1, 0, tuple(trace))

    sign_change = None
    if bracket is not None:
        a, b = sorted(bracket)
        fa, fb = func(a), func(b)
        if fa * fb < 0.0:
            sign_change = [a, fa, b, fb]

    for iteration in range(1, max_iter + 1):
        if q1 == q0:
            raise SolverError(
                f"flat secant at x={p1!r}: f(x_i) == f(x_(i-1)) == {q1!r}", trace
            )
        p = p1 - (p1 - p0) * q1 / (q1 - q0)

        if sign_change is not None and not (sign_change[0] < p < sign_change[2]):
            logger.debug(f"secant update {p!r} left bracket, bisecting")
            p = 0.5 * (sign_change[0] + sign_change[2])

        if p < lower or p > upper:
            clamped = min(max(p, lower), upper)
            if clamped == p1:
                raise SolverError(f"secant iterate escaped [{lower}, {upper}]", trace + [p])
            logger.warning(f"secant iterate {p!r} clamped to {clamped!r}")
            p = clamped

        trace.append(p)
        q = func(p)
        if q == 0.0 or abs(p - p1) <= tol:
            return SecantResult(p, q, iteration, tuple(trace))

        if sign_change is not None:
            if q * sign_change[1] > 0.0:
                sign_change[0], sign_change[1] = p, q
            else:
                sign_change[2], sign_change[3] = p, q

        p0, q0, p1, q1 = p1, q1, p, q

    raise SolverError(f"secant did not converge in {max_iter} iterations", trace)
