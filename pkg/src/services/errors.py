"""Exceptions raised by the service layer."""
from typing import List, Optional, Sequence


class IdmaError(Exception):
    """Base class for every domain failure."""

    exit_code: int = 1


class ConfigError(IdmaError, ValueError):
    """Invalid experiment configuration."""

    exit_code = 2


class InfeasibleGameError(IdmaError):
    """The game has no positive-power solution for the requested scenario."""

    exit_code = 3

    def __init__(self, message: str, k_max: Optional[float] = None):
        super().__init__(message)
        self.k_max = k_max


class SolverError(IdmaError):
    """The secant search for the optimal SINR failed."""

    exit_code = 3

    def __init__(self, message: str, trace: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.trace: List[float] = list(trace or [])


class SingularityError(SolverError):
    """A denominator of the reduced first-order condition vanished."""


class NonConvergenceError(IdmaError):
    """A fixed point or simulation did not settle within its iteration cap."""

    exit_code = 4

    def __init__(self, message: str, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate
