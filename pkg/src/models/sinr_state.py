"""Per-user SINR state produced by the SINR-evolution recursion."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SinrState:
    """SINR vector after a run of the fixed-point recursion."""
    gammas: np.ndarray
    iterations: int
    converged: bool
    residual: float

    def __post_init__(self):
        if np.any(self.gammas < 0.0):
            raise ValueError("SINR entries must be non-negative")
        self.gammas.setflags(write=False)

    @property
    def num_users(self) -> int:
        """Number of users K."""
        return int(self.gammas.size)
