"""SINR evolution of the iterative chip-by-chip receiver."""
import logging
from typing import Optional

import numpy as np

from src.models.profile import IcProfile
from src.models.sinr_state import SinrState
from src.services.errors import NonConvergenceError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000


def _relative_change(new: np.ndarray, old: np.ndarray) -> float:
    return float(np.max(np.abs(new - old) / np.maximum(np.abs(new), 1.0)))


class SinrEvolutionService:
    """
    Steady-state SINR of every user under a given cancellation profile.

    The recursion is

        gamma_k <- p_k |h_k|^2 / (sum_{i != k} p_i |h_i|^2 f(gamma_i) + sigma^2)

    started with every f argument at zero, i.e. before any cancellation.
    """

    def __init__(
        self,
        profile: IcProfile,
        tol: float = DEFAULT_TOL,
        max_iter: int = DEFAULT_MAX_ITER
    ):
        """Initialize the service with the receiver's cancellation profile."""
        if tol <= 0:
            raise ValueError(f"tolerance must be positive, got {tol}")
        if max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {max_iter}")
        self.profile = profile
        self.tol = tol
        self.max_iter = max_iter

    @staticmethod
    def _received_powers(powers, gains, noise_var: float) -> np.ndarray:
        powers = np.asarray(powers, dtype=float)
        gains = np.asarray(gains, dtype=float)
        if powers.ndim != 1 or powers.shape != gains.shape:
            raise ValueError("powers and gains must be vectors of the same length")
        if np.any(powers < 0.0):
            raise ValueError("transmit powers must be non-negative")
        if not np.any(powers > 0.0):
            raise ValueError("at least one user must transmit")
        if np.any(gains < 0.0):
            raise ValueError("channel gains |h|^2 must be non-negative")
        if noise_var <= 0.0:
            raise ValueError(f"noise variance must be positive, got {noise_var}")
        return powers * gains

    def _step(self, received: np.ndarray, gammas: np.ndarray, noise_var: float) -> np.ndarray:
        weighted = received * self.profile.f_eval(gammas)
        interference = weighted.sum() - weighted + noise_var
        return received / interference

    def residual(self, gammas, powers, gains, noise_var: float) -> float:
        """Largest relative violation of the steady-state equations."""
        received = self._received_powers(powers, gains, noise_var)
        gammas = np.asarray(gammas, dtype=float)
        return _relative_change(self._step(received, gammas, noise_var), gammas)

    def evolve_sinr(
        self,
        powers,
        gains,
        noise_var: float,
        max_iter: Optional[int] = None,
        tol: Optional[float] = None
    ) -> SinrState:
        """
        Iterate the SINR recursion until the largest change is below ``tol``.

        Args:
            powers: Transmit powers p_k (>= 0, at least one positive)
            gains: Channel power gains |h_k|^2
            noise_var: Receiver noise variance sigma^2 (> 0)
            max_iter: Iteration cap, defaults to the service setting
            tol: Relative stopping tolerance, defaults to the service setting

        Returns:
            SinrState; ``converged`` is False when the cap was hit
        """
        max_iter = max_iter or self.max_iter
        tol = tol or self.tol
        received = self._received_powers(powers, gains, noise_var)

        gammas = np.zeros_like(received)
        change = np.inf
        iteration = 0
        for iteration in range(1, max_iter + 1):
            updated = self._step(received, gammas, noise_var)
            change = _relative_change(updated, gammas)
            gammas = updated
            if change < tol:
                break

        converged = change < tol
        residual = _relative_change(self._step(received, gammas, noise_var), gammas)
        if not converged:
            logger.warning(
                f"SINR evolution stopped after {iteration} iterations (change {change:.3e})"
            )
        return SinrState(gammas=gammas, iterations=iteration, converged=converged, residual=residual)

    def sinr_trajectory(self, powers, gains, noise_var: float, iterations: int) -> np.ndarray:
        """
        Predicted SINR of every user after each receiver iteration.

        Returns:
            Array of shape (iterations, K); row t is the SINR at iteration t + 1
        """
        if iterations < 1:
            raise ValueError(f"iterations must be at least 1, got {iterations}")
        received = self._received_powers(powers, gains, noise_var)
        trajectory = np.empty((iterations, received.size))
        gammas = np.zeros_like(received)
        for t in range(iterations):
            gammas = self._step(received, gammas, noise_var)
            trajectory[t] = gammas
        return trajectory

    def steady_state_equal_power(
        self,
        received_power: float,
        K: int,
        noise_var: float,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None
    ) -> float:
        """
        Solve gamma = P / ((K - 1) P f(gamma) + sigma^2) for equal received powers.

        Args:
            received_power: Common received power P = p |h|^2 (> 0)
            K: Number of users (>= 1)
            noise_var: Receiver noise variance (> 0)
            tol: Relative stopping tolerance
            max_iter: Iteration cap

        Returns:
            Steady-state SINR

        Raises:
            NonConvergenceError: Carrying the last iterate when the cap is hit
        """
        if received_power <= 0.0:
            raise ValueError(f"received power must be positive, got {received_power}")
        if K < 1:
            raise ValueError(f"K must be at least 1, got {K}")
        if noise_var <= 0.0:
            raise ValueError(f"noise variance must be positive, got {noise_var}")
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter

        gamma = 0.0
        for iteration in range(1, max_iter + 1):
            updated = received_power / (
                (K - 1) * received_power * self.profile.f_eval(gamma) + noise_var
            )
            change = abs(updated - gamma) / max(abs(updated), 1.0)
            gamma = updated
            if change < tol:
                logger.debug(f"equal-power fixed point {gamma:.6g} after {iteration} iterations")
                return gamma

        raise NonConvergenceError(
            f"equal-power fixed point did not converge in {max_iter} iterations",
            last_iterate=gamma
        )
