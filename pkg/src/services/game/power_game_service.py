"""Power game service: optimal SINR, optimal power and the allocation rule."""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from src.models.enums import AllocationStatus, InterfererPower
from src.models.profile import IcProfile
from src.schemas.game import AllocationResult, GameParams, GameSolution, UserAllocation
from src.services.codec import goodput
from src.services.errors import InfeasibleGameError
from src.services.game.secant import secant
from src.services.game.target_function import (
    gamma_min,
    is_feasible,
    k_max,
    target_function,
    utility
)
from src.services.sinr import SinrEvolutionService

logger = logging.getLogger(__name__)

GAMMA_CEILING = 1e3
MAX_SECANT_ITER = 200


class PowerGameService:
    """Service layer for the decentralized power allocation game."""

    def __init__(self, params: GameParams, profile: IcProfile):
        """Initialize the service with a scenario and a cancellation profile."""
        self.params = params
        self.profile = profile
        self.evolution = SinrEvolutionService(profile)

    def target(self, gamma: float) -> float:
        """Target function z(gamma) for this scenario."""
        return target_function(gamma, self.params, self.profile)

    def _initial_points(self, floor: float):
        """
        Walk gamma_1 upward from the floor in steps of delta while
        z(gamma_1) >= z(gamma_min), then return (gamma_1, gamma_1 + delta).

        The walk keeps going while z is still positive so the pair lands
        past the maximum of z and next to its descending zero.
        """
        delta = self.params.delta
        z_floor = self.target(floor)
        best = z_floor
        bracket = None

        prev_gamma, prev_z = floor, z_floor
        gamma_1 = floor + delta
        z_1 = self.target(gamma_1)
        while gamma_1 < GAMMA_CEILING:
            best = max(best, z_1)
            if prev_z > 0.0 >= z_1:
                bracket = (prev_gamma, gamma_1)
            if z_1 < z_floor and z_1 <= 0.0:
                break
            prev_gamma, prev_z = gamma_1, z_1
            gamma_1 += delta
            z_1 = self.target(gamma_1)

        if best <= 0.0:
            raise InfeasibleGameError(
                f"target function has no positive region above gamma_min={floor:.6g} "
                f"(s={self.params.s}); the utility has no interior maximum"
            )
        return gamma_1, gamma_1 + delta, bracket

    def solve_gamma_star(self) -> GameSolution:
        """
        Find the optimal SINR as the zero of the target function.

        Returns:
            GameSolution with the root, residual and feasibility data

        Raises:
            InfeasibleGameError: If z never turns positive
            SolverError: If the secant search fails
        """
        floor = gamma_min(self.params.code.rate)
        x0, x1, bracket = self._initial_points(floor)
        logger.debug(f"secant start ({x0:.6g}, {x1:.6g}), bracket {bracket}")

        result = secant(
            self.target,
            x0,
            x1,
            tol=self.params.epsilon,
            max_iter=MAX_SECANT_ITER,
            lower=floor,
            upper=GAMMA_CEILING,
            bracket=bracket
        )
        gamma_star = result.root
        limit = k_max(gamma_star, self.profile)
        feasible = is_feasible(self.params.K, gamma_star, self.profile)
        logger.info(
            f"gamma*={gamma_star:.9g} after {result.iterations} secant steps "
            f"(K={self.params.K}, N={self.params.code.N}, k_max={limit})"
        )
        return GameSolution(
            gamma_star=gamma_star,
            residual=result.value,
            iterations=result.iterations,
            gamma_min=floor,
            k_max=limit,
            feasible=feasible
        )

    def _interference_load(self, gamma_star: float) -> float:
        return 1.0 - (self.params.K - 1) * gamma_star * self.profile.f_eval(gamma_star)

    def optimal_power(self, gamma_star: float, gain: float) -> float:
        """
        Channel-inversion power sigma^2 gamma* / (1 - (K-1) gamma* f(gamma*)) / |h|^2.

        Raises:
            InfeasibleGameError: If K violates the positive-power condition
            ValueError: If the gain is not positive
        """
        if not gain > 0.0:
            raise ValueError(f"channel gain must be positive, got {gain}")
        if not is_feasible(self.params.K, gamma_star, self.profile):
            limit = k_max(gamma_star, self.profile)
            raise InfeasibleGameError(
                f"K={self.params.K} exceeds the largest feasible user count {limit:g} "
                f"at gamma*={gamma_star:.6g}",
                k_max=limit
            )
        return self.params.noise_var * gamma_star / self._interference_load(gamma_star) / gain

    def initial_sinr_at_pmax(self, gain: float, own_optimal: float) -> float:
        """Predicted initial SINR of a user transmitting at p_max."""
        p_max = self.params.p_max
        K = self.params.K
        if gain == 0.0:
            return 0.0
        if math.isinf(p_max):
            if K == 1 or self.params.gamma0_interferer_power == InterfererPower.SELF:
                return math.inf
            return 1.0 / (K - 1)
        interferer = p_max
        if self.params.gamma0_interferer_power == InterfererPower.SELF:
            interferer = own_optimal
        return p_max * gain / ((K - 1) * interferer * gain + self.params.noise_var)

    def allocate(self, gamma_star: float, gains: Sequence[float]) -> AllocationResult:
        """
        Apply the three-branch rule to every user.

        Optimal when p* <= p_max, Capped at p_max when the initial SINR at
        p_max still reaches gamma_min, Outage otherwise.
        """
        if len(gains) == 0:
            raise ValueError("at least one channel gain is required")
        floor = gamma_min(self.params.code.rate)
        p_max = self.params.p_max

        users = []
        for index, gain in enumerate(gains):
            gain = float(gain)
            if gain < 0.0:
                raise ValueError(f"channel gain of user {index} is negative: {gain}")
            if gain == 0.0:
                users.append(UserAllocation(
                    user=index, gain=gain, power=0.0,
                    status=AllocationStatus.OUTAGE, gamma0_pmax=0.0
                ))
                continue

            p_star = self.optimal_power(gamma_star, gain)
            gamma0 = self.initial_sinr_at_pmax(gain, p_star)
            if p_star <= p_max:
                status, power = AllocationStatus.OPTIMAL, p_star
            elif gamma0 >= floor:
                status, power = AllocationStatus.CAPPED, p_max
            else:
                status, power = AllocationStatus.OUTAGE, 0.0
            users.append(UserAllocation(
                user=index, gain=gain, power=power, status=status, gamma0_pmax=gamma0
            ))

        result = AllocationResult(gamma_star=gamma_star, users=users)
        logger.info(
            f"allocated {len(users)} users: "
            f"{result.count(AllocationStatus.OPTIMAL)} optimal, "
            f"{result.count(AllocationStatus.CAPPED)} capped, "
            f"{result.count(AllocationStatus.OUTAGE)} outage"
        )
        return result

    def target_curve(self, gammas: Sequence[float]) -> np.ndarray:
        """z evaluated on a grid of SINRs."""
        return np.array([self.target(float(gamma)) for gamma in gammas])

    def utility_curve(self, gammas: Sequence[float], gain: float = 1.0) -> np.ndarray:
        """
        Utility along the equal-received-power curve.

        Every user targets the same gamma with the channel-inversion power;
        points where that power is not positive are NaN.
        """
        values = np.full(len(gammas), np.nan)
        for i, gamma in enumerate(gammas):
            gamma = float(gamma)
            load = self._interference_load(gamma)
            if gamma <= 0.0 or load <= 0.0:
                continue
            power = self.params.noise_var * gamma / load / gain
            values[i] = utility(power, gamma, self.params.s, self.params.code)
        return values

    def best_response(
        self,
        user: int,
        powers: Sequence[float],
        gains: Sequence[float],
        candidates: Sequence[float]
    ) -> float:
        """
        Power maximizing one user's utility with every other power fixed.

        Args:
            user: Index of the deviating user
            powers: Current transmit powers of all users
            gains: Channel power gains
            candidates: Positive powers tried for ``user``

        Returns:
            The candidate with the highest steady-state utility
        """
        powers = np.array(powers, dtype=float)
        candidates = np.asarray(candidates, dtype=float)
        if candidates.size == 0 or np.any(candidates <= 0.0):
            raise ValueError("candidate powers must be a non-empty set of positive values")

        best_power, best_value = None, -math.inf
        for power in candidates:
            powers[user] = power
            state = self.evolution.evolve_sinr(powers, gains, self.params.noise_var)
            value = goodput(state.gammas[user], self.params.code) ** self.params.s / power
            if value > best_value:
                best_power, best_value = float(power), value
        return best_power
