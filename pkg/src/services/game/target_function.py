"""Utility, first-order condition and feasibility of the power game."""
import math
from typing import Sequence, Union

import numpy as np

from src.models.profile import IcProfile
from src.schemas.coding import CodeConfig
from src.schemas.game import GameParams
from src.services.codec import goodput, goodput_prime
from src.services.errors import SingularityError

SINGULARITY_EPS = 1e-12


def gamma_min(rate: Union[float, "Fraction"]) -> float:
    """
    Shannon floor 2^(2R) - 1 for reliable decoding without cancellation.

    Args:
        rate: Code rate R in (0, 1]
    """
    rate = float(rate)
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"code rate must lie in (0, 1], got {rate}")
    return 2.0 ** (2.0 * rate) - 1.0


def utility(power: float, gamma: float, s: float, cfg: CodeConfig) -> float:
    """
    Energy efficiency g(gamma)^s / p.

    Raises:
        ValueError: If ``power`` is not strictly positive
    """
    if not power > 0.0:
        raise ValueError(f"utility is defined for positive powers only, got {power}")
    return goodput(gamma, cfg) ** s / power


def q_factor(gamma: float, K: int, profile: IcProfile) -> float:
    """
    Coupling factor of the reduced first-order condition.

    q = [(1 - b) + (K - 1) b (1 + c)] / [(1 - b)(1 + (K - 1) b)]
    with b = gamma^2 f'(gamma) and c = gamma f(gamma).

    Raises:
        SingularityError: If a denominator factor vanishes
    """
    b = gamma ** 2 * profile.f_prime(gamma)
    c = gamma * profile.f_eval(gamma)
    own = 1.0 - b
    coupled = 1.0 + (K - 1) * b
    if abs(own) < SINGULARITY_EPS:
        raise SingularityError(f"1 - gamma^2 f'(gamma) vanishes at gamma={gamma!r}")
    if abs(coupled) < SINGULARITY_EPS:
        raise SingularityError(f"1 + (K-1) gamma^2 f'(gamma) vanishes at gamma={gamma!r}, K={K}")
    return (own + (K - 1) * b * (1.0 + c)) / (own * coupled)


def target_function(gamma: float, params: GameParams, profile: IcProfile) -> float:
    """z(gamma) = s g'(gamma) gamma q(gamma) - g(gamma); its zero is the optimal SINR."""
    q = q_factor(gamma, params.K, profile)
    return params.s * goodput_prime(gamma, params.code) * gamma * q - goodput(gamma, params.code)


def per_user_target(gammas: Sequence[float], s: float, cfg: CodeConfig, profile: IcProfile) -> np.ndarray:
    """
    Left-hand sides of the K coupled first-order conditions.

    s g'(gamma_k) gamma_k (1 + c_k) / (1 - b_k) q_k(gamma) - g(gamma_k) for
    every user k, without assuming a symmetric point.
    """
    gammas = np.asarray(gammas, dtype=float)
    b = gammas ** 2 * profile.f_prime(gammas)
    c = gammas * profile.f_eval(gammas)
    A = np.sum(b / (1.0 - b))
    q_k = 1.0 - (c + b) / ((1.0 - b) * (1.0 + c) * (A + 1.0))
    slope = gammas * (1.0 + c) / (1.0 - b) * q_k
    return s * goodput_prime(gammas, cfg) * slope - goodput(gammas, cfg)


def sinr_power_derivative(gammas: Sequence[float], powers: Sequence[float], k: int, profile: IcProfile) -> float:
    """
    Sensitivity of user k's steady-state SINR to its own transmit power.

    d gamma_k / d p_k = gamma_k / p_k (1 + c_k) / (1 - b_k) q_k, with
    q_k = 1 - (c_k + b_k) / ((1 - b_k)(1 + c_k)(A + 1)) and
    A = sum_i b_i / (1 - b_i).
    """
    gammas = np.asarray(gammas, dtype=float)
    powers = np.asarray(powers, dtype=float)
    b = gammas ** 2 * profile.f_prime(gammas)
    c = gammas * profile.f_eval(gammas)
    A = np.sum(b / (1.0 - b))
    q_k = 1.0 - (c[k] + b[k]) / ((1.0 - b[k]) * (1.0 + c[k]) * (A + 1.0))
    return float(gammas[k] / powers[k] * (1.0 + c[k]) / (1.0 - b[k]) * q_k)


def k_max(gamma_star: float, profile: IcProfile) -> float:
    """Largest K with K < floor(1 / (gamma* f(gamma*)) + 1); infinite when f(gamma*) = 0."""
    load = gamma_star * profile.f_eval(gamma_star)
    if load <= 0.0:
        return math.inf
    return float(math.floor(1.0 / load + 1.0) - 1)


def is_feasible(K: int, gamma_star: float, profile: IcProfile) -> bool:
    """Positive-power condition K < floor(1 / (gamma* f(gamma*)) + 1)."""
    return K <= k_max(gamma_star, profile)
