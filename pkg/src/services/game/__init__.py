"""Power game services."""
from src.services.game.power_game_service import PowerGameService
from src.services.game.secant import SecantResult, secant
from src.services.game.target_function import (
    gamma_min,
    utility,
    q_factor,
    target_function,
    per_user_target,
    sinr_power_derivative,
    k_max,
    is_feasible
)

__all__ = [
    "PowerGameService",
    "SecantResult",
    "secant",
    "gamma_min",
    "utility",
    "q_factor",
    "target_function",
    "per_user_target",
    "sinr_power_derivative",
    "k_max",
    "is_feasible",
]
