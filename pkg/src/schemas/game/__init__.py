"""Game schemas."""
from src.schemas.game.game import (
    GameParams,
    GameSolution,
    UserAllocation,
    AllocationResult
)

__all__ = [
    "GameParams",
    "GameSolution",
    "UserAllocation",
    "AllocationResult",
]
