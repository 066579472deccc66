"""Schemas package for data validation and serialization."""
from src.schemas.coding import CodeConfig
from src.schemas.game import (
    GameParams,
    GameSolution,
    UserAllocation,
    AllocationResult
)

__all__ = [
    # Coding schemas
    "CodeConfig",
    # Game schemas
    "GameParams",
    "GameSolution",
    "UserAllocation",
    "AllocationResult",
]
