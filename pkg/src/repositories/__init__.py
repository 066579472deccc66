"""Repositories package for file persistence."""
from src.repositories.base import BaseCsvRepository, format_value
from src.repositories.config_repository import ConfigRepository
from src.repositories.profile_repository import ProfileRepository
from src.repositories.results_repository import (
    AllocationRepository,
    SolutionRepository,
    SweepRepository,
    TraceRepository,
    ValidationRepository
)

__all__ = [
    "BaseCsvRepository",
    "format_value",
    "ConfigRepository",
    "ProfileRepository",
    "AllocationRepository",
    "SolutionRepository",
    "SweepRepository",
    "TraceRepository",
    "ValidationRepository",
]
