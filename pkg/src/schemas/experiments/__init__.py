"""Experiment schemas."""
from src.schemas.experiments.config import ANALYTIC_PROFILE, ESTIMATE_PROFILE, ExperimentConfig
from src.schemas.experiments.rows import (
    CsvRow,
    ProfileRow,
    SolutionRow,
    AllocationRow,
    SweepRow,
    ValidationRow,
    TraceRow
)

__all__ = [
    "ANALYTIC_PROFILE",
    "ESTIMATE_PROFILE",
    "ExperimentConfig",
    "CsvRow",
    "ProfileRow",
    "SolutionRow",
    "AllocationRow",
    "SweepRow",
    "ValidationRow",
    "TraceRow",
]
