"""Experiment services."""
from src.services.experiments.experiment_service import ExperimentService, RunResult

__all__ = [
    "ExperimentService",
    "RunResult",
]
