"""Result files of the experiment runs."""
from pathlib import Path

from src.repositories.base import BaseCsvRepository
from src.schemas.experiments import (
    AllocationRow,
    SolutionRow,
    SweepRow,
    TraceRow,
    ValidationRow
)


class SolutionRepository(BaseCsvRepository[SolutionRow]):
    def __init__(self, path: Path):
        super().__init__(SolutionRow, path)


class AllocationRepository(BaseCsvRepository[AllocationRow]):
    def __init__(self, path: Path):
        super().__init__(AllocationRow, path)


class SweepRepository(BaseCsvRepository[SweepRow]):
    def __init__(self, path: Path):
        super().__init__(SweepRow, path)


class ValidationRepository(BaseCsvRepository[ValidationRow]):
    def __init__(self, path: Path):
        super().__init__(ValidationRow, path)


class TraceRepository(BaseCsvRepository[TraceRow]):
    def __init__(self, path: Path):
        super().__init__(TraceRow, path)
