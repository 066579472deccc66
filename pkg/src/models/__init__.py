"""Models package - domain entities of the application."""
from src.models.enums import (
    AllocationStatus,
    GoodputExponent,
    InterfererPower,
    SweepAxis,
    Schedule,
    SoftDirection
)
from src.models.profile import IcProfile, ProfileMetadata
from src.models.sinr_state import SinrState
from src.models.interleaver import Interleaver
from src.models.frames import ScenarioRealization, SoftFrame, FrameTrace

__all__ = [
    "AllocationStatus",
    "GoodputExponent",
    "InterfererPower",
    "SweepAxis",
    "Schedule",
    "SoftDirection",
    "IcProfile",
    "ProfileMetadata",
    "SinrState",
    "Interleaver",
    "ScenarioRealization",
    "SoftFrame",
    "FrameTrace",
]
