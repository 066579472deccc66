"""SINR evolution services."""
from src.services.sinr.evolution_service import SinrEvolutionService

__all__ = [
    "SinrEvolutionService"
]
