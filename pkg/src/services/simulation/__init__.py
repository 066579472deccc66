"""Chip-level simulation services."""
from src.services.simulation.cbc_receiver import CbcReceiver, transmit
from src.services.simulation.profile_estimator import (
    analytic_profile,
    default_gamma_grid,
    estimate_f,
    expected_residual_variance
)
from src.services.simulation.seeding import derive_rng

__all__ = [
    "CbcReceiver",
    "transmit",
    "analytic_profile",
    "default_gamma_grid",
    "estimate_f",
    "expected_residual_variance",
    "derive_rng",
]
