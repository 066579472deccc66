"""Shared fixtures for the test suite."""
import numpy as np
import pytest

from src.models.profile import IcProfile
from src.schemas.coding import CodeConfig
from src.schemas.game import GameParams
from src.services.game import PowerGameService
from src.services.simulation import analytic_profile


@pytest.fixture(scope="session")
def baseline_code():
    """Rate 1/16 repetition code with 1000-bit frames."""
    return CodeConfig(N=16, M_info=1000)


@pytest.fixture(scope="session")
def baseline_profile(baseline_code):
    """Analytic cancellation profile of the baseline code."""
    return analytic_profile(baseline_code)


@pytest.fixture(scope="session")
def baseline_params(baseline_code):
    """Sixteen users, s = 1, unit noise, unlimited power."""
    return GameParams(K=16, s=1.0, code=baseline_code)


@pytest.fixture(scope="session")
def baseline_solution(baseline_params, baseline_profile):
    """Optimal SINR of the baseline scenario."""
    return PowerGameService(baseline_params, baseline_profile).solve_gamma_star()


@pytest.fixture
def flat_profile():
    """Profile with no cancellation at all, f = 1."""
    return IcProfile.constant(1.0)


@pytest.fixture
def perfect_profile():
    """Profile with perfect cancellation, f = 0."""
    return IcProfile.constant(0.0)


@pytest.fixture
def rng():
    """Deterministic generator for test data."""
    return np.random.default_rng(1234)
