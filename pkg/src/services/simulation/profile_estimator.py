"""Monte Carlo and analytic estimation of the cancellation profile f(gamma)."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import isotonic_regression

from src.models.frames import NOISE_SAMPLE_FRACTION
from src.models.profile import IcProfile, ProfileMetadata
from src.schemas.coding import CodeConfig
from src.services.codec import RepetitionCodec
from src.services.simulation.seeding import NOISE_STREAM, PAYLOAD_STREAM, derive_rng

logger = logging.getLogger(__name__)

# Beyond |u| = 40 the weight 1 - tanh^2(u/2) is below 1e-17.
LLR_SPAN = 40.0


def default_gamma_grid(points: int = 300) -> np.ndarray:
    """Zero followed by a log grid over [1e-3, 1e2]."""
    return np.concatenate([[0.0], np.geomspace(1e-3, 1e2, points)])


def _check_grid(gamma_grid) -> np.ndarray:
    grid = np.asarray(gamma_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("gamma grid is empty")
    if grid.size < 2:
        raise ValueError("gamma grid needs at least two points")
    if grid[0] < 0.0 or np.any(np.diff(grid) <= 0.0):
        raise ValueError("gamma grid must be non-negative and strictly ascending")
    return grid


def _monotone(values: np.ndarray) -> np.ndarray:
    fitted = isotonic_regression(values, increasing=False).x
    return np.minimum.accumulate(np.clip(fitted, 0.0, 1.0))


def _residual_variance(codec: RepetitionCodec, gamma: float, frames: int, seed: int, point: int) -> float:
    cfg = codec.cfg
    amplitude = np.sqrt(gamma)
    noise_std = np.sqrt(NOISE_SAMPLE_FRACTION)
    total = 0.0
    for frame in range(frames):
        bits = 2 * derive_rng(seed, point, frame, PAYLOAD_STREAM).integers(0, 2, cfg.M_info) - 1
        chips = codec.encode(bits)
        noise = noise_std * derive_rng(seed, point, frame, NOISE_STREAM).standard_normal(cfg.M_chips)
        # matched filter at unit noise power
        llr = 2.0 * amplitude * (amplitude * chips + noise) / NOISE_SAMPLE_FRACTION
        feedback = codec.extrinsic(llr)
        total += np.mean(1.0 - np.tanh(feedback / 2.0) ** 2)
    return total / frames


def estimate_f(
    cfg: CodeConfig,
    gamma_grid: Sequence[float],
    frames_per_point: int,
    seed: int,
    workers: int = 1
) -> IcProfile:
    """
    Simulate single-user frames at each chip SINR and measure the residual
    variance 1 - tanh^2(lambda/2) of the decoder feedback.

    The raw estimates are made non-increasing by isotonic regression.

    Args:
        cfg: Repetition code
        gamma_grid: Ascending chip SINRs (linear)
        frames_per_point: Frames simulated at every grid point (>= 1)
        seed: Master seed; point i, frame j always draws the same samples
        workers: Threads simulating grid points concurrently

    Returns:
        IcProfile tagged with the code rate, frame length and trial count
    """
    grid = _check_grid(gamma_grid)
    if frames_per_point < 1:
        raise ValueError(f"frames_per_point must be at least 1, got {frames_per_point}")
    codec = RepetitionCodec(cfg)

    def estimate_point(point: int) -> float:
        return _residual_variance(codec, float(grid[point]), frames_per_point, seed, point)

    logger.info(
        f"estimating f over {grid.size} points, {frames_per_point} frames each "
        f"(N={cfg.N}, M_info={cfg.M_info}, workers={workers})"
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw = np.array(list(pool.map(estimate_point, range(grid.size))))
    else:
        raw = np.array([estimate_point(point) for point in range(grid.size)])

    values = _monotone(raw)
    adjusted = int(np.count_nonzero(np.abs(values - raw) > 1e-12))
    if adjusted:
        logger.debug(f"isotonic regression adjusted {adjusted} of {grid.size} estimates")
    metadata = ProfileMetadata(rate=Fraction(1, cfg.N), frame_bits=cfg.M_info, trials=frames_per_point)
    return IcProfile(grid, values, metadata)


def expected_residual_variance(gamma: float, N: int) -> float:
    """
    E[1 - tanh^2(u/2)] for decoder feedback u ~ N(mu, 2 mu), mu = 4 (N-1) gamma.

    This is the limit of the Monte Carlo estimate for infinitely many frames.
    """
    mu = 4.0 * (N - 1) * gamma
    if mu <= 0.0:
        return 1.0
    sigma = np.sqrt(2.0 * mu)
    lower = max(-LLR_SPAN, mu - 12.0 * sigma)
    upper = min(LLR_SPAN, mu + 12.0 * sigma)
    if lower >= upper:
        return 0.0

    scale = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    def integrand(u: float) -> float:
        weight = 1.0 - math.tanh(u / 2.0) ** 2
        return weight * scale * math.exp(-0.5 * ((u - mu) / sigma) ** 2)

    breakpoints = [point for point in (0.0, mu) if lower < point < upper]
    value, _ = quad(integrand, lower, upper, points=breakpoints or None, limit=200)
    return float(value)


def analytic_profile(cfg: CodeConfig, gamma_grid: Optional[Sequence[float]] = None) -> IcProfile:
    """Profile of the Gaussian feedback model on ``gamma_grid`` (default log grid)."""
    grid = _check_grid(default_gamma_grid() if gamma_grid is None else gamma_grid)
    raw = np.array([expected_residual_variance(float(gamma), cfg.N) for gamma in grid])
    metadata = ProfileMetadata(rate=Fraction(1, cfg.N), frame_bits=cfg.M_info, trials=0)
    return IcProfile(grid, _monotone(raw), metadata)
