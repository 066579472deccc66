"""Analytical chip, bit and frame error model of the repetition code."""
from typing import Union

import numpy as np
from scipy.special import erfc, logsumexp
from scipy.stats import binom

from src.schemas.coding import CodeConfig

ArrayLike = Union[float, np.ndarray]

# Repetition factors from which majority-vote tails are summed in log space.
LOG_DOMAIN_MIN_N = 64


def _as_output(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def _check_gamma(gamma: ArrayLike) -> np.ndarray:
    x = np.asarray(gamma, dtype=float)
    if np.any(x < 0.0) or np.any(np.isnan(x)):
        raise ValueError(f"SINR must be non-negative, got {gamma}")
    return x


def _check_repetition(N: int) -> int:
    if int(N) != N or N < 1:
        raise ValueError(f"repetition factor must be a positive integer, got {N}")
    return int(N)


def chip_error_prob(gamma: ArrayLike) -> ArrayLike:
    """
    Antipodal chip error probability Q(sqrt(2 gamma)).

    Args:
        gamma: Chip SINR (linear scale, >= 0)

    Returns:
        Probability in (0, 0.5]
    """
    x = _check_gamma(gamma)
    # Q(sqrt(2 x)) = erfc(sqrt(x)) / 2
    return _as_output(0.5 * erfc(np.sqrt(x)))


def chip_error_prob_prime(gamma: ArrayLike) -> ArrayLike:
    """Derivative of :func:`chip_error_prob` with respect to the SINR."""
    x = _check_gamma(gamma)
    with np.errstate(divide="ignore"):
        value = -np.exp(-x) / (2.0 * np.sqrt(np.pi * x))
    return _as_output(value)


def majority_error_prob(q: ArrayLike, N: int) -> ArrayLike:
    """
    Probability that a majority vote over N chips decodes the wrong bit.

    Each chip is flipped independently with probability ``q``. For even N an
    exact tie is resolved by a fair coin.

    Args:
        q: Chip error probability
        N: Repetition factor

    Returns:
        Bit error probability
    """
    N = _check_repetition(N)
    q = np.asarray(q, dtype=float)
    half = N // 2

    if N < LOG_DOMAIN_MIN_N:
        wrong = binom.sf(half, N, q)
    else:
        m = np.arange(half + 1, N + 1).reshape((-1,) + (1,) * q.ndim)
        with np.errstate(divide="ignore"):
            wrong = np.exp(logsumexp(binom.logpmf(m, N, q), axis=0))

    if N % 2 == 0:
        wrong = wrong + 0.5 * binom.pmf(half, N, q)
    return _as_output(np.clip(wrong, 0.0, 1.0))


def majority_error_prob_prime(q: ArrayLike, N: int) -> ArrayLike:
    """Derivative of :func:`majority_error_prob` with respect to ``q``."""
    N = _check_repetition(N)
    q = np.asarray(q, dtype=float)
    half = N // 2
    if N == 1:
        return _as_output(np.ones_like(q))
    if N % 2 == 1:
        value = N * binom.pmf(half, N - 1, q)
    else:
        value = 0.5 * N * (binom.pmf(half, N - 1, q) + binom.pmf(half - 1, N - 1, q))
    return _as_output(value)


def bit_error_prob(gamma: ArrayLike, N: int) -> ArrayLike:
    """
    Bit error probability of majority decoding at chip SINR ``gamma``.

    Args:
        gamma: Chip SINR (linear scale, >= 0)
        N: Repetition factor

    Returns:
        Probability that the decoded bit is wrong
    """
    return majority_error_prob(chip_error_prob(gamma), N)


def goodput(gamma: ArrayLike, cfg: CodeConfig) -> ArrayLike:
    """
    Probability of an error-free frame, (1 - P_e)^M.

    Args:
        gamma: Chip SINR (linear scale, >= 0)
        cfg: Code configuration; its exponent selects M

    Returns:
        Goodput in [0, 1]
    """
    pe = np.asarray(bit_error_prob(gamma, cfg.N))
    return _as_output(np.exp(cfg.frame_exponent * np.log1p(-pe)))


def goodput_prime(gamma: ArrayLike, cfg: CodeConfig) -> ArrayLike:
    """
    Derivative of :func:`goodput` with respect to the SINR.

    Chain rule through the frame power, the majority-vote tail and the
    Gaussian tail function.
    """
    x = _check_gamma(gamma)
    M = cfg.frame_exponent
    q = np.asarray(chip_error_prob(x))
    pe = np.asarray(majority_error_prob(q, cfg.N))
    dpe_dq = np.asarray(majority_error_prob_prime(q, cfg.N))
    dq_dgamma = np.asarray(chip_error_prob_prime(x))
    frame_term = M * np.exp((M - 1) * np.log1p(-pe))
    with np.errstate(invalid="ignore"):
        value = -frame_term * dpe_dq * dq_dgamma
    return _as_output(np.maximum(value, 0.0))
