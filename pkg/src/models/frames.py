"""Chip-level frames handled by the CBC receiver simulator."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.models.enums import SoftDirection
from src.models.interleaver import Interleaver

# Antipodal chips occupy the in-phase component, which carries half the noise power.
NOISE_SAMPLE_FRACTION = 0.5


@dataclass(frozen=True, eq=False)
class ScenarioRealization:
    """
    One transmitted frame of all users as seen by the receiver.

    ``received`` equals ``sum_i sqrt(p_i) h_i chips_i + noise`` exactly for
    the recorded noise samples. ``noise_var`` is the noise power sigma^2 of
    the SINR definition; the samples themselves have variance sigma^2 / 2.
    """
    gains: np.ndarray
    powers: np.ndarray
    noise_var: float
    payloads: np.ndarray
    chips: np.ndarray
    noise: np.ndarray
    received: np.ndarray
    interleavers: Tuple[Interleaver, ...]

    @property
    def num_users(self) -> int:
        """Number of users K."""
        return int(self.gains.size)

    @property
    def amplitudes(self) -> np.ndarray:
        """Received chip amplitudes sqrt(p_k) h_k."""
        return np.sqrt(self.powers) * self.gains

    @property
    def noise_sample_var(self) -> float:
        """Variance of the recorded noise samples."""
        return NOISE_SAMPLE_FRACTION * self.noise_var

    @property
    def received_powers(self) -> np.ndarray:
        """Received powers p_k |h_k|^2."""
        return self.powers * self.gains ** 2


@dataclass(frozen=True, eq=False)
class SoftFrame:
    """Per-chip log-likelihood ratios of one user, in chip-time order."""
    llr: np.ndarray
    direction: SoftDirection

    def __post_init__(self):
        if not np.all(np.isfinite(self.llr)):
            raise ValueError("soft frame contains non-finite LLRs")

    @classmethod
    def uninformative(cls, length: int, direction: SoftDirection = SoftDirection.DEC_TO_ESE) -> "SoftFrame":
        """All-zero LLRs: no prior knowledge about any chip."""
        return cls(np.zeros(length), direction)

    @property
    def soft_chips(self) -> np.ndarray:
        """Soft chip estimates tanh(llr / 2)."""
        return np.tanh(self.llr / 2.0)


@dataclass(frozen=True, eq=False)
class FrameTrace:
    """Outcome of decoding one frame over several CBC iterations."""
    decoded_bits: np.ndarray
    empirical_sinr: np.ndarray
    bit_errors: np.ndarray

    @property
    def iterations(self) -> int:
        """Number of CBC iterations run."""
        return int(self.empirical_sinr.shape[0])

    @property
    def final_sinr(self) -> np.ndarray:
        """Genie SINR per user at the last iteration."""
        return self.empirical_sinr[-1]

    @property
    def final_bit_errors(self) -> np.ndarray:
        """Bit errors per user after the last iteration."""
        return self.bit_errors[-1]
