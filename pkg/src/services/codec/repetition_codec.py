"""Repetition encoder and soft/hard decoders."""
import numpy as np

from src.schemas.coding import CodeConfig


class RepetitionCodec:
    """Service for repetition coding of antipodal bit frames."""

    def __init__(self, cfg: CodeConfig):
        """Initialize the codec with its code configuration."""
        self.cfg = cfg

    def encode(self, bits: np.ndarray) -> np.ndarray:
        """
        Repeat every bit N times contiguously.

        Args:
            bits: +/-1 array whose last axis has length M_info

        Returns:
            +/-1 chips whose last axis has length M_chips

        Raises:
            ValueError: If the length or the alphabet is wrong
        """
        bits = np.asarray(bits)
        if bits.shape[-1] != self.cfg.M_info:
            raise ValueError(
                f"frame has {bits.shape[-1]} bits, code expects M_info={self.cfg.M_info}"
            )
        if not np.all(np.abs(bits) == 1):
            raise ValueError("bits must take values in {-1, +1}")
        return np.repeat(bits, self.cfg.N, axis=-1)

    def _blocks(self, chip_values: np.ndarray) -> np.ndarray:
        chip_values = np.asarray(chip_values, dtype=float)
        if chip_values.shape[-1] != self.cfg.M_chips:
            raise ValueError(
                f"sequence has {chip_values.shape[-1]} chips, code expects M_chips={self.cfg.M_chips}"
            )
        return chip_values.reshape(chip_values.shape[:-1] + (self.cfg.M_info, self.cfg.N))

    def bit_llr(self, chip_llr: np.ndarray) -> np.ndarray:
        """A posteriori bit LLRs: sum of the N chip LLRs of each bit."""
        return self._blocks(chip_llr).sum(axis=-1)

    def extrinsic(self, chip_llr: np.ndarray) -> np.ndarray:
        """
        Leave-one-out chip LLRs in code order.

        Each chip receives the sum of the other N-1 chip LLRs of its bit.
        """
        blocks = self._blocks(chip_llr)
        total = blocks.sum(axis=-1, keepdims=True)
        return (total - blocks).reshape(np.shape(chip_llr))

    @staticmethod
    def hard_decision(bit_llr: np.ndarray) -> np.ndarray:
        """Sign of the bit LLRs, ties decided as +1."""
        return np.where(np.asarray(bit_llr) >= 0.0, 1, -1)

    def majority_decode(self, chips: np.ndarray) -> np.ndarray:
        """Majority vote over each block of hard chips."""
        return self.hard_decision(self.bit_llr(chips))
