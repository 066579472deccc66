"""Chip interleaver unique to each user."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class Interleaver:
    """
    Permutation of chip positions.

    Output position j takes input position ``permutation[j]``; the
    de-interleaver scatters it back.
    """
    permutation: np.ndarray
    seed: Tuple[int, int] = (0, 0)

    def __post_init__(self):
        perm = np.asarray(self.permutation)
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise ValueError("interleaver must be a permutation of 0..M-1")
        perm.setflags(write=False)
        object.__setattr__(self, "permutation", perm)

    @classmethod
    def for_user(cls, length: int, network_seed: int, user_index: int) -> "Interleaver":
        """Seeded Fisher-Yates permutation for one user of the network."""
        if length < 1:
            raise ValueError(f"interleaver length must be positive, got {length}")
        rng = np.random.default_rng([network_seed, user_index])
        return cls(rng.permutation(length), seed=(network_seed, user_index))

    @classmethod
    def identity(cls, length: int) -> "Interleaver":
        """Interleaver that leaves the chip order unchanged."""
        return cls(np.arange(length))

    @property
    def length(self) -> int:
        """Number of chips M."""
        return int(self.permutation.size)

    def interleave(self, chips: np.ndarray) -> np.ndarray:
        """Permute the last axis of ``chips``."""
        chips = np.asarray(chips)
        self._check_length(chips)
        return chips[..., self.permutation]

    def deinterleave(self, chips: np.ndarray) -> np.ndarray:
        """Undo :meth:`interleave` along the last axis."""
        chips = np.asarray(chips)
        self._check_length(chips)
        restored = np.empty_like(chips)
        restored[..., self.permutation] = chips
        return restored

    def _check_length(self, chips: np.ndarray) -> None:
        if chips.shape[-1] != self.length:
            raise ValueError(
                f"chip sequence has length {chips.shape[-1]}, interleaver expects {self.length}"
            )
