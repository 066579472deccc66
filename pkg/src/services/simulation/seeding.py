"""Counter-based random streams derived from one master seed."""
import numpy as np

# Stream identifiers inside one frame.
PAYLOAD_STREAM = 0
NOISE_STREAM = 1
CHANNEL_STREAM = 2


def derive_rng(master_seed: int, *counters: int) -> np.random.Generator:
    """
    Independent generator for a (master seed, counters...) key.

    The same key always yields the same stream, whichever worker draws it.
    """
    if master_seed < 0 or any(counter < 0 for counter in counters):
        raise ValueError("seeds and counters must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), *map(int, counters)]))
