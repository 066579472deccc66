"""Decibel conversions for output columns."""
from typing import Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


def to_db(value: ArrayLike) -> ArrayLike:
    """10 log10(value); zero maps to -inf."""
    with np.errstate(divide="ignore"):
        result = 10.0 * np.log10(np.asarray(value, dtype=float))
    return float(result) if np.ndim(result) == 0 else result


def from_db(value: ArrayLike) -> ArrayLike:
    """Inverse of :func:`to_db`."""
    result = 10.0 ** (np.asarray(value, dtype=float) / 10.0)
    return float(result) if np.ndim(result) == 0 else result
