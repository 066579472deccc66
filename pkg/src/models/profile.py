"""Interference-cancellation profile f(gamma)."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class ProfileMetadata:
    """Estimation metadata carried alongside a profile table."""
    rate: Optional[Fraction] = None
    frame_bits: Optional[int] = None
    trials: Optional[int] = None


class IcProfile:
    """
    Tabulated residual-variance factor f(gamma) of a decoded chip estimate.

    The table is interpolated with a monotone piecewise-cubic (PCHIP)
    interpolant, so the derivative is continuous and never positive. Two-point
    tables fall back to linear interpolation. Outside the grid the end values
    are held constant.

    Example usage:
        profile = IcProfile([0.0, 10.0], [1.0, 0.0])
        profile.f_eval(5.0)    # 0.5
        profile.f_prime(5.0)   # -0.1
    """

    def __init__(
        self,
        gamma_grid,
        f_values,
        metadata: Optional[ProfileMetadata] = None
    ):
        """
        Validate the table and build the interpolant.

        Args:
            gamma_grid: Strictly ascending SINR samples (linear scale, >= 0)
            f_values: Residual-variance factors in [0, 1], non-increasing
            metadata: Code rate, frame length and trial count of the estimate

        Raises:
            ValueError: If the table violates any profile invariant
        """
        grid = np.array(gamma_grid, dtype=float)
        values = np.array(f_values, dtype=float)

        if grid.ndim != 1 or values.ndim != 1:
            raise ValueError("gamma_grid and f_values must be one-dimensional")
        if grid.size != values.size:
            raise ValueError(
                f"gamma_grid has {grid.size} points but f_values has {values.size}"
            )
        if grid.size < 2:
            raise ValueError("a profile needs at least two grid points")
        if not (np.all(np.isfinite(grid)) and np.all(np.isfinite(values))):
            raise ValueError("profile table contains non-finite entries")
        if grid[0] < 0.0:
            raise ValueError(f"gamma_grid starts below zero: {grid[0]}")
        if np.any(np.diff(grid) <= 0.0):
            raise ValueError("gamma_grid must be strictly ascending")
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValueError("f_values must lie in [0, 1]")
        if np.any(np.diff(values) > 0.0):
            raise ValueError("f_values must be non-increasing along gamma_grid")

        grid.setflags(write=False)
        values.setflags(write=False)
        self._gamma_grid = grid
        self._f_values = values
        self.metadata = metadata or ProfileMetadata()

        if grid.size == 2:
            self._interpolant = None
            self._slope = (values[1] - values[0]) / (grid[1] - grid[0])
        else:
            self._interpolant = PchipInterpolator(grid, values, extrapolate=False)
            self._derivative = self._interpolant.derivative()

    @classmethod
    def constant(cls, value: float, gamma_max: float = 1.0e3) -> "IcProfile":
        """Build the flat profile f(gamma) = value on [0, gamma_max]."""
        return cls([0.0, gamma_max], [value, value])

    @property
    def gamma_grid(self) -> np.ndarray:
        """Read-only SINR sample points."""
        return self._gamma_grid

    @property
    def f_values(self) -> np.ndarray:
        """Read-only tabulated factors."""
        return self._f_values

    def f_eval(self, gamma: ArrayLike) -> ArrayLike:
        """
        Interpolated f(gamma), clamped to the end values outside the grid.

        Args:
            gamma: SINR value or array (linear scale, >= 0)

        Returns:
            Factor in [0, 1] with the shape of the input
        """
        x = self._check_gamma(gamma)
        clamped = np.clip(x, self._gamma_grid[0], self._gamma_grid[-1])
        if self._interpolant is None:
            result = self._f_values[0] + self._slope * (clamped - self._gamma_grid[0])
        else:
            result = self._interpolant(clamped)
        result = np.clip(result, 0.0, 1.0)
        return float(result) if np.ndim(result) == 0 else result

    def f_prime(self, gamma: ArrayLike) -> ArrayLike:
        """
        Derivative of the interpolant; zero where the profile is clamped.

        Args:
            gamma: SINR value or array (linear scale, >= 0)

        Returns:
            df/dgamma, never positive
        """
        x = self._check_gamma(gamma)
        inside = (x >= self._gamma_grid[0]) & (x <= self._gamma_grid[-1])
        clamped = np.clip(x, self._gamma_grid[0], self._gamma_grid[-1])
        if self._interpolant is None:
            slope = np.full_like(clamped, self._slope, dtype=float)
        else:
            slope = self._derivative(clamped)
        result = np.where(inside, np.minimum(slope, 0.0), 0.0)
        return float(result) if np.ndim(result) == 0 else result

    @staticmethod
    def _check_gamma(gamma: ArrayLike) -> np.ndarray:
        x = np.asarray(gamma, dtype=float)
        if np.any(x < 0.0) or np.any(np.isnan(x)):
            raise ValueError(f"SINR must be non-negative, got {gamma}")
        return x

    def __len__(self) -> int:
        return int(self._gamma_grid.size)

    def __repr__(self) -> str:
        return "{0}(points={1}, gamma=[{2:g}, {3:g}], rate={4})".format(
            self.__class__.__name__,
            len(self),
            self._gamma_grid[0],
            self._gamma_grid[-1],
            self.metadata.rate,
        )
