"""Row schemas of the CSV files written by the experiments."""
from typing import Optional

from pydantic import BaseModel, ConfigDict


class CsvRow(BaseModel):
    """Base row; field order is the column order."""
    model_config = ConfigDict(frozen=True)


class ProfileRow(CsvRow):
    gamma: float
    f: float


class SolutionRow(CsvRow):
    """Optimal SINR of one scenario, or the infeasibility record."""
    K: int
    N: int
    M_info: int
    s: float
    sigma2: float
    p_max: float
    gamma_star: Optional[float]
    residual: Optional[float]
    iterations: Optional[int]
    k_max: Optional[float]
    status: str


class AllocationRow(CsvRow):
    user: int
    gain: float
    power: float
    status: str
    gamma0_pmax: float


class SweepRow(CsvRow):
    """One point of a z(gamma) / utility curve."""
    axis: str
    value: float
    gamma: float
    gamma_db: float
    target: float
    utility: float
    gamma_star: float


class ValidationRow(CsvRow):
    """Predicted versus simulated SINR, utility and bit error rate at one power."""
    power: float
    gamma_predicted: float
    gamma_predicted_db: float
    gamma_simulated: float
    gamma_simulated_se: float
    utility_predicted: float
    utility_simulated: float
    utility_simulated_se: float
    ber_predicted: float
    ber_simulated: float
    ber_simulated_se: float


class TraceRow(CsvRow):
    frame: int
    iter: int
    user: int
    empirical_sinr: float
    predicted_sinr: float
    bit_errors: int
