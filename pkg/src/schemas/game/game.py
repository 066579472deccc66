"""Schemas for the power allocation game."""
import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.enums import AllocationStatus, InterfererPower
from src.schemas.coding import CodeConfig


class GameParams(BaseModel):
    """Scenario shared by all players of the game."""
    model_config = ConfigDict(frozen=True)

    K: int = Field(..., ge=1, description="Active users")
    s: float = Field(1.0, gt=0, description="QoS exponent of the utility")
    code: CodeConfig
    noise_var: float = Field(1.0, gt=0, description="Receiver noise variance sigma^2")
    p_max: float = Field(math.inf, ge=0, description="Maximum transmit power")
    epsilon: float = Field(1e-8, gt=0, description="Secant stopping accuracy")
    delta: float = Field(0.1, gt=0, le=0.5, description="Secant initialization step")
    gamma0_interferer_power: InterfererPower = InterfererPower.PMAX
    allow_overloaded: bool = False

    @model_validator(mode="after")
    def check_load(self) -> "GameParams":
        """Reject overloaded systems unless explicitly allowed."""
        if self.K > self.code.N and not self.allow_overloaded:
            raise ValueError(
                f"K={self.K} users with N={self.code.N} is overloaded (K/N > 1)"
            )
        return self

    @property
    def load(self) -> float:
        """System load K/N."""
        return self.K / self.code.N

    @property
    def is_overloaded(self) -> bool:
        """True when K/N > 1."""
        return self.K > self.code.N


class GameSolution(BaseModel):
    """Symmetric optimal SINR of the game."""
    model_config = ConfigDict(frozen=True)

    gamma_star: float
    residual: float
    iterations: int = Field(..., ge=0)
    gamma_min: float
    k_max: float = Field(..., description="Largest user count satisfying K < floor(1/(g f(g)) + 1)")
    feasible: bool


class UserAllocation(BaseModel):
    """Power assigned to one user by the allocation rule."""
    model_config = ConfigDict(frozen=True)

    user: int = Field(..., ge=0)
    gain: float = Field(..., ge=0, description="Channel power gain |h_k|^2")
    power: float = Field(..., ge=0)
    status: AllocationStatus
    gamma0_pmax: float = Field(..., ge=0, description="Initial SINR at maximum power")


class AllocationResult(BaseModel):
    """Allocation of every user for one optimal SINR."""
    model_config = ConfigDict(frozen=True)

    gamma_star: float
    users: List[UserAllocation]

    def count(self, status: AllocationStatus) -> int:
        """Number of users with the given status."""
        return sum(1 for user in self.users if user.status == status)
