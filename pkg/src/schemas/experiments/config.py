"""Experiment configuration schema."""
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import settings
from src.models.enums import GoodputExponent, InterfererPower, Schedule, SweepAxis
from src.schemas.coding import CodeConfig
from src.schemas.game import GameParams

ANALYTIC_PROFILE = "analytic"
ESTIMATE_PROFILE = "estimate"


def _parse_number(token: str) -> float:
    token = token.strip()
    if "/" in token:
        return float(Fraction(token))
    return float(token)


class ExperimentConfig(BaseModel):
    """
    Merged configuration of one CLI run.

    Keys accept the dashed spelling used in config files and on the command
    line (``M-info``, ``p-max``...) as well as the attribute names.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    K: int = Field(16, ge=1)
    N: int = Field(16, ge=1)
    M_info: int = Field(1000, ge=1, alias="M-info")
    s: float = Field(1.0, gt=0)
    sigma2: float = Field(1.0, gt=0)
    p_max: float = Field(math.inf, ge=0, alias="p-max")
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0)
    workers: int = Field(default_factory=lambda: settings.WORKERS, ge=1)
    epsilon: float = Field(1e-8, gt=0)
    delta: float = Field(0.1, gt=0, le=0.5)
    goodput_exponent: GoodputExponent = Field(GoodputExponent.INFO, alias="goodput-exponent")
    gamma0_interferer_power: InterfererPower = Field(
        InterfererPower.PMAX, alias="gamma0-interferer-power"
    )
    sweep_axis: SweepAxis = Field(SweepAxis.NONE, alias="sweep-axis")
    sweep_values: Tuple[float, ...] = Field((), alias="sweep-values")
    profile: str = Field(ANALYTIC_PROFILE, description="Profile CSV path, 'analytic' or 'estimate'")
    trials: int = Field(200, ge=1, description="Frames per grid point of estimate-f")
    iterations: int = Field(30, ge=1, description="CBC turbo iterations")
    frames: int = Field(200, ge=1, description="Monte Carlo frames per validation point")
    schedule: Schedule = Schedule.PARALLEL
    damping: float = Field(0.5, ge=0, lt=1, description="Weight of the previous round in the CBC feedback")
    users_draw: Optional[int] = Field(None, ge=1, alias="users-draw")
    allow_overloaded: bool = Field(False, alias="allow-overloaded")

    @field_validator("p_max", mode="before")
    @classmethod
    def parse_p_max(cls, v: Any) -> Any:
        """Accept 'inf' spellings from text files."""
        if isinstance(v, str):
            return float(v.strip())
        return v

    @field_validator("sweep_values", mode="before")
    @classmethod
    def parse_sweep_values(cls, v: Any) -> Any:
        """Split comma-separated lists and read fractions such as 1/16."""
        if v is None:
            return ()
        if isinstance(v, str):
            tokens = [token for token in v.split(",") if token.strip()]
            try:
                return tuple(_parse_number(token) for token in tokens)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"sweep-values must be numbers or fractions: {v!r}") from exc
        return tuple(float(_parse_number(x) if isinstance(x, str) else x) for x in v)

    @model_validator(mode="after")
    def check_sweep(self) -> "ExperimentConfig":
        """Validate sweep values for their axis."""
        if self.sweep_axis != SweepAxis.NONE and not self.sweep_values:
            raise ValueError(f"sweep-axis={self.sweep_axis.value} needs sweep-values")
        for value in self.sweep_values:
            if self.sweep_axis == SweepAxis.RATE:
                if not 0.0 < value <= 1.0 or abs(1.0 / value - round(1.0 / value)) > 1e-9:
                    raise ValueError(f"rate sweep values must be 1/N, got {value}")
            elif self.sweep_axis in (SweepAxis.FRAME_LENGTH, SweepAxis.USERS):
                if value < 1 or value != int(value):
                    raise ValueError(
                        f"{self.sweep_axis.value} sweep values must be positive integers, got {value}"
                    )
            elif self.sweep_axis == SweepAxis.S_EXPONENT and value <= 0.0:
                raise ValueError(f"s-exponent sweep values must be positive, got {value}")
        return self

    @property
    def is_overloaded(self) -> bool:
        """True when the base scenario has K/N > 1."""
        return self.K > self.N

    def overloaded_points(self) -> List[Tuple[int, int]]:
        """(K, N) of every scenario point with K/N > 1, sweep overrides applied."""
        loads = []
        for _, overrides in self.sweep_points():
            K = overrides.get("K", self.K)
            N = overrides.get("N", self.N)
            if K > N:
                loads.append((K, N))
        return loads

    def sweep_points(self) -> List[Tuple[float, Dict[str, Any]]]:
        """(sweep value, scenario overrides) pairs sorted by value."""
        if self.sweep_axis == SweepAxis.NONE:
            return [(math.nan, {})]
        points = []
        for value in sorted(self.sweep_values):
            if self.sweep_axis == SweepAxis.RATE:
                points.append((value, {"N": int(round(1.0 / value))}))
            elif self.sweep_axis == SweepAxis.FRAME_LENGTH:
                points.append((value, {"M_info": int(value)}))
            elif self.sweep_axis == SweepAxis.USERS:
                points.append((value, {"K": int(value)}))
            else:
                points.append((value, {"s": value}))
        return points

    def code_config(self, **overrides: Any) -> CodeConfig:
        """Repetition code of the scenario, optionally with N or M_info replaced."""
        return CodeConfig(
            N=overrides.get("N", self.N),
            M_info=overrides.get("M_info", self.M_info),
            exponent=self.goodput_exponent
        )

    def game_params(self, **overrides: Any) -> GameParams:
        """Game parameters of the scenario with sweep overrides applied."""
        return GameParams(
            K=overrides.get("K", self.K),
            s=overrides.get("s", self.s),
            code=self.code_config(**overrides),
            noise_var=self.sigma2,
            p_max=self.p_max,
            epsilon=self.epsilon,
            delta=self.delta,
            gamma0_interferer_power=self.gamma0_interferer_power,
            allow_overloaded=self.allow_overloaded
        )

    def header_items(self) -> Dict[str, str]:
        """Every setting under its dashed key, formatted for CSV comment lines."""
        items = {}
        for name, value in self.model_dump(by_alias=True).items():
            if isinstance(value, tuple):
                value = ",".join(repr(x) for x in value)
            elif hasattr(value, "value"):
                value = value.value
            elif isinstance(value, float):
                value = repr(value)
            items[name] = str(value)
        return items
