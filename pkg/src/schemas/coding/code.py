"""Repetition code configuration schema."""
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from src.models.enums import GoodputExponent


class CodeConfig(BaseModel):
    """Repetition code of factor N applied to frames of M_info bits."""
    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Repetition factor (chips per bit)")
    M_info: int = Field(..., ge=1, description="Information bits per frame")
    exponent: GoodputExponent = Field(
        GoodputExponent.INFO,
        description="Frame length used as the goodput exponent"
    )

    @property
    def rate(self) -> Fraction:
        """Code rate R = 1/N."""
        return Fraction(1, self.N)

    @property
    def M_chips(self) -> int:
        """Chips per frame M = N * M_info."""
        return self.N * self.M_info

    @property
    def frame_exponent(self) -> int:
        """Exponent M of the goodput (1 - P_e)^M."""
        if self.exponent == GoodputExponent.CHIPS:
            return self.M_chips
        return self.M_info
