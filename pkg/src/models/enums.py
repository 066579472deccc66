"""Enumerations used across the application."""
import enum


class AllocationStatus(str, enum.Enum):
    """Outcome of the three-branch power allocation rule for one user."""
    OPTIMAL = "optimal"
    CAPPED = "capped"
    OUTAGE = "outage"


class GoodputExponent(str, enum.Enum):
    """Frame length used as the goodput exponent."""
    INFO = "info"
    CHIPS = "chips"


class InterfererPower(str, enum.Enum):
    """Interferer power assumed in the initial SINR at maximum power."""
    PMAX = "pmax"
    SELF = "self"


class SweepAxis(str, enum.Enum):
    """Parameter varied by a sweep run."""
    RATE = "rate"
    FRAME_LENGTH = "frame-length"
    USERS = "users"
    S_EXPONENT = "s-exponent"
    NONE = "none"


class Schedule(str, enum.Enum):
    """Interference cancellation schedule of the CBC receiver."""
    PARALLEL = "parallel"
    SERIAL = "serial"


class SoftDirection(str, enum.Enum):
    """Direction of extrinsic information inside the turbo loop."""
    ESE_TO_DEC = "ese_to_dec"
    DEC_TO_ESE = "dec_to_ese"
