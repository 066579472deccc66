"""Profile table persistence."""
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional

from pydantic import ValidationError

from src.models.profile import IcProfile, ProfileMetadata
from src.repositories.base import BaseCsvRepository
from src.schemas.experiments import ProfileRow
from src.services.errors import ConfigError


class ProfileRepository(BaseCsvRepository[ProfileRow]):
    """Repository for ``gamma,f`` profile tables with estimation metadata."""

    def __init__(self, path: Path):
        """Initialize repository for one profile file."""
        super().__init__(ProfileRow, path)

    def save(self, profile: IcProfile, header: Optional[Dict[str, str]] = None) -> Path:
        """Write the table with ``rate``, ``frame_bits`` and ``trials`` comments after ``header``."""
        meta = profile.metadata
        comments = dict(header or {})
        if meta.rate is not None:
            comments["rate"] = str(meta.rate)
        if meta.frame_bits is not None:
            comments["frame_bits"] = str(meta.frame_bits)
        if meta.trials is not None:
            comments["trials"] = str(meta.trials)
        rows = [
            ProfileRow(gamma=float(gamma), f=float(f))
            for gamma, f in zip(profile.gamma_grid, profile.f_values)
        ]
        return self.write(rows, comments)

    def load(self) -> IcProfile:
        """
        Read a profile table.

        Raises:
            ConfigError: If the file is missing or violates the profile invariants
        """
        comments, records = self._records()
        try:
            rows = [ProfileRow(**record) for record in records]
            metadata = ProfileMetadata(
                rate=Fraction(comments["rate"]) if "rate" in comments else None,
                frame_bits=int(comments["frame_bits"]) if "frame_bits" in comments else None,
                trials=int(comments["trials"]) if "trials" in comments else None
            )
            return IcProfile([row.gamma for row in rows], [row.f for row in rows], metadata)
        except (ValidationError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid profile file {self.path}: {exc}") from exc
