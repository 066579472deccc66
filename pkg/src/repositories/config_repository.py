"""Flat key=value experiment configuration files."""
from pathlib import Path
from typing import Dict

from src.services.errors import ConfigError


class ConfigRepository:
    """Repository for experiment configuration files."""

    def __init__(self, path: Path):
        """Initialize repository for one configuration file."""
        self.path = Path(path)

    def load(self) -> Dict[str, str]:
        """
        Parse ``key=value`` lines; blank lines and ``#`` comments are skipped.

        Raises:
            ConfigError: On unreadable files, malformed or duplicated keys
        """
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {self.path}: {exc}") from exc

        values: Dict[str, str] = {}
        for number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise ConfigError(f"{self.path}:{number}: expected key=value, got {raw!r}")
            if key in values:
                raise ConfigError(f"{self.path}:{number}: duplicate key {key!r}")
            values[key] = value
        return values
