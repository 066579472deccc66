"""Base repository writing schema rows to commented CSV files."""
import csv
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Generic, Iterable, List, Optional, Type, TypeVar

from src.config import settings
from src.schemas.experiments import CsvRow
from src.services.errors import ConfigError

logger = logging.getLogger(__name__)

RowType = TypeVar("RowType", bound=CsvRow)


def format_value(value: Any) -> str:
    """Render one cell: shortest round-trip floats, enum values, empty for None."""
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


class BaseCsvRepository(Generic[RowType]):
    """
    Repository for one CSV file of ``row_type`` rows.

    Files start with ``#``-prefixed ``key=value`` comment lines followed by a
    header line with the row fields in declaration order.
    """

    def __init__(self, row_type: Type[RowType], path: Path):
        """Initialize repository with the row schema and target file."""
        self.row_type = row_type
        self.path = Path(path)

    @property
    def columns(self) -> List[str]:
        """Column names in file order."""
        return list(self.row_type.model_fields)

    @staticmethod
    def reproducibility_header(config_items: Dict[str, str], seed: Optional[int] = None) -> Dict[str, str]:
        """Sorted configuration plus seed and artifact version; no timestamps."""
        header = dict(sorted(config_items.items()))
        if seed is not None:
            header["seed"] = str(seed)
        header["artifact_version"] = settings.artifact_version
        return header

    def write(self, rows: Iterable[RowType], comments: Optional[Dict[str, str]] = None) -> Path:
        """
        Write all rows, replacing the file.

        Raises:
            ConfigError: If the file cannot be written
        """
        rows = list(rows)
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("w", encoding="utf-8", newline="") as handle:
                for key, value in (comments or {}).items():
                    handle.write(f"# {key}={value}\n")
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(self.columns)
                for row in rows:
                    writer.writerow([format_value(getattr(row, name)) for name in self.columns])
        except OSError as exc:
            raise ConfigError(f"cannot write {self.path}: {exc}") from exc
        logger.info(f"wrote {len(rows)} rows to {self.path}")
        return self.path

    def read(self) -> List[RowType]:
        """Parse every data row back into ``row_type``."""
        return [self.row_type(**record) for record in self._records()[1]]

    def read_comments(self) -> Dict[str, str]:
        """The ``key=value`` comment lines of the file."""
        return self._records()[0]

    def _records(self):
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ConfigError(f"cannot read {self.path}: {exc}") from exc

        comments: Dict[str, str] = {}
        data: List[str] = []
        for line in lines:
            if line.startswith("#"):
                key, sep, value = line[1:].strip().partition("=")
                if sep:
                    comments[key.strip()] = value.strip()
            elif line.strip():
                data.append(line)

        records = [
            {key: (value if value != "" else None) for key, value in record.items()}
            for record in csv.DictReader(data)
        ]
        return comments, records
