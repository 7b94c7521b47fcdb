"""File-backed cache for the Stieltjes table."""

import logging
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from hmi.schemas.kernels import StieltjesTable

logger = logging.getLogger(__name__)


class StieltjesCache:
    """Text cache: one ``index value abs_error`` line per constant.

    Values are written with the oracle's full decimal string so the exact
    polynomial layer can rationalise them without losing digits.
    """

    def __init__(self, path: Path):
        self.path = Path(path)

    def load(self) -> Optional[StieltjesTable]:
        """Read the table back; None when the file is missing or malformed."""
        if not self.path.exists():
            return None
        gamma: List[float] = []
        prec: List[float] = []
        digits: List[str] = []
        try:
            for lineno, line in enumerate(self.path.read_text().splitlines()):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                index, value, error = line.split()
                if int(index) != len(gamma):
                    raise ValueError(f"line {lineno + 1}: index {index} out of order")
                gamma.append(float(value))
                prec.append(float(error))
                digits.append(value)
            return StieltjesTable(
                gamma=gamma, prec=prec, digits=digits, source=f"cache:{self.path}"
            )
        except (ValueError, ValidationError) as exc:
            logger.warning("ignoring malformed stieltjes cache %s: %s", self.path, exc)
            return None

    def save(self, table: StieltjesTable) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        lines = ["# index value abs_error"]
        for n in range(table.max_index + 1):
            lines.append(f"{n} {table.decimal(n)} {table.prec[n]:.3e}")
        self.path.write_text("\n".join(lines) + "\n")
        logger.info("wrote stieltjes cache %s", self.path)
