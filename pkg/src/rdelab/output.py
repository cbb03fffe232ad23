"""CSV / JSON Lines emission with exact rational strings."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import IO, Optional, Sequence

FORMATS = ("csv", "jsonl")


def approx(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering rounded half-to-even at ``digits`` places (non-authoritative)."""
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    scaled = round(abs(value) * 10**digits)
    sign = "-" if value < 0 and scaled else ""
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


class RowWriter:
    """Writes rows as CSV (with header) or as one JSON object per line."""

    def __init__(self, stream: IO[str], fmt: str, columns: Sequence[str]):
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}")
        self.stream = stream
        self.fmt = fmt
        self.columns = list(columns)
        self._csv: Optional[csv.writer] = None
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(self.columns)

    def write(self, **row) -> None:
        if self._csv is not None:
            self._csv.writerow(["" if row.get(c) is None else row[c] for c in self.columns])
        else:
            self.stream.write(json.dumps({k: v for k, v in row.items() if v is not None}) + "\n")
