"""CSV emission and parsing for trajectories and tables."""

from __future__ import annotations

import csv
import enum
import io
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

__all__ = ["DECIMALS", "format_value", "write_csv", "read_csv", "parse_number"]

DECIMALS = 9


def format_value(value) -> str:
    """Render a cell: floats with 9 decimal places, negative zero folded to zero."""
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, int)) and not isinstance(value, float):
        return str(value)
    x = float(value)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = f"{x:.{DECIMALS}f}"
    if text.startswith("-") and not text.strip("-0."):
        text = text[1:]
    return text


def _render(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(header: Sequence[str], rows: Iterable[Sequence], destination=None) -> None:
    """Write ``header`` then ``rows`` to a path, an open text stream, or stdout (``None``/``"-"``)."""
    text = _render(header, rows)
    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text)


def read_csv(source):
    """Parse a file written by :func:`write_csv` into ``(header, rows)``; numeric cells become floats."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text()
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = []
    for raw in reader:
        row = []
        for cell in raw:
            try:
                row.append(float(cell))
            except ValueError:
                row.append(cell)
        rows.append(row)
    return header, rows


def parse_number(text: str) -> float:
    """Parse ``"0.001953125"``, ``"1e-3"`` or an exact ratio such as ``"1/512"``."""
    s = str(text).strip()
    if "/" in s:
        num, _, den = s.partition("/")
        value = Fraction(num.strip()) / Fraction(den.strip())
        return float(value)
    value = float(s)
    return value
