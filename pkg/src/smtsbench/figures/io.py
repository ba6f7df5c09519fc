"""CSV loading for the plotting component.

This subpackage consumes only the delimited files written under
figures_data/ and never mutates them; every renderer also writes a geometry
sidecar JSON recording exactly the values that were drawn."""

from __future__ import annotations

import csv
import json
from pathlib import Path


class FigureDataError(ValueError):
    """Input CSV is missing columns or holds non-numeric values."""


def read_rows(path: str | Path, required: tuple[str, ...]) -> list[dict]:
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise FigureDataError(f"{path}: missing columns {missing}")
        rows = list(reader)
    if not rows:
        raise FigureDataError(f"{path}: no data rows")
    return rows


def as_float(row: dict, key: str, path) -> float:
    try:
        return float(row[key])
    except (TypeError, ValueError) as exc:
        raise FigureDataError(f"{path}: non-numeric {key!r} value {row[key]!r}") from exc


def write_geometry(out_path: str | Path, geometry: dict) -> Path:
    """Sidecar JSON next to the rendered image holding the plotted values."""
    sidecar = Path(out_path).with_suffix(".json")
    sidecar.write_text(json.dumps(geometry, sort_keys=True, indent=1))
    return sidecar
