"""Shared helpers for the figure scripts.

The scripts consume the simulation CLI's CSV/JSON outputs only; no
quantitative content is produced here.  Every rendered figure gets a
sidecar ``<image>.checksum.json`` holding a SHA-256 of exactly the CSV
cells that were plotted, so provenance can be verified against the source
files.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field


class SchemaError(Exception):
    """Input file does not match the documented CSV schema."""


@dataclass
class FigureSpec:
    """What to read, what to draw, where to put it."""

    inputs: list
    output: str
    panels: list = field(default_factory=list)
    xlabel: str = ""
    ylabel: str = ""


def read_csv_columns(path, required):
    """Parse a CSV into float columns, keeping the raw cell strings.

    Raises SchemaError naming the first missing column.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        for col in required:
            if col not in header:
                raise SchemaError(f"{path}: missing column '{col}'")
        raw = {col: [] for col in header}
        for row in reader:
            if len(row) != len(header):
                raise SchemaError(f"{path}: ragged row {row!r}")
            for col, cell in zip(header, row):
                raw[col].append(cell)
    values = {}
    for col in header:
        try:
            values[col] = [float(c) for c in raw[col]]
        except ValueError:
            raise SchemaError(f"{path}: non-numeric data in column '{col}'") from None
    return values, raw


def checksum_columns(raw, columns):
    """SHA-256 over the named columns' raw cells, in column order."""
    h = hashlib.sha256()
    for col in columns:
        h.update(col.encode())
        h.update(b"\x00")
        for cell in raw[col]:
            h.update(cell.encode())
            h.update(b"\x1f")
        h.update(b"\x1e")
    return h.hexdigest()


def write_checksum_sidecar(image_path, entries):
    """entries: list of {"input": path, "columns": [...], "sha256": hex}."""
    sidecar = image_path + ".checksum.json"
    with open(sidecar, "w", newline="") as fh:
        json.dump({"plotted_data": entries}, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
