"""Tabular results and bit-stable CSV/JSON emission.

All floats are written with 17 significant digits ('%.17g'), '.' decimal
separator and '\n' line endings so identical runs produce byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


def fmt_float(x) -> str:
    """Canonical float formatting: round-trippable, locale-independent."""
    return f"{float(x):.17g}"


def _cell(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return fmt_float(x)


@dataclass
class SweepResult:
    """Columns of a parameter sweep plus run metadata.

    ``columns`` is an ordered mapping name -> 1d array; all columns share
    one length (the abscissa comes first by convention).
    """

    columns: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"ragged columns: lengths {sorted(lengths)}")

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def to_csv_text(self) -> str:
        names = list(self.columns)
        lines = [",".join(names)]
        cols = [np.asarray(self.columns[n]) for n in names]
        for i in range(self.n_rows):
            lines.append(",".join(_cell(c[i]) for c in cols))
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "metadata": self.metadata,
            "columns": {k: np.asarray(v).tolist() for k, v in self.columns.items()},
        }


def write_text(path, text: str):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def write_json(path, obj):
    with open(path, "w", newline="") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
