"""Render overlap-probability heatmap panels from husimi_chit_*.csv files.

Each input is a long-format grid (columns theta, phi, probability); one
panel is drawn per input, in the order given.

Usage: python3 plot_husimi.py husimi_chit_0.csv husimi_chit_0.05.csv husimi_chit_0.1.csv --out husimi.png
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figcommon import SchemaError, checksum_columns, read_csv_columns, write_checksum_sidecar

COLUMNS = ["theta", "phi", "probability"]


def render(csv_paths, out_path):
    panels = []
    entries = []
    for path in csv_paths:
        values, raw = read_csv_columns(path, COLUMNS)
        thetas = sorted(set(values["theta"]))
        phis = sorted(set(values["phi"]))
        if len(thetas) * len(phis) != len(values["probability"]):
            raise SchemaError(f"{path}: rows do not form a full theta x phi grid")
        grid = np.full((len(thetas), len(phis)), np.nan)
        ti = {t: i for i, t in enumerate(thetas)}
        pj = {p: j for j, p in enumerate(phis)}
        for t, p, prob in zip(values["theta"], values["phi"], values["probability"]):
            grid[ti[t], pj[p]] = prob
        panels.append((path, thetas, phis, grid))
        entries.append(
            {"input": path, "columns": COLUMNS, "sha256": checksum_columns(raw, COLUMNS)}
        )

    fig, axes = plt.subplots(1, len(panels), figsize=(4 * len(panels), 3.6), squeeze=False)
    for ax, (path, thetas, phis, grid) in zip(axes[0], panels):
        im = ax.pcolormesh(phis, thetas, grid, shading="nearest", vmin=0.0, vmax=1.0,
                           cmap="viridis")
        ax.set_xlabel("phi (rad)")
        ax.set_ylabel("theta (rad)")
        ax.set_title(path.rsplit("/", 1)[-1])
        fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)

    write_checksum_sidecar(out_path, entries)
    return entries


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csvs", nargs="+", help="husimi grid CSVs, one panel each")
    parser.add_argument("--out", default="husimi.png")
    args = parser.parse_args(argv)
    try:
        render(args.csvs, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
