"""Render the squeezing-parameter curve xi(chi_t) with its minimum marked.

Input: xi_sweep.csv (columns chi_t, xi, bloch_length) and optionally the
matching .meta.json for the refined minimum location.

Usage: python3 plot_xi_sweep.py xi_sweep.csv --out xi_sweep.png
"""

from __future__ import annotations

import argparse
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from figcommon import SchemaError, checksum_columns, load_json, read_csv_columns, write_checksum_sidecar

COLUMNS = ["chi_t", "xi", "bloch_length"]


def render(csv_path, out_path, meta_path=None):
    values, raw = read_csv_columns(csv_path, COLUMNS)
    chi_t, xi = values["chi_t"], values["xi"]

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    ax1.plot(chi_t, xi, "-", color="tab:blue")
    if meta_path and os.path.exists(meta_path):
        meta = load_json(meta_path)
        ax1.plot(meta["argmin_chi_t"], meta["min_xi"], "v", color="tab:red",
                 label=f"min xi = {meta['min_xi']:.3f}")
    else:
        k = min(range(len(xi)), key=xi.__getitem__)
        ax1.plot(chi_t[k], xi[k], "v", color="tab:red", label=f"min xi = {xi[k]:.3f}")
    ax1.set_ylabel("squeezing parameter xi")
    ax1.axhline(1.0, color="gray", lw=0.5)
    ax1.legend()

    ax2.plot(chi_t, values["bloch_length"], "-", color="tab:green")
    ax2.set_xlabel("twisting strength chi t")
    ax2.set_ylabel("Bloch length |<J>|")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)

    sha = checksum_columns(raw, COLUMNS)
    write_checksum_sidecar(out_path, [{"input": csv_path, "columns": COLUMNS, "sha256": sha}])
    return sha


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", help="xi_sweep.csv from the simulation CLI")
    parser.add_argument("--meta", help="xi_sweep.meta.json (for the refined minimum)")
    parser.add_argument("--out", default="xi_sweep.png")
    args = parser.parse_args(argv)
    meta = args.meta
    if meta is None:
        guess = args.csv.replace(".csv", ".meta.json")
        meta = guess if os.path.exists(guess) else None
    try:
        render(args.csv, args.out, meta)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
