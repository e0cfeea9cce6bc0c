"""Render the phase-gate dynamics figure: <n>(t) per sector, phase(t),
and the phase-vs-M_J parabola with the fitted curve overlaid.

Inputs: gate_trace.csv (t, m, nbar, phase, return_fidelity, ...) and
phase_vs_m.csv (m, phase, fit_residual) with its .meta.json carrying the
fitted quadratic coefficient.

Usage: python3 plot_phase_gate.py gate_trace.csv phase_vs_m.csv --out phase_gate.png
"""

from __future__ import annotations

import argparse
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from figcommon import SchemaError, checksum_columns, load_json, read_csv_columns, write_checksum_sidecar

TRACE_COLUMNS = ["t", "m", "nbar", "phase", "return_fidelity"]
FIT_COLUMNS = ["m", "phase", "fit_residual"]


def render(trace_csv, fit_csv, out_path, fit_meta=None):
    trace, trace_raw = read_csv_columns(trace_csv, TRACE_COLUMNS)
    fit, fit_raw = read_csv_columns(fit_csv, FIT_COLUMNS)

    fig, (ax1, ax2, ax3) = plt.subplots(1, 3, figsize=(13, 3.8))
    t = np.array(trace["t"])
    m_col = np.array(trace["m"])
    for m in sorted(set(trace["m"])):
        sel = m_col == m
        ax1.plot(t[sel], np.array(trace["nbar"])[sel], label=f"m = {m:g}")
        ax2.plot(t[sel], np.array(trace["phase"])[sel], label=f"m = {m:g}")
    ax1.set_xlabel("time (units of 1/delta')")
    ax1.set_ylabel("<n>")
    ax1.legend(fontsize=7)
    ax2.set_xlabel("time (units of 1/delta')")
    ax2.set_ylabel("accumulated phase (rad)")

    m_fit = np.array(fit["m"])
    phi_fit = np.array(fit["phase"])
    ax3.plot(m_fit, phi_fit, "D", color="tab:blue", label="simulated")
    if fit_meta and os.path.exists(fit_meta):
        a = load_json(fit_meta)["coefficient"]
        m_dense = np.linspace(m_fit.min(), m_fit.max(), 201)
        ax3.plot(m_dense, a * m_dense**2, "-", color="tab:orange",
                 label=f"fit a m^2, a = {a:.4g}")
    ax3.set_xlabel("M_J")
    ax3.set_ylabel("phase after k loops (rad)")
    ax3.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)

    entries = [
        {"input": trace_csv, "columns": TRACE_COLUMNS,
         "sha256": checksum_columns(trace_raw, TRACE_COLUMNS)},
        {"input": fit_csv, "columns": FIT_COLUMNS,
         "sha256": checksum_columns(fit_raw, FIT_COLUMNS)},
    ]
    write_checksum_sidecar(out_path, entries)
    return entries


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("trace_csv", help="gate_trace.csv from the simulation CLI")
    parser.add_argument("fit_csv", help="phase_vs_m.csv from the simulation CLI")
    parser.add_argument("--meta", help="phase_vs_m.meta.json (fit coefficient)")
    parser.add_argument("--out", default="phase_gate.png")
    args = parser.parse_args(argv)
    meta = args.meta
    if meta is None:
        guess = args.fit_csv.replace(".csv", ".meta.json")
        meta = guess if os.path.exists(guess) else None
    try:
        render(args.trace_csv, args.fit_csv, args.out, meta)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
