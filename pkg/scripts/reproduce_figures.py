"""Regenerate the figure and table data from the shipped scenario files.

    python3 scripts/reproduce_figures.py --out results [--plot] [--only fig2]

Figure 1 scenarios produce spectrum CSVs, figures 2-5 produce dynamics CSVs
plus an ``analyze`` report, and ``table1`` writes the revival table.  With
``--plot`` (needs matplotlib) a PNG is drawn next to each CSV.
"""
from __future__ import annotations

import argparse
import csv
import pathlib
import sys
import time

from qjcm.cli import run
from qjcm.scenario import load_scenario

ROOT = pathlib.Path(__file__).resolve().parent.parent


def _read(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


def _plot(kind, csv_path, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = _read(csv_path)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    if kind == "spectrum":
        for n in sorted(set(data["n"])):
            idx = [i for i, v in enumerate(data["n"]) if v == n]
            x = [data["delta_over_omega"][i] for i in idx]
            style = "--" if n == 1 else "-"
            for key in ("e_plus_over_omega", "e_minus_over_omega"):
                ax.plot(x, [data[key][i] for i in idx], style, color="k", lw=0.8)
        ax.set_xlabel("detuning / omega")
        ax.set_ylabel("E / omega")
    else:
        ax.plot(data["gt"], data["sigma3"], lw=0.6, label="sigma3")
        ax.plot(data["gt"], data["F1"], lw=0.6, label="F1")
        ax.set_xlabel("gt")
        ax.legend(loc="upper right", fontsize=7)
    ax.set_title(title, fontsize=8)
    fig.tight_layout()
    fig.savefig(csv_path.with_suffix(".png"), dpi=120)
    plt.close(fig)


def _title(path):
    first = path.read_text().splitlines()[0]
    return first.lstrip("# ").strip() if first.startswith("#") else path.stem


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenarios", type=pathlib.Path, default=ROOT / "scenarios")
    ap.add_argument("--out", type=pathlib.Path, default=ROOT / "results")
    ap.add_argument("--only", default="", help="process only files whose name starts with this")
    ap.add_argument("--plot", action="store_true", help="also draw PNGs (requires matplotlib)")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    status = 0
    for path in sorted(args.scenarios.glob(f"{args.only}*.cfg")):
        scenario = load_scenario(path)
        if path.stem.startswith("fig1"):
            jobs = ["spectrum"]
        elif path.stem == "table1":
            jobs = ["table1"]
        else:
            jobs = ["dynamics", "analyze"]
        for job in jobs:
            suffix = ".txt" if job == "analyze" else ".csv"
            target = args.out / f"{path.stem}_{job}{suffix}"
            start = time.perf_counter()
            code = run(job, scenario, target)
            status = max(status, code)
            print(f"{path.stem:<22} {job:<9} exit={code} {time.perf_counter() - start:6.2f}s -> {target.name}")
            if args.plot and job in ("spectrum", "dynamics"):
                _plot(job, target, _title(path))
    return status


if __name__ == "__main__":
    sys.exit(main())
