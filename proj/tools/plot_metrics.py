#!/usr/bin/env python3
"""Plot clipppo CSV outputs.

Reads only the committed CSV schemas; the training engine has no plotting
dependency. Two modes:

  plot_metrics.py run <run_dir> [--out fig.png]
      epsilon, clip fraction and last-100 return of one metrics.csv

  plot_metrics.py compare <compare_dir> [--out fig.png]
      per-schedule clip-fraction curves from clip_fractions.csv
      (seed-wise curves, schedule-colored), plus last-100 curves
"""

import argparse
import csv
import os
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

COLORS = {"constant": "tab:blue", "linear": "tab:orange", "exp": "tab:green"}


def read_rows(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    return header, data


def plot_run(run_dir, out):
    header, data = read_rows(os.path.join(run_dir, "metrics.csv"))
    col = {name: i for i, name in enumerate(header)}
    steps = [int(r[col["timesteps"]]) for r in data]
    eps = [float(r[col["epsilon"]]) for r in data]
    clip = [float(r[col["clip_fraction"]]) for r in data]
    ret = [float(r[col["mean_ep_return_last100"]]) for r in data]

    fig, axes = plt.subplots(3, 1, figsize=(7, 9), sharex=True)
    axes[0].plot(steps, eps)
    axes[0].set_ylabel("clipping range")
    axes[1].plot(steps, clip)
    axes[1].set_ylabel("clip fraction")
    axes[2].plot(steps, ret)
    axes[2].set_ylabel("last-100 return")
    axes[2].set_xlabel("timesteps")
    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


def plot_compare(cmp_dir, out):
    header, data = read_rows(os.path.join(cmp_dir, "clip_fractions.csv"))
    col = {name: i for i, name in enumerate(header)}
    curves = defaultdict(list)
    for r in data:
        key = (r[col["schedule"]], r[col["seed"]])
        curves[key].append((int(r[col["timesteps"]]), float(r[col["clip_fraction"]])))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    seen = set()
    for (schedule, seed), points in sorted(curves.items()):
        points.sort()
        xs, ys = zip(*points)
        label = schedule if schedule not in seen else None
        seen.add(schedule)
        ax.plot(xs, ys, color=COLORS.get(schedule, "gray"), alpha=0.7, label=label)
    ax.set_xlabel("timesteps")
    ax.set_ylabel("clip fraction")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=130)
    print(f"wrote {out}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("mode", choices=["run", "compare"])
    parser.add_argument("directory")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    out = args.out or os.path.join(args.directory, f"{args.mode}_plot.png")
    if args.mode == "run":
        plot_run(args.directory, out)
    else:
        plot_compare(args.directory, out)


if __name__ == "__main__":
    sys.exit(main())
