"""Filesystem reports: delimited layer tables and rendered figures."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .closure import close_catalog
from .commutant import build_catalog


def write_report(alg, out_dir, with_closure=None):
    """Write layers.csv, a layer-size chart, and (rank <= 3) a bracket
    degree heatmap into out_dir. Returns the list of paths written."""
    if with_closure is None:
        with_closure = alg.rank <= 3
    cat = build_catalog(alg)
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    csv_path = os.path.join(out_dir, "layers.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["degree", "name", "case"])
        for g in cat.generators:
            w.writerow([g.degree, g.name, g.case])
    paths.append(csv_path)

    counts = cat.counts()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    degrees = sorted(counts)
    ax.bar(degrees, [counts[d] for d in degrees], color="#4878b0")
    ax.set_xlabel("generator degree")
    ax.set_ylabel("layer size")
    ax.set_title("%s%d commutant layers" % (alg.family, alg.rank))
    ax.set_xticks(degrees)
    fig.tight_layout()
    bar_path = os.path.join(out_dir, "layers.png")
    fig.savefig(bar_path, dpi=120)
    plt.close(fig)
    paths.append(bar_path)

    if with_closure:
        cl = close_catalog(cat)
        profile = cl.degree_profile()
        degs = sorted(counts)
        grid = [[0] * len(degs) for _ in degs]
        for (a, b), sigs in profile.items():
            top = max(sum(s) for s in sigs)
            ia, ib = degs.index(a), degs.index(b)
            grid[ia][ib] = max(grid[ia][ib], top)
            grid[ib][ia] = grid[ia][ib]
        fig, ax = plt.subplots(figsize=(4.2, 3.6))
        im = ax.imshow(grid, cmap="viridis", origin="lower")
        ax.set_xticks(range(len(degs)), [str(d) for d in degs])
        ax.set_yticks(range(len(degs)), [str(d) for d in degs])
        ax.set_xlabel("layer degree")
        ax.set_ylabel("layer degree")
        ax.set_title("max bracket degree per layer pair")
        fig.colorbar(im, ax=ax, label="degree")
        fig.tight_layout()
        heat_path = os.path.join(out_dir, "bracket_degrees.png")
        fig.savefig(heat_path, dpi=120)
        plt.close(fig)
        paths.append(heat_path)

    return paths
