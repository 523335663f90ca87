"""CSV / JSON / SVG emission for the analysis artifacts.

Conventions: CSV uses '.' decimals, comma separators, and a header row of
bucket lower bounds; undefined cells are empty fields in CSV and explicit
nulls in JSON.  SVG output is deterministic (fixed hash salt, no embedded
date) up to the matplotlib version string.
"""
from __future__ import annotations

import json

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LogNorm

from .jointdist import CCDFCurves, ConditionalHeatmap, JointHistogram

__all__ = ["matrix_to_csv", "write_json", "joint_heatmap_svg",
           "conditional_heatmap_svg", "ccdf_curves_svg", "curves_to_csv",
           "heatmap_payload", "ccdf_payload"]

SCHEMA_VERSION = 1

plt.rcParams["svg.hashsalt"] = "degmix"


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return ""
    return format(float(x), ".10g")


def matrix_to_csv(matrix, lower_bounds, path):
    """Header row of bucket lower bounds, then one row per bucket."""
    matrix = np.asarray(matrix, dtype=np.float64)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(_fmt(b) for b in lower_bounds) + "\n")
        for row in matrix:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=1, allow_nan=False)
        fh.write("\n")


def _jsonify_matrix(matrix):
    return [[None if np.isnan(v) else float(v) for v in row] for row in matrix]


def heatmap_payload(joint: JointHistogram, cond: ConditionalHeatmap) -> dict:
    scheme = joint.scheme
    return {
        "schema_version": SCHEMA_VERSION,
        "num_buckets": scheme.num_buckets,
        "bucket_base": scheme.base,
        "bucket_boundaries": [float(b) for b in scheme.boundaries],
        "joint_probs": _jsonify_matrix(joint.probs),
        "joint_counts": [[int(c) for c in row] for row in joint.counts],
        "marginals": [float(v) for v in joint.marginals],
        "conditional_change": _jsonify_matrix(cond.change),
        "oriented_count": joint.oriented_count,
    }


def _bucket_axes(ax, scheme):
    ticks = np.arange(scheme.num_buckets + 1) - 0.5
    labels = [f"{b:.3g}" for b in scheme.boundaries]
    step = max(1, scheme.num_buckets // 7)
    ax.set_xticks(ticks[::step])
    ax.set_xticklabels(labels[::step], rotation=45, ha="right", fontsize=7)
    ax.set_yticks(ticks[::step])
    ax.set_yticklabels(labels[::step], fontsize=7)
    ax.set_xlabel("deg(v) bucket")
    ax.set_ylabel("deg(u) bucket")


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def joint_heatmap_svg(joint: JointHistogram, path, title="joint degree distribution"):
    """Joint bucket probabilities on a log color scale."""
    probs = np.ma.masked_where(joint.probs <= 0, joint.probs)
    fig, ax = plt.subplots(figsize=(4.6, 4.0), constrained_layout=True)
    vmin = probs.min() if probs.count() else 1e-6
    im = ax.imshow(probs, origin="lower", cmap="viridis",
                   norm=LogNorm(vmin=vmin, vmax=1.0))
    _bucket_axes(ax, joint.scheme)
    ax.set_title(title, fontsize=9)
    fig.colorbar(im, ax=ax, shrink=0.85)
    _save(fig, path)


def conditional_heatmap_svg(cond: ConditionalHeatmap, path,
                            title="conditional change"):
    """Signed change matrix on a diverging scale (increase red, decrease blue)."""
    data = np.ma.masked_invalid(cond.change)
    fig, ax = plt.subplots(figsize=(4.6, 4.0), constrained_layout=True)
    cmap = plt.get_cmap("RdBu_r").copy()
    cmap.set_bad("0.85")
    im = ax.imshow(data, origin="lower", cmap=cmap, vmin=-1.0, vmax=1.0)
    _bucket_axes(ax, cond.scheme)
    ax.set_title(title, fontsize=9)
    fig.colorbar(im, ax=ax, shrink=0.85)
    _save(fig, path)


def curves_to_csv(curves: CCDFCurves, path):
    """Long-format CSV: curve label, degree, ccdf."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("curve,degree,ccdf\n")
        for label, xy in _iter_curves(curves):
            if xy is None:
                continue
            for x, y in zip(*xy):
                fh.write(f"{label},{_fmt(x)},{_fmt(y)}\n")


def _iter_curves(curves: CCDFCurves):
    yield "node", curves.node
    yield "edge", curves.edge
    for frac in sorted(curves.conditional):
        yield f"edge {frac:g}", curves.conditional[frac]


def ccdf_payload(curves: CCDFCurves) -> dict:
    def pack(xy):
        if xy is None:
            return None
        return {"degree": [int(v) for v in xy[0]],
                "ccdf": [float(v) for v in xy[1]]}

    return {
        "schema_version": SCHEMA_VERSION,
        "bucket_boundaries": [float(b) for b in curves.scheme.boundaries],
        "curves": {label: pack(xy) for label, xy in _iter_curves(curves)},
    }


def ccdf_curves_svg(curves: CCDFCurves, path, title="degree CCDF"):
    fig, ax = plt.subplots(figsize=(4.8, 3.6), constrained_layout=True)
    for label, xy in _iter_curves(curves):
        if xy is None:
            continue
        style = {"node": dict(color="black", lw=2),
                 "edge": dict(color="gray", lw=2)}.get(label, dict(lw=1))
        ax.plot(xy[0], xy[1], label=label, **style)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("degree x")
    ax.set_ylabel("P[X >= x]")
    ax.set_title(title, fontsize=9)
    ax.legend(fontsize=7)
    _save(fig, path)
