"""Zero-locus figures: the roots of N drawn in the complex plane.

Every root lies on the real segment (0, 1], so the picture is a row of
'+' marks against the real segment and the imaginary axis; that row is
the qualitative content worth eyeballing.  Rendering is pinned to the
byte level for a fixed tool version: Agg backend, text kept as text, a
hash salt derived from the type, and no timestamp metadata.  A companion
CSV with the exact root boxes lands next to the SVG so the picture never
has to be trusted on its own.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .roots import isolate_roots, refine_root
from .skewgrowth import CoxeterType, skew_growth

__all__ = ["plot_roots", "root_positions"]

_PIXEL_EPS = Fraction(1, 2**20)

_STYLES = ("plain", "grid")


def root_positions(ctype: CoxeterType) -> list:
    """Roots of N in (0, 1], largest first, refined well below pixel size."""
    n = skew_growth(ctype).poly
    boxes = isolate_roots(n, 0, 1)
    return [refine_root(n, box, _PIXEL_EPS) for box in boxes]


def _write_companion_csv(path: Path, boxes) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["nu", "approx", "low", "high", "exact"])
        for nu, box in enumerate(boxes, start=1):
            w.writerow([
                nu,
                f"{float(box.midpoint()):.10f}",
                str(box.low),
                str(box.high),
                str(box.exact) if box.exact is not None else "",
            ])


def plot_roots(ctype: CoxeterType, out_path, style: str = "plain") -> tuple:
    """Render the zero locus of N for ``ctype`` to an SVG file.

    Returns (svg path, csv path).  The CSV holds the isolating boxes the
    markers were placed from.  ``style`` is "plain" or "grid".
    """
    if style not in _STYLES:
        raise ValueError(f"style must be one of {_STYLES}, got {style!r}")
    svg_path = Path(out_path)
    if svg_path.suffix != ".svg":
        svg_path = svg_path.with_suffix(".svg")
    boxes = root_positions(ctype)
    xs = [float(box.midpoint()) for box in boxes]

    plt.rcParams["svg.fonttype"] = "none"
    plt.rcParams["svg.hashsalt"] = str(ctype)
    fig, ax = plt.subplots(figsize=(6.0, 3.0))
    ax.axhline(0.0, color="0.75", linewidth=0.8, zorder=1)
    ax.plot([0.0, 1.0], [0.0, 0.0], color="0.3", linewidth=1.6, zorder=2)
    ax.axvline(0.0, color="0.3", linewidth=1.0, zorder=2)
    ax.plot(xs, [0.0] * len(xs), linestyle="", marker="+", markersize=9.0,
            markeredgewidth=1.4, color="C3", zorder=3)
    ax.set_xlim(-0.12, 1.12)
    ax.set_ylim(-0.6, 0.6)
    ax.set_xlabel("Re t")
    ax.set_ylabel("Im t")
    ax.set_title(f"zero locus of N, type {ctype}")
    if style == "grid":
        ax.grid(True, color="0.9", linewidth=0.6, zorder=0)
    fig.tight_layout()
    fig.savefig(svg_path, format="svg", metadata={"Date": None})
    plt.close(fig)

    csv_path = svg_path.with_suffix(".csv")
    _write_companion_csv(csv_path, boxes)
    return svg_path, csv_path
