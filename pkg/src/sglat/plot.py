"""Matplotlib rendering of labeled Hasse diagrams to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .labeling import LabeledLattice
from .lattice import SubgroupLattice


def _num_prime_factors(n: int) -> int:
    count, d = 0, 2
    while n > 1:
        while n % d == 0:
            n //= d
            count += 1
        d += 1 if d == 2 else 2
    return count


def hasse_positions(lattice: SubgroupLattice) -> dict[int, tuple[float, float]]:
    """Nodes on levels by Omega(order), spread evenly within each level."""
    levels: dict[int, list[int]] = {}
    for t, node in enumerate(lattice.nodes):
        levels.setdefault(_num_prime_factors(node.order), []).append(t)
    pos = {}
    for lvl, ids in levels.items():
        width = len(ids)
        for col, t in enumerate(sorted(ids)):
            pos[t] = (col - (width - 1) / 2.0, float(lvl))
    return pos


def render_hasse(lattice: SubgroupLattice, labeled: LabeledLattice,
                 path: str, title: str = "") -> None:
    """Draw the labeled Hasse diagram and save it to path."""
    pos = hasse_positions(lattice)
    n = len(lattice.nodes)
    fig, ax = plt.subplots(figsize=(max(4.0, 1.3 * max(1, n ** 0.5) + 2), 6.0))
    for y in range(n):
        for z in lattice.covers_up[y]:
            (x0, y0), (x1, y1) = pos[y], pos[z]
            ax.plot([x0, x1], [y0, y1], color="0.6", lw=1.0, zorder=1)
            key = (z, y) if labeled.dual else (y, z)
            i, j = labeled.edge_labels[key]
            ax.annotate(f"({i},{j})", ((x0 + x1) / 2, (y0 + y1) / 2),
                        fontsize=7, color="tab:blue", ha="center", zorder=3)
    for t, node in enumerate(lattice.nodes):
        x, y = pos[t]
        ax.scatter([x], [y], s=260, color="white", edgecolor="black", zorder=2)
        ax.annotate(f"{node.order}:{t}", (x, y), fontsize=7,
                    ha="center", va="center", zorder=4)
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
