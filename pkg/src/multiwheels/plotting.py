"""Matplotlib figures for sweep tables and role-coloured graph drawings (Agg backend)."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graph import Edge, Graph  # noqa: E402
from .io import ROLE_COLORS  # noqa: E402


def sweep_figure(rows: Sequence[dict], path: str, title: str = "") -> None:
    """Scatter of n against m per instance with the line m = 2n - 2."""
    fig, ax = plt.subplots(figsize=(5.5, 4))
    if rows:
        ns = [r["n"] for r in rows]
        lo, hi = min(ns), max(ns)
        ax.plot([lo, hi], [2 * lo - 2, 2 * hi - 2], color="gray", lw=1, label="m = 2n - 2")
        ok = [r for r in rows if r["pass"]]
        bad = [r for r in rows if not r["pass"]]
        ax.scatter([r["n"] for r in ok], [r["m"] for r in ok], marker="o", color="tab:blue", label="all checks pass", zorder=3)
        ax.scatter([r["n"] for r in bad], [r["m"] for r in bad], marker="x", color="tab:red", s=60, label="a check fails", zorder=4)
        ax.legend(loc="upper left", fontsize=8)
    else:
        ax.text(0.5, 0.5, "no instances within the cap", ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("vertices n")
    ax.set_ylabel("edges m")
    ax.set_title(title or "sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def tutte_layout(g: Graph) -> dict[int, tuple[float, float]] | None:
    """Barycentric drawing with the longest face of a planar embedding as the outer polygon."""
    from .topology import is_planar

    if g.n < 4 or not g.is_connected():
        return None
    res = is_planar(g, witness=False)
    if not res.planar:
        return None
    outer = list(max(res.embedding.faces, key=len))
    if len(set(outer)) != len(outer):
        return None
    pos = {}
    for i, v in enumerate(outer):
        a = 2 * math.pi * i / len(outer)
        pos[v] = (math.cos(a), math.sin(a))
    inner = [v for v in g.sorted_vertices() if v not in pos]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        A = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            i = idx[v]
            A[i, i] = g.degree(v)
            for u in g.adj[v]:
                if u in idx:
                    A[i, idx[u]] -= 1
                else:
                    b[i] += pos[u]
        try:
            xy = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            return None
        pos.update({v: (float(xy[idx[v], 0]), float(xy[idx[v], 1])) for v in inner})
    return pos


def _layout(g: Graph) -> dict[int, tuple[float, float]]:
    tutte = tutte_layout(g)
    if tutte is not None:
        return tutte
    centre = [v for v in g.sorted_vertices() if g.labels.get(v) in ("central-hub", "apex")]
    inner = [v for v in g.sorted_vertices() if g.labels.get(v) in ("section-hub", "shadow") and v not in centre]
    outer = [v for v in g.sorted_vertices() if v not in centre and v not in inner]
    pos = {}
    for i, v in enumerate(centre):
        pos[v] = (0.15 * i, 0.0)
    for ring, r in ((inner, 0.5), (outer, 1.0)):
        for i, v in enumerate(ring):
            a = 2 * math.pi * i / max(len(ring), 1) + (0.3 if r < 1 else 0.0)
            pos[v] = (r * math.cos(a), r * math.sin(a))
    return pos


def draw_graph(g: Graph, path: str, ghosts: Iterable[Edge] = (), title: str = "") -> None:
    """Vertices filled by role; annihilated edges dashed grey when their ends survive."""
    pos = _layout(g)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for u, v in g.sorted_edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="black", lw=1, zorder=1)
    for u, v in ghosts:
        if u in pos and v in pos:
            (x1, y1), (x2, y2) = pos[u], pos[v]
            ax.plot([x1, x2], [y1, y2], color="gray", lw=1, ls="--", zorder=0)
    for v in g.sorted_vertices():
        x, y = pos[v]
        ax.scatter([x], [y], s=260, color=ROLE_COLORS[g.labels.get(v, "plain")], edgecolors="black", zorder=2)
        ax.text(x, y, str(v), ha="center", va="center", fontsize=7, zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title or f"n={g.n}, m={g.m}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
