"""Exact coloring, 4-criticality reports and lonely-color class enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .canon import automorphisms, orbit_canonical_set
from .graph import Edge, Graph, GraphError, contract_edge, delete_edge, delete_vertex

Coloring = dict[int, int]


def is_proper(g: Graph, coloring: Mapping[int, int], k: int | None = None) -> bool:
    """Independent checker: total on V(g), no monochromatic edge, colors in range."""
    if set(coloring) != set(g.vertices):
        return False
    if k is not None and any(not 0 <= c < k for c in coloring.values()):
        return False
    return all(coloring[u] != coloring[v] for u, v in g.edges)


def k_color(g: Graph, k: int) -> Coloring | None:
    """A proper ``k``-coloring or ``None``.

    Backtracking over the uncolored vertex of largest saturation, ties broken
    by degree then vertex id; colors are tried in increasing order and a new
    color is opened only once (symmetry breaking).
    """
    if k < 0:
        raise GraphError("k must be non-negative")
    if g.n == 0:
        return {}
    if k == 0:
        return None
    adj = g.adj
    color: dict[int, int] = {}
    # neighbour color counts per vertex
    seen: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    uncolored = set(g.vertices)

    def pick() -> int:
        return max(uncolored, key=lambda v: (len(seen[v]), len(adj[v]), -v))

    def assign(v, c):
        color[v] = c
        uncolored.discard(v)
        for u in adj[v]:
            d = seen[u]
            d[c] = d.get(c, 0) + 1

    def unassign(v):
        c = color.pop(v)
        uncolored.add(v)
        for u in adj[v]:
            d = seen[u]
            if d[c] == 1:
                del d[c]
            else:
                d[c] -= 1

    def solve(used: int) -> bool:
        if not uncolored:
            return True
        v = pick()
        if len(seen[v]) >= k:
            return False
        for c in range(min(used + 1, k)):
            if c in seen[v]:
                continue
            assign(v, c)
            if solve(max(used, c + 1)):
                return True
            unassign(v)
        return False

    if solve(0):
        return dict(color)
    return None


def greedy_clique(g: Graph) -> list[int]:
    """Greedy clique by repeated maximum-degree choice; a lower bound for chi."""
    best: list[int] = []
    adj = g.adj
    for s in g.sorted_vertices():
        clique = [s]
        cand = set(adj[s])
        while cand:
            v = max(cand, key=lambda x: (len(adj[x] & cand), -x))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_greedy(g: Graph) -> Coloring:
    adj = g.adj
    color: Coloring = {}
    while len(color) < g.n:
        v = max(
            (x for x in g.vertices if x not in color),
            key=lambda x: (len({color[u] for u in adj[x] if u in color}), len(adj[x]), -x),
        )
        used = {color[u] for u in adj[v] if u in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def chromatic_number(g: Graph) -> int:
    return chromatic_coloring(g)[0]


def chromatic_coloring(g: Graph) -> tuple[int, Coloring]:
    """Exact chi with an optimal coloring, bracketed by clique and DSATUR bounds."""
    if g.n == 0:
        return 0, {}
    upper = dsatur_greedy(g)
    ub = max(upper.values()) + 1
    lb = max(len(greedy_clique(g)), 1)
    best = upper
    for k in range(ub - 1, lb - 1, -1):
        c = k_color(g, k)
        if c is None:
            return k + 1, best
        best = c
    return lb, best


# -- criticality ------------------------------------------------------------------------


@dataclass
class CriticalityReport:
    chromatic_number: int
    edge_critical: bool
    vertex_critical: bool
    edge_witnesses: dict[Edge, Coloring | None] = field(default_factory=dict)
    vertex_witnesses: dict[int, Coloring | None] = field(default_factory=dict)
    contraction_drops: dict[str, int] = field(default_factory=dict)
    coloring: Coloring = field(default_factory=dict)

    @property
    def is_4_critical(self) -> bool:
        return self.chromatic_number == 4 and self.edge_critical and self.vertex_critical

    def verify(self, g: Graph) -> bool:
        """Re-check every stored witness against the graph it claims to color."""
        if self.coloring and not is_proper(g, self.coloring, self.chromatic_number):
            return False
        for e, c in self.edge_witnesses.items():
            if c is not None and not is_proper(delete_edge(g, e), c, 3):
                return False
        for v, c in self.vertex_witnesses.items():
            if c is not None and not is_proper(delete_vertex(g, v), c, 3):
                return False
        if self.edge_critical and any(c is None for c in self.edge_witnesses.values()):
            return False
        if self.vertex_critical and any(c is None for c in self.vertex_witnesses.values()):
            return False
        return True

    def to_json(self) -> dict:
        def enc(c):
            return None if c is None else {str(v): x for v, x in sorted(c.items())}

        return {
            "chromatic_number": self.chromatic_number,
            "four_critical": self.is_4_critical,
            "edge_critical": self.edge_critical,
            "vertex_critical": self.vertex_critical,
            "coloring": enc(self.coloring),
            "edge_witnesses": [
                {"edge": list(e), "coloring": enc(c)} for e, c in sorted(self.edge_witnesses.items())
            ],
            "vertex_witnesses": [
                {"vertex": v, "coloring": enc(c)} for v, c in sorted(self.vertex_witnesses.items())
            ],
            "contraction_drops": dict(sorted(self.contraction_drops.items())),
        }

    def table(self) -> str:
        rows = ["edge        chi(G-e)"]
        for e, c in sorted(self.edge_witnesses.items()):
            rows.append(f"{str(e):<12}{3 if c is not None else 4}")
        return "\n".join(rows)


def certify_4_critical(
    g: Graph, contractions: Mapping[str, Edge] | None = None, all_contractions: bool = False
) -> CriticalityReport:
    """Deletion-criticality report: chi(g) = 4 and every edge/vertex deletion 3-colorable.

    ``contractions`` names edges whose contraction is reported as auxiliary data;
    ``all_contractions`` adds every edge under its own name.
    """
    chi, col = chromatic_coloring(g)
    rep = CriticalityReport(chi, False, False, coloring=col)
    if chi == 4:
        for e in g.sorted_edges():
            rep.edge_witnesses[e] = k_color(delete_edge(g, e), 3)
        for v in g.sorted_vertices():
            rep.vertex_witnesses[v] = k_color(delete_vertex(g, v), 3)
        rep.edge_critical = all(c is not None for c in rep.edge_witnesses.values())
        rep.vertex_critical = all(c is not None for c in rep.vertex_witnesses.values())
    named = dict(contractions or {})
    if all_contractions:
        named.update({f"{u}-{v}": (u, v) for u, v in g.sorted_edges()})
    for name, e in named.items():
        rep.contraction_drops[name] = chromatic_number(contract_edge(g, e))
    return rep


# -- lonely colours ---------------------------------------------------------------------


def all_colorings(g: Graph, k: int):
    """Yield every proper coloring with at most ``k`` colors, one per color partition.

    Colors are numbered by first appearance along the sorted vertex order.
    """
    order = g.sorted_vertices()
    adj = g.adj
    col: dict[int, int] = {}

    def rec(i: int, used: int):
        if i == len(order):
            yield dict(col)
            return
        v = order[i]
        banned = {col[u] for u in adj[v] if u in col}
        for c in range(min(used + 1, k)):
            if c in banned:
                continue
            col[v] = c
            yield from rec(i + 1, max(used, c + 1))
            del col[v]

    yield from rec(0, 0)


def lonely_support(coloring: Mapping[int, int]) -> frozenset[int]:
    """Union of the smallest color classes of a coloring."""
    classes: dict[int, set[int]] = {}
    for v, c in coloring.items():
        classes.setdefault(c, set()).add(v)
    low = min(len(s) for s in classes.values())
    return frozenset().union(*(s for s in classes.values() if len(s) == low))


def lonely_color_classes(g: Graph) -> set[tuple[int, ...]]:
    """Distinct lonely-color supports of the proper 4-colorings, modulo automorphisms.

    Each support is returned as its least image under Aut(g).
    """
    if chromatic_number(g) != 4:
        raise GraphError("lonely color classes need a 4-chromatic graph")
    group = automorphisms(g)
    out = set()
    for c in all_colorings(g, 4):
        out.add(orbit_canonical_set(sorted(lonely_support(c)), group))
    return out
