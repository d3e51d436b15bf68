"""Immutable simple graphs and the primitive operations used by the constructions.

Vertices are plain integers. Edges are stored as sorted pairs ``(u, v)`` with
``u < v``. Role labels and named edge handles ride along as metadata and never
take part in equality or isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]

ROLES = ("central-hub", "section-hub", "rim", "shadow", "apex", "plain")


class GraphError(ValueError):
    """Rejected input to a graph operation."""


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph value.

    ``labels`` maps (some) vertices to a role tag and ``handles`` maps names to
    designated edges. Both are informational only.
    """

    __slots__ = ("_vertices", "_edges", "_labels", "_handles", "_adj")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[Sequence[int]] = (),
        labels: Mapping[int, str] | None = None,
        handles: Mapping[str, object] | None = None,
    ):
        vs = frozenset(int(v) for v in vertices)
        es = set()
        for e in edges:
            u, v = e
            ne = norm_edge(int(u), int(v))
            if ne[0] not in vs or ne[1] not in vs:
                raise GraphError(f"edge {ne} has an endpoint outside the vertex set")
            es.add(ne)
        labels = dict(labels or {})
        for v, tag in labels.items():
            if v not in vs:
                raise GraphError(f"label on unknown vertex {v}")
            if tag not in ROLES:
                raise GraphError(f"unknown role tag {tag!r}")
        self._vertices = vs
        self._edges = frozenset(es)
        self._labels = labels
        self._handles = dict(handles or {})
        self._adj = None

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "Graph":
        edges = [tuple(e) for e in edges]
        vs = set(vertices)
        for u, v in edges:
            vs.add(u)
            vs.add(v)
        return cls(vs, edges)

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    @property
    def handles(self) -> dict[str, object]:
        return dict(self._handles)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def adj(self) -> dict[int, frozenset[int]]:
        if self._adj is None:
            nb: dict[int, set[int]] = {v: set() for v in self._vertices}
            for u, v in self._edges:
                nb[u].add(v)
                nb[v].add(u)
            self._adj = {v: frozenset(s) for v, s in nb.items()}
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (min(u, v), max(u, v)) in self._edges

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def with_labels(self, labels: Mapping[int, str], handles: Mapping[str, object] | None = None) -> "Graph":
        return Graph(self._vertices, self._edges, labels, self._handles if handles is None else handles)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- small structural queries -------------------------------------------------

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.sorted_vertices():
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph(
            keep,
            [e for e in self._edges if e[0] in keep and e[1] in keep],
            {v: t for v, t in self._labels.items() if v in keep},
        )

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        """Rename vertices through an injective ``mapping`` (missing keys are kept)."""
        f = {v: mapping.get(v, v) for v in self._vertices}
        if len(set(f.values())) != len(f):
            raise GraphError("relabeling is not injective")
        return Graph(
            f.values(),
            [(f[u], f[v]) for u, v in self._edges],
            {f[v]: t for v, t in self._labels.items()},
        )

    def to_dense(self) -> tuple["Graph", dict[int, int]]:
        """Relabel to 0..n-1 in sorted vertex order; returns the graph and the map used."""
        f = {v: i for i, v in enumerate(self.sorted_vertices())}
        return self.relabel(f), f


# -- primitive operations --------------------------------------------------------


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u not in g.vertices or v not in g.vertices:
        raise GraphError(f"vertex of edge ({u}, {v}) not in graph")
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) already present")
    return Graph(g.vertices, g.edges | {norm_edge(u, v)}, g.labels)


def delete_edge(g: Graph, e: Sequence[int]) -> Graph:
    ne = norm_edge(*e)
    if ne not in g.edges:
        raise GraphError(f"edge {ne} not in graph")
    return Graph(g.vertices, g.edges - {ne}, g.labels)


def delete_vertex(g: Graph, v: int) -> Graph:
    if v not in g.vertices:
        raise GraphError(f"vertex {v} not in graph")
    return g.subgraph(g.vertices - {v})


def contract_edge(g: Graph, e: Sequence[int]) -> Graph:
    """Merge the endpoints of ``e`` into its smaller endpoint.

    Parallel edges collapse and the contracted edge disappears, so the result
    stays simple.
    """
    u, v = norm_edge(*e)
    if (u, v) not in g.edges:
        raise GraphError(f"edge {(u, v)} not in graph")
    edges = []
    for a, b in g.edges:
        a = u if a == v else a
        b = u if b == v else b
        if a != b:
            edges.append((a, b))
    labels = {x: t for x, t in g.labels.items() if x != v}
    return Graph(g.vertices - {v}, edges, labels)


def split_vertex(g: Graph, w: int, part: Iterable[int]) -> tuple[Graph, int, int]:
    """Replace ``w`` by two non-adjacent copies.

    ``part`` lists the neighbours that move to the new copy; the others stay
    on ``w``. Both sides must be non-empty. Returns ``(graph, w, new_vertex)``.
    """
    if w not in g.vertices:
        raise GraphError(f"vertex {w} not in graph")
    nb = g.adj[w]
    part = set(part)
    if not part <= nb:
        raise GraphError(f"split part {sorted(part - nb)} is not in the neighbourhood of {w}")
    if not part or part == nb:
        raise GraphError("degenerate split: both sides of the bipartition must be non-empty")
    w2 = max(g.vertices) + 1
    edges = [e for e in g.edges if w not in e]
    edges += [(w, x) for x in nb - part]
    edges += [(w2, x) for x in part]
    return Graph(g.vertices | {w2}, edges, g.labels), w, w2


# -- edge sum modulo two ------------------------------------------------------------


@dataclass(frozen=True)
class SumResult:
    graph: Graph
    vertex_map: dict[int, int]  # addend vertex -> result vertex
    annihilated: frozenset[Edge]  # result-coordinate edges present in both inputs


def check_identification(base: Graph, addend: Graph, phi: Mapping[int, int]) -> None:
    if not set(phi) <= addend.vertices:
        raise GraphError(f"identification domain has vertices {sorted(set(phi) - addend.vertices)} outside the addend")
    if not set(phi.values()) <= base.vertices:
        raise GraphError(f"identification images {sorted(set(phi.values()) - base.vertices)} are outside the base")
    if len(set(phi.values())) != len(phi):
        raise GraphError("identification map is not injective")


def sum_mod_two(base: Graph, addend: Graph, phi: Mapping[int, int]) -> SumResult:
    """Glue ``addend`` onto ``base`` along ``phi`` and take the symmetric difference of edges.

    Addend vertices outside ``dom(phi)`` get fresh ids ``max(base)+1, ...`` in
    sorted order. Labels of the base win over labels of the addend.
    """
    check_identification(base, addend, phi)
    nxt = max(base.vertices, default=-1) + 1
    vmap = {}
    for v in addend.sorted_vertices():
        if v in phi:
            vmap[v] = phi[v]
        else:
            vmap[v] = nxt
            nxt += 1
    mapped = {norm_edge(vmap[u], vmap[v]) for u, v in addend.edges}
    both = base.edges & mapped
    edges = base.edges ^ mapped
    labels = {vmap[v]: t for v, t in addend.labels.items()}
    labels.update(base.labels)
    out = Graph(base.vertices | set(vmap.values()), edges, labels)
    assert out.m == base.m + addend.m - 2 * len(both)
    return SumResult(out, vmap, frozenset(both))


@dataclass(frozen=True)
class SumConfiguration:
    """Constituents plus the gluing maps that replay an iterated edge sum.

    ``identifications[i-1]`` glues constituent ``i`` into the graph accumulated
    from constituents ``0..i-1`` (vertex ids of that accumulated graph).
    """

    constituents: tuple[Graph, ...]
    identifications: tuple[dict[int, int], ...] = field(default=())

    def __post_init__(self):
        if len(self.identifications) != max(len(self.constituents) - 1, 0):
            raise GraphError("need one identification map per constituent after the first")

    def replay(self) -> tuple[Graph, list[dict[int, int]]]:
        """Return the summed graph and, per constituent, its vertex map into the result."""
        if not self.constituents:
            return Graph(), []
        acc = self.constituents[0]
        maps = [{v: v for v in acc.vertices}]
        for g, phi in zip(self.constituents[1:], self.identifications):
            res = sum_mod_two(acc, g, phi)
            acc = res.graph
            maps.append(res.vertex_map)
        return acc, maps

    def losses(self) -> list[frozenset[Edge]]:
        """Edges of each constituent (in result coordinates) missing from the result.

        An edge vanishes exactly when an even number of constituents carry it.
        """
        result, maps = self.replay()
        out = []
        for g, vm in zip(self.constituents, maps):
            img = {norm_edge(vm[u], vm[v]) for u, v in g.edges}
            out.append(frozenset(img - result.edges))
        return out

    def to_json(self) -> dict:
        from .io import graph_to_json

        return {
            "constituents": [graph_to_json(g) for g in self.constituents],
            "identifications": [{str(k): v for k, v in sorted(m.items())} for m in self.identifications],
        }
