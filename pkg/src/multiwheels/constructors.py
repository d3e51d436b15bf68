"""Deterministic builders for wheels, octahedra and the multiwheel families.

Plane and projective multiwheels are produced by replaying a
:class:`SumConfiguration` through :func:`sum_mod_two`; the closed-form counts
and per-wheel edge losses are then checked on the result, and a violation
raises :class:`ConstructionError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Sequence

from .canon import isomorphic
from .graph import Edge, Graph, GraphError, SumConfiguration, norm_edge


class ConstructionError(RuntimeError):
    def __init__(self, certificate: str, detail: str):
        super().__init__(f"{certificate}: {detail}")
        self.certificate = certificate
        self.detail = detail


class SectionType(str, Enum):
    RR = "rr"
    SS = "ss"
    SR = "sr"
    RS = "rs"


@dataclass(frozen=True)
class MultiwheelSpec:
    sections: tuple[tuple[int, SectionType], ...]

    def __post_init__(self):
        k = len(self.sections)
        if k < 3 or k % 2 == 0:
            raise GraphError(f"a multiwheel needs an odd number >= 3 of sections, got {k}")
        for q, t in self.sections:
            if not isinstance(q, int) or q < 1:
                raise GraphError(f"section order must be a positive integer, got {q!r}")
            if not isinstance(t, SectionType):
                raise GraphError(f"bad section type {t!r}")

    @classmethod
    def of(cls, items: Sequence[tuple[int, str]]) -> "MultiwheelSpec":
        return cls(tuple((int(q), SectionType(t)) for q, t in items))

    @property
    def Q(self) -> int:
        return sum(q for q, _ in self.sections)

    @property
    def k(self) -> int:
        return len(self.sections)

    def literal(self) -> str:
        return "w:" + "-".join(f"{q}{t.value}" for q, t in self.sections)


@dataclass(frozen=True)
class ProjectiveSpec:
    central_q: int
    satellites: tuple[int, ...]

    def __post_init__(self):
        if self.central_q < 1:
            raise GraphError("central wheel order q must be >= 1")
        if len(self.satellites) != 2 * self.central_q + 1:
            raise GraphError(
                f"need 2q+1 = {2 * self.central_q + 1} satellites, got {len(self.satellites)}"
            )
        if any(not isinstance(q, int) or q < 1 for q in self.satellites):
            raise GraphError("satellite orders must be positive integers")

    def literal(self) -> str:
        return f"p:c={self.central_q};s=" + ",".join(map(str, self.satellites))


# -- basic graphs -------------------------------------------------------------------------


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle needs k >= 3")
    return Graph(range(k), [(i, (i + 1) % k) for i in range(k)])


def complete(k: int) -> Graph:
    return Graph(range(k), [(i, j) for i in range(k) for j in range(i + 1, k)])


def path(k: int) -> Graph:
    return Graph(range(k), [(i, i + 1) for i in range(k - 1)])


def wheel(k: int) -> Graph:
    """W_k: hub 0 joined to every vertex of the rim cycle 1..k."""
    if k < 3:
        raise GraphError("wheel needs k >= 3")
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    spikes = [(0, i) for i in range(1, k + 1)]
    labels = {0: "section-hub", **{i: "rim" for i in range(1, k + 1)}}
    return Graph(range(k + 1), rim + spikes, labels)


def octahedron() -> Graph:
    """K_{2,2,2} with antipodal pairs {0,1}, {2,3}, {4,5}."""
    return Graph(range(6), [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 1 or i % 2])


def octahedron_minus() -> Graph:
    """Octahedron without the edge (0, 2)."""
    o = octahedron()
    return Graph(o.vertices, o.edges - {(0, 2)})


def cube() -> Graph:
    return Graph(range(8), [(i, i ^ b) for i in range(8) for b in (1, 2, 4) if i < i ^ b])


def mycielski(g: Graph) -> Graph:
    """Mycielskian: shadow ``v + n`` for every vertex (dense relabel first), apex ``2n``."""
    g, _ = g.to_dense()
    n = g.n
    edges = list(g.edges)
    for u, v in g.edges:
        edges += [(u, v + n), (v, u + n)]
    edges += [(v + n, 2 * n) for v in range(n)]
    labels = {v: "rim" for v in range(n)}
    labels.update({v + n: "shadow" for v in range(n)})
    labels[2 * n] = "apex"
    return Graph(range(2 * n + 1), edges, labels)


# -- ring sums of wheels --------------------------------------------------------------------


@dataclass(frozen=True)
class _Section:
    """One wheel in a ring sum around a shared vertex.

    ``center`` is the wheel vertex identified with the common vertex;
    ``left``/``right`` are the far ends of the two annihilated edges at it.
    """

    order: int
    center: int
    left: int
    right: int

    def wheel(self) -> Graph:
        return wheel(self.order)


def _section(q: int, t: SectionType) -> _Section:
    k = 2 * q + 1
    # wheel(k): hub 0, rim 1..k; rim vertex 1 has rim neighbours k and 2
    if t is SectionType.RR:
        return _Section(k, 1, k, 2)
    if t is SectionType.SS:
        return _Section(k, 0, 1, 2)
    if t is SectionType.SR:
        return _Section(k, 1, 0, 2)
    return _Section(k, 1, k, 0)


def _ring_configuration(sections: Sequence[_Section]) -> SumConfiguration:
    """Glue wheels cyclically: section i's right edge cancels section i+1's left edge."""
    if len(sections) < 2:
        raise GraphError("a ring sum needs at least two wheels")
    constituents = [s.wheel() for s in sections]
    first = sections[0]
    # ids in the accumulated graph: constituent 0 keeps its own ids
    center = first.center
    left0 = first.left
    prev_right = first.right
    next_id = constituents[0].n
    maps = []
    for i, s in enumerate(sections[1:], start=1):
        phi = {s.center: center, s.left: prev_right}
        if i == len(sections) - 1:
            phi[s.right] = left0
        maps.append(phi)
        # fresh ids follow sorted order of the unmapped wheel vertices
        fresh = [v for v in constituents[i].sorted_vertices() if v not in phi]
        prev_right = next_id + fresh.index(s.right) if s.right not in phi else phi[s.right]
        next_id += len(fresh)
    return SumConfiguration(tuple(constituents), tuple(maps))


def _ring_labels(g: Graph, config: SumConfiguration, sections: Sequence[_Section], center_id: int) -> Graph:
    _, maps = config.replay()
    labels = {v: "rim" for v in g.vertices}
    for s, vm in zip(sections, maps):
        if s.center != 0:
            labels[vm[0]] = "section-hub"
    labels[center_id] = "central-hub"
    return g.with_labels(labels)


def _check_losses(config: SumConfiguration, expected: Sequence[int], what: str) -> list[frozenset[Edge]]:
    losses = config.losses()
    for i, (lost, want) in enumerate(zip(losses, expected)):
        if len(lost) != want:
            raise ConstructionError("edge-loss", f"{what} {i} lost {len(lost)} edges, expected {want}")
    return losses


@dataclass(frozen=True)
class Built:
    """A constructed graph with the configuration that produced it."""

    graph: Graph
    config: SumConfiguration

    @property
    def ghosts(self) -> frozenset[Edge]:
        return frozenset().union(*self.config.losses())

    def __iter__(self):
        return iter((self.graph, self.config))


def plane_multiwheel(spec: MultiwheelSpec | Sequence[tuple[int, str]], check_planarity: bool = True) -> Built:
    """w_{q_1...q_k}: k odd wheels summed around one shared vertex, two edges lost each."""
    if not isinstance(spec, MultiwheelSpec):
        spec = MultiwheelSpec.of(spec)
    sections = [_section(q, t) for q, t in spec.sections]
    config = _ring_configuration(sections)
    g, _ = config.replay()
    center = sections[0].center
    g = _ring_labels(g, config, sections, center)
    Q = spec.Q
    if g.n != 2 * Q + 1 or g.m != 4 * Q:
        raise ConstructionError("counts", f"n={g.n}, m={g.m}; expected n={2 * Q + 1}, m={4 * Q}")
    _check_losses(config, [2] * spec.k, "wheel")
    if check_planarity:
        from .topology import is_planar

        if not is_planar(g).planar:
            raise ConstructionError("planarity", f"{spec.literal()} is not planar")
    return Built(g, config)


def base_graph() -> Graph:
    """w_111 with named edge handles.

    ``thick``: contracting it gives the octahedron minus an edge;
    ``dotted``: the edge (in the contracted graph) that completes the octahedron;
    ``hub_triple``: three edges whose contraction leaves W_3.
    """
    g = plane_multiwheel([(1, "rr")] * 3).graph
    labels = g.labels
    center = next(v for v, t in labels.items() if t == "central-hub")
    hubs = sorted(v for v, t in labels.items() if t == "section-hub")
    h0 = hubs[0]
    thick = norm_edge(center, h0)
    keep = min(thick)
    others = [h for h in hubs if h != h0]
    # after contraction the merged vertex keeps id ``keep``; the two remaining hubs lose their common neighbour
    dotted = norm_edge(*others)
    rims = sorted(v for v, t in labels.items() if t == "rim")
    # each hub takes a distinct rim neighbour
    match = next(
        p for p in permutations(rims) if all(g.has_edge(h, r) for h, r in zip(hubs, p))
    )
    triple = [norm_edge(h, r) for h, r in zip(hubs, match)]
    handles = {"thick": thick, "dotted": dotted, "hub_triple": tuple(triple), "merged": keep}
    return g.with_labels(labels, handles)


def grotzsch_class(q: int):
    """Mycielski(C_{2q+1}) with its projective-plane quadrangulation."""
    from .topology import Embedding

    if q < 1:
        raise GraphError("q must be >= 1")
    k = 2 * q + 1
    g = mycielski(cycle(k))
    v = lambda i: i % k
    u = lambda i: k + i % k
    z = 2 * k
    faces = []
    for i in range(k):
        faces.append((v(i - 1), v(i), v(i + 1), u(i)))
    for i in range(k):
        faces.append((z, u(i), v(i + 1), u(i + 2)))
    return g, Embedding(g, tuple(faces))


def grotzsch_graph() -> Graph:
    return mycielski(cycle(5))


def projective_multiwheel(spec: ProjectiveSpec | tuple[int, Sequence[int]]) -> Built:
    """Central wheel W_{2q+1} plus 2q+1 satellite odd wheels.

    Each satellite gives up the path rim-edge, spike, spike around one rim
    vertex ``a``: the rim edge at ``a`` away from the second spike tip, the
    spike at ``a`` (cancelled by a central rim edge) and the adjacent spike
    (cancelled by the next satellite's rim edge).
    """
    if not isinstance(spec, ProjectiveSpec):
        spec = ProjectiveSpec(int(spec[0]), tuple(int(x) for x in spec[1]))
    kc = 2 * spec.central_q + 1
    central = wheel(kc)  # hub 0, rim 1..kc
    constituents = [central]
    maps = []
    next_id = central.n
    first_far = None  # accumulated id of satellite 0's rim-edge far end
    prev_tip = None  # accumulated id of the previous satellite's second spike tip
    for i, q in enumerate(spec.satellites):
        ks = 2 * q + 1
        sat = wheel(ks)
        a, b, x, h = 1, 2, ks, 0  # spikes h-a, h-b; rim edge x-a
        phi = {a: 1 + i, h: 1 + (i + 1) % kc}
        if i > 0:
            phi[x] = prev_tip
        if i == kc - 1:
            phi[b] = first_far
        fresh = [v for v in sat.sorted_vertices() if v not in phi]
        ids = {v: next_id + j for j, v in enumerate(fresh)}
        ids.update(phi)
        if i == 0:
            first_far = ids[x]
        prev_tip = ids[b]
        next_id += len(fresh)
        constituents.append(sat)
        maps.append(phi)
    config = SumConfiguration(tuple(constituents), tuple(maps))
    g, vmaps = config.replay()
    labels = {v: "rim" for v in g.vertices}
    labels[0] = "central-hub"
    for r in range(1, kc + 1):
        labels[r] = "section-hub"
    g = g.with_labels(labels)
    if g.m != 2 * g.n - 2:
        raise ConstructionError("counts", f"n={g.n}, m={g.m} is not in the 2n-2 class")
    _check_losses(config, [kc] + [3] * kc, "wheel")
    return Built(g, config)


def unclosed_sequence(orders: Sequence[int]) -> Graph:
    """Chain of odd wheels W_{2q+1} where consecutive wheels share one edge, which cancels.

    Wheel i hands over its rim edge (2, 3); wheel i+1 lays its spike (0, 1) on
    it. The two links of a middle wheel are disjoint, and the chain is not closed.
    """
    if len(orders) < 1:
        raise GraphError("need at least one wheel")
    wheels = [wheel(2 * q + 1) for q in orders]
    if len(wheels) == 1:
        return wheels[0]
    maps = []
    acc_ids = {v: v for v in wheels[0].vertices}
    next_id = wheels[0].n
    for i in range(1, len(wheels)):
        phi = {0: acc_ids[2], 1: acc_ids[3]}
        maps.append(phi)
        fresh = [v for v in wheels[i].sorted_vertices() if v not in phi]
        acc_ids = {v: next_id + j for j, v in enumerate(fresh)}
        acc_ids.update(phi)
        next_id += len(fresh)
    config = SumConfiguration(tuple(wheels), tuple(maps))
    g, _ = config.replay()
    _check_losses(config, [1] + [2] * (len(wheels) - 2) + [1], "wheel")
    return g


def nonplanar_counterexample() -> Built:
    """Ring of W_3, W_3, W_5 where the W_5 loses two non-consecutive spikes.

    Every wheel still loses exactly two edges, but the W_5 splits into an
    even and an odd subwheel and the sum is not planar.
    """
    sections = [
        _Section(5, 0, 1, 3),
        _section(1, SectionType.RR),
        _section(1, SectionType.RR),
    ]
    config = _ring_configuration(sections)
    g, _ = config.replay()
    g = _ring_labels(g, config, sections, sections[0].center)
    _check_losses(config, [2, 2, 2], "wheel")
    return Built(g, config)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    a, _ = a.to_dense()
    b, _ = b.to_dense()
    shift = {v: v + a.n for v in b.vertices}
    b = b.relabel(shift)
    return Graph(a.vertices | b.vertices, a.edges | b.edges, {**a.labels, **b.labels})


def o_plus_w3() -> Built:
    """Octahedron plus W_3 with the W_3 rim laid on the triangle (0, 2, 4)."""
    config = SumConfiguration((octahedron(), wheel(3)), ({1: 0, 2: 2, 3: 4},))
    g, _ = config.replay()
    return Built(g, config)


def three_w3() -> Built:
    return plane_multiwheel([(1, "rr")] * 3)


def is_base_graph(g: Graph) -> bool:
    return isomorphic(g, base_graph())
