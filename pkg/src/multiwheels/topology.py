"""Surface embeddings as face lists, planarity testing and planar duals.

Planarity uses path addition (Demoucron, Malgrange, Pertuiset) on each
biconnected block; block rotations are spliced at cut vertices and faces are
traced from the combined rotation system. Non-planar inputs get a Kuratowski
subgraph by greedy edge removal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Edge, Graph, GraphError, norm_edge


class EmbeddingError(GraphError):
    def __init__(self, rule: str, detail: str, face: int | None = None):
        super().__init__(f"{rule}: {detail}" + (f" (face {face})" if face is not None else ""))
        self.rule = rule
        self.face = face


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    faces: tuple[tuple[int, ...], ...]

    @property
    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + len(self.faces)

    def to_json(self) -> dict:
        return {"faces": [list(f) for f in self.faces]}

    @classmethod
    def from_json(cls, graph: Graph, doc: dict) -> "Embedding":
        try:
            return cls(graph, tuple(tuple(int(v) for v in f) for f in doc["faces"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed embedding document: {exc}") from None


@dataclass(frozen=True)
class EmbeddingCheck:
    euler_characteristic: int
    face_lengths: dict[int, int]


def _face_edges(face: Sequence[int]) -> list[tuple[int, int]]:
    if len(face) == 1:
        return []
    return [(face[i], face[(i + 1) % len(face)]) for i in range(len(face))]


def validate_embedding(e: Embedding) -> EmbeddingCheck:
    """Check a face list describes a closed surface; returns Euler characteristic and face-length histogram.

    Rules: every face step is a graph edge, every edge is traversed exactly
    twice, trivial one-vertex faces only at isolated vertices, and the corners
    at each vertex link its incident edges into a single cycle.
    """
    g = e.graph
    uses: Counter = Counter()
    for i, f in enumerate(e.faces):
        if not f:
            raise EmbeddingError("empty-face", "face has no vertices", i)
        if len(f) == 1:
            if f[0] not in g.vertices or g.degree(f[0]) != 0:
                raise EmbeddingError("trivial-face", f"one-vertex face at non-isolated vertex {f[0]}", i)
            continue
        for u, v in _face_edges(f):
            if not g.has_edge(u, v):
                raise EmbeddingError("non-edge", f"({u}, {v}) is not an edge", i)
            uses[norm_edge(u, v)] += 1
    for ed in g.sorted_edges():
        if uses[ed] != 2:
            raise EmbeddingError("edge-multiplicity", f"edge {ed} used {uses[ed]} times")
    isolated = [v for v in g.vertices if g.degree(v) == 0]
    trivial = Counter(f[0] for f in e.faces if len(f) == 1)
    for v in isolated:
        if trivial[v] != 1:
            raise EmbeddingError("trivial-face", f"isolated vertex {v} needs exactly one trivial face")
    # vertex links
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in e.faces:
        if len(f) < 2:
            continue
        L = len(f)
        for i in range(L):
            a, v, b = f[i - 1], f[i], f[(i + 1) % L]
            x, y = find((v, a)), find((v, b))
            if x != y:
                parent[x] = y
    for v in g.vertices:
        roots = {find((v, u)) for u in g.adj[v]}
        if len(roots) > 1:
            raise EmbeddingError("vertex-link", f"corners at vertex {v} do not form one cycle")
    hist = Counter(len(f) if len(f) > 1 else 0 for f in e.faces)
    return EmbeddingCheck(e.euler_characteristic, dict(sorted(hist.items())))


def certify_projective_quadrangulation(e: Embedding) -> bool:
    """True iff the (valid) embedding is a connected quadrangulation with Euler characteristic 1."""
    chk = validate_embedding(e)
    ok = e.graph.is_connected() and chk.euler_characteristic == 1 and set(chk.face_lengths) == {4}
    if ok:
        assert e.graph.m == 2 * e.graph.n - 2
    return ok


def edge_quadrilateral_condition(g: Graph) -> tuple[dict[Edge, int], bool]:
    """Number of 4-cycles through each edge, and whether every edge lies on at least two."""
    adj = g.adj
    counts = {}
    for u, v in g.sorted_edges():
        c = 0
        for a in adj[u]:
            if a != v:
                c += len((adj[a] & adj[v]) - {u})
        counts[(u, v)] = c
    return counts, all(c >= 2 for c in counts.values())


# -- planarity ----------------------------------------------------------------------------


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "K5" or "K3,3"
    branch_vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    edges: frozenset[Edge]

    def to_json(self) -> dict:
        return {"kind": self.kind, "branch_vertices": list(self.branch_vertices), "paths": [list(p) for p in self.paths]}


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    embedding: Embedding | None = None
    witness: KuratowskiWitness | None = None

    def __bool__(self):
        return self.planar

    def to_json(self) -> dict:
        doc = {"planar": self.planar}
        if self.embedding is not None:
            doc["embedding"] = self.embedding.to_json()
        if self.witness is not None:
            doc["kuratowski"] = self.witness.to_json()
        return doc


def _blocks(g: Graph) -> list[set[Edge]]:
    """Biconnected components as edge sets (iterative Hopcroft-Tarjan)."""
    adj = {v: sorted(g.adj[v]) for v in g.vertices}
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[set[Edge]] = []
    t = 0
    for root in g.sorted_vertices():
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        stack: list[Edge] = []
        it = [(root, -1, iter(adj[root]))]
        while it:
            v, parent, nbrs = it[-1]
            advanced = False
            for w in nbrs:
                if w == parent:
                    continue
                if w not in disc:
                    stack.append(norm_edge(v, w))
                    disc[w] = low[w] = t
                    t += 1
                    it.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    stack.append(norm_edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            it.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    comp = set()
                    target = norm_edge(parent, v)
                    while True:
                        ed = stack.pop()
                        comp.add(ed)
                        if ed == target:
                            break
                    out.append(comp)
    return out


def _find_cycle(adj: dict[int, set[int]], start: int) -> list[int]:
    parent = {start: None}
    order = [start]
    stack = [(start, iter(sorted(adj[start])))]
    while stack:
        v, nbrs = stack[-1]
        for w in nbrs:
            if w == parent[v]:
                continue
            if w in parent:
                cyc = [v]
                x = v
                while x != w:
                    x = parent[x]
                    cyc.append(x)
                return cyc[::-1]
            parent[w] = v
            order.append(w)
            stack.append((w, iter(sorted(adj[w]))))
            break
        else:
            stack.pop()
    raise GraphError("block has no cycle")


def _embed_block(edges: set[Edge]) -> list[list[int]] | None:
    """Oriented faces of a biconnected block (each dart once), or None if non-planar."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    if len(edges) == 1:
        (u, v), = edges
        return [[u, v]]
    cyc = _find_cycle(adj, min(adj))
    faces = [list(cyc), list(reversed(cyc))]
    hv = set(cyc)
    he = {norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))}
    while len(he) < len(edges):
        frags = []
        for u, v in sorted(edges - he):
            if u in hv and v in hv:
                frags.append(({u, v}, [u, v]))
        seen: set[int] = set()
        for s in sorted(set(adj) - hv):
            if s in seen:
                continue
            comp = {s}
            st = [s]
            while st:
                x = st.pop()
                for y in adj[x]:
                    if y not in hv and y not in comp:
                        comp.add(y)
                        st.append(y)
            seen |= comp
            att = {y for x in comp for y in adj[x] if y in hv}
            frags.append((att, comp))
        choice = None
        for att, body in frags:
            ok = [i for i, f in enumerate(faces) if att <= set(f)]
            if not ok:
                return None
            if choice is None or (len(ok) == 1 and len(choice[2]) > 1):
                choice = (att, body, ok)
        att, body, ok = choice
        fi = ok[0]
        if isinstance(body, list):
            p = body
        else:
            a = min(att)
            # path a -> body -> another attachment
            prev = {}
            q = [y for y in sorted(adj[a]) if y in body]
            for y in q:
                prev[y] = a
            end = None
            i = 0
            while end is None:
                x = q[i]
                i += 1
                for y in sorted(adj[x]):
                    if y in hv and y != a:
                        end = (x, y)
                        break
                    if y in body and y not in prev:
                        prev[y] = x
                        q.append(y)
            x, b = end
            p = [b, x]
            while x != a:
                x = prev[x]
                p.append(x)
            p.reverse()
        face = faces[fi]
        i, j = face.index(p[0]), face.index(p[-1])
        L = len(face)
        seg_ij = [face[(i + t) % L] for t in range((j - i) % L + 1)]
        seg_ji = [face[(j + t) % L] for t in range((i - j) % L + 1)]
        inner = p[1:-1]
        faces[fi] = seg_ij + inner[::-1]
        faces.append(seg_ji + inner)
        hv.update(p)
        he.update(norm_edge(p[t], p[t + 1]) for t in range(len(p) - 1))
    return faces


def _planar_faces(g: Graph) -> list[tuple[int, ...]] | None:
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return None
    succ: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    for block in _blocks(g):
        faces = _embed_block(block)
        if faces is None:
            return None
        local: dict[int, dict[int, int]] = {}
        for f in faces:
            L = len(f)
            for t in range(L):
                a, v, b = f[t - 1], f[t], f[(t + 1) % L]
                local.setdefault(v, {})[a] = b
        if len(block) == 1:
            (u, v), = block
            local = {u: {v: v}, v: {u: u}}
        for v, perm in local.items():
            s = succ[v]
            if s:
                a = min(s)
                b = min(perm)
                s.update(perm)
                s[a], s[b] = s[b], s[a]
            else:
                s.update(perm)
    faces = []
    used: set[tuple[int, int]] = set()
    for u in g.sorted_vertices():
        if not succ[u]:
            faces.append((u,))
            continue
        for v in sorted(succ[u]):
            if (u, v) in used:
                continue
            f = []
            a, b = u, v
            while (a, b) not in used:
                used.add((a, b))
                f.append(a)
                a, b = b, succ[b][a]
            faces.append(tuple(f))
    return faces


def _kuratowski(g: Graph) -> KuratowskiWitness:
    edges = set(g.edges)
    for ed in sorted(g.edges):
        trial = edges - {ed}
        if _planar_faces(Graph(g.vertices, trial)) is None:
            edges = trial
    h = Graph.from_edges(edges)
    branch = sorted(v for v in h.vertices if h.degree(v) >= 3)
    paths = []
    done: set[Edge] = set()
    for b in branch:
        for w in sorted(h.adj[b]):
            if norm_edge(b, w) in done:
                continue
            p = [b, w]
            while h.degree(p[-1]) == 2:
                nxt = next(x for x in h.adj[p[-1]] if x != p[-2])
                p.append(nxt)
            for t in range(len(p) - 1):
                done.add(norm_edge(p[t], p[t + 1]))
            paths.append(tuple(p))
    kind = "K5" if len(branch) == 5 else "K3,3"
    return KuratowskiWitness(kind, tuple(branch), tuple(paths), frozenset(edges))


def is_planar(g: Graph, witness: bool = True) -> PlanarityResult:
    faces = _planar_faces(g)
    if faces is not None:
        return PlanarityResult(True, Embedding(g, tuple(faces)))
    return PlanarityResult(False, witness=_kuratowski(g) if witness else None)


def check_kuratowski(g: Graph, w: KuratowskiWitness) -> bool:
    """Independent check that ``w`` is a subdivision of K5 or K3,3 inside ``g``."""
    if not all(g.has_edge(u, v) for u, v in w.edges):
        return False
    h = Graph.from_edges(w.edges)
    branch = [v for v in h.vertices if h.degree(v) >= 3]
    if sorted(branch) != sorted(w.branch_vertices):
        return False
    if any(h.degree(v) not in (2,) for v in h.vertices if v not in branch):
        return False
    ends = Counter()
    for p in w.paths:
        if p[0] not in branch or p[-1] not in branch or any(x in branch for x in p[1:-1]):
            return False
        ends[frozenset((p[0], p[-1]))] += 1
    if any(c != 1 for c in ends.values()) or any(len(k) != 2 for k in ends):
        return False
    pairs = set(ends)
    if w.kind == "K5":
        return len(branch) == 5 and len(pairs) == 10 and all(h.degree(v) == 4 for v in branch)
    if len(branch) != 6 or len(pairs) != 9 or any(h.degree(v) != 3 for v in branch):
        return False
    # bipartite with sides of three
    side = {branch[0]: 0}
    for _ in range(6):
        for pr in pairs:
            a, b = tuple(pr)
            if a in side and b not in side:
                side[b] = 1 - side[a]
            elif b in side and a not in side:
                side[a] = 1 - side[b]
    return len(side) == 6 and all(side[a] != side[b] for a, b in map(tuple, pairs)) and sum(side.values()) == 3


# -- duals --------------------------------------------------------------------------------


@dataclass(frozen=True)
class DualResult:
    graph: Graph
    collapsed: bool  # parallel dual edges merged or dual loops dropped
    face_of_vertex: dict[int, tuple[int, ...]] = field(default_factory=dict)


def planar_dual(e: Embedding) -> DualResult:
    if not e.graph.is_connected():
        raise GraphError("dual needs a connected graph")
    chk = validate_embedding(e)
    if chk.euler_characteristic != 2:
        raise GraphError(f"dual needs a spherical embedding, got Euler characteristic {chk.euler_characteristic}")
    dart_face: dict[tuple[int, int], list[int]] = {}
    for i, f in enumerate(e.faces):
        for u, v in _face_edges(f):
            dart_face.setdefault(norm_edge(u, v), []).append(i)
    edges = set()
    collapsed = False
    for ed, fs in dart_face.items():
        a, b = fs
        if a == b:
            collapsed = True
            continue
        de = norm_edge(a, b)
        if de in edges:
            collapsed = True
        edges.add(de)
    d = Graph(range(len(e.faces)), edges)
    return DualResult(d, collapsed, {i: f for i, f in enumerate(e.faces)})
