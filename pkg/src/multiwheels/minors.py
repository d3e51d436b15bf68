"""Minor containment for small patterns and the minor-bracket predicate.

For a connected pattern P and a connected host component G, P is a minor of G
iff V(G) splits into |V(P)| connected parts whose quotient graph contains P as
a spanning subgraph (unused vertices can always be absorbed into a neighbouring
part). The search contracts the host step by step:

* a vertex of degree below the pattern's minimum degree must join a neighbour;
* otherwise the minimum-degree vertex either joins a neighbour or is frozen
  as a finished part.

Dead states are remembered by their canonical form. Disconnected patterns use
a plain search over all contractions with a subgraph test at every state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .canon import canonical_form
from .graph import Edge, Graph, norm_edge


@dataclass(frozen=True)
class MinorWitness:
    branch_sets: dict[int, frozenset[int]]
    edge_map: dict[Edge, Edge]

    def to_json(self) -> dict:
        return {
            "branch_sets": {str(p): sorted(b) for p, b in sorted(self.branch_sets.items())},
            "edges": [{"pattern": list(pe), "host": list(he)} for pe, he in sorted(self.edge_map.items())],
        }


def check_minor_witness(host: Graph, pattern: Graph, w: MinorWitness) -> bool:
    """Independent validation: disjoint connected branch sets, every pattern edge realized."""
    if set(w.branch_sets) != set(pattern.vertices):
        return False
    seen: set[int] = set()
    for b in w.branch_sets.values():
        if not b or not b <= host.vertices or b & seen:
            return False
        seen |= b
        if not host.subgraph(b).is_connected():
            return False
    for pe in pattern.edges:
        he = w.edge_map.get(pe)
        if he is None or not host.has_edge(*he):
            return False
        a, b = w.branch_sets[pe[0]], w.branch_sets[pe[1]]
        if not ((he[0] in a and he[1] in b) or (he[0] in b and he[1] in a)):
            return False
    return True


class _State:
    __slots__ = ("adj", "members", "frozen")

    def __init__(self, adj, members, frozen):
        self.adj = adj
        self.members = members
        self.frozen = frozen

    def contract(self, v: int, u: int) -> "_State":
        keep, gone = min(u, v), max(u, v)
        adj = {x: set(s) for x, s in self.adj.items() if x != gone}
        merged = (self.adj[keep] | self.adj[gone]) - {keep, gone}
        adj[keep] = merged
        for x in self.adj[gone]:
            if x != keep:
                adj[x].discard(gone)
                adj[x].add(keep)
        members = dict(self.members)
        members[keep] = members[keep] | members.pop(gone)
        return _State(adj, members, self.frozen)

    def graph(self) -> Graph:
        return Graph(self.adj, [(x, y) for x, s in self.adj.items() for y in s if x < y])

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2


def _embed_subgraph(pattern: Graph, adj: dict[int, set[int]], spanning: bool) -> dict[int, int] | None:
    """Injective map pattern -> host vertices preserving pattern edges (non-induced)."""
    padj = pattern.adj
    order = sorted(pattern.vertices, key=lambda p: (-len(padj[p]), p))
    # connected-first ordering keeps the partial map constrained
    placed: list[int] = []
    rest = list(order)
    while rest:
        nxt = max(rest, key=lambda p: (sum(1 for q in padj[p] if q in placed), len(padj[p]), -p))
        placed.append(nxt)
        rest.remove(nxt)
    order = placed
    cand_all = sorted(adj)
    f: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        need = [f[q] for q in padj[p] if q in f]
        if need:
            cands = set(adj[need[0]])
            for h in need[1:]:
                cands &= adj[h]
            cands = sorted(cands)
        else:
            cands = cand_all
        for h in cands:
            if h in used or len(adj[h]) < len(padj[p]):
                continue
            f[p] = h
            used.add(h)
            if rec(i + 1):
                return True
            del f[p]
            used.discard(h)
        return False

    if spanning and len(adj) != pattern.n:
        return None
    return dict(f) if rec(0) else None


def _witness(host: Graph, pattern: Graph, f: dict[int, int], members: dict[int, frozenset[int]]) -> MinorWitness:
    bs = {p: frozenset(members[f[p]]) for p in pattern.vertices}
    em = {}
    for a, b in pattern.sorted_edges():
        em[(a, b)] = min(
            norm_edge(x, y) for x in bs[a] for y in host.adj[x] if y in bs[b]
        )
    return MinorWitness(bs, em)


@dataclass
class MinorSearch:
    """Result of one exact search plus bookkeeping."""

    witness: MinorWitness | None
    states: int = 0
    prefilter_absent: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None


def _connected_search(comp: Graph, pattern: Graph, stats: MinorSearch) -> MinorWitness | None:
    pn, pm = pattern.n, pattern.m
    pmin = min(pattern.degree(v) for v in pattern.vertices)
    dead: set = set()
    start = _State(
        {v: set(comp.adj[v]) for v in comp.vertices},
        {v: frozenset([v]) for v in comp.vertices},
        frozenset(),
    )

    def rec(s: _State) -> MinorWitness | None:
        stats.states += 1
        n = len(s.adj)
        if n < pn or s.m < pm:
            return None
        if n == pn:
            f = _embed_subgraph(pattern, s.adj, spanning=True)
            return None if f is None else _witness(comp, pattern, f, s.members)
        if len(s.frozen) >= pn:
            return None
        if any(len(s.adj[v]) < pmin for v in s.frozen):
            return None
        key = canonical_form(s.graph(), {v: 1 for v in s.frozen})
        if key in dead:
            return None
        free = [v for v in s.adj if v not in s.frozen]
        v = min(free, key=lambda x: (len(s.adj[x]), x))
        options = sorted(u for u in s.adj[v] if u not in s.frozen)
        if len(s.adj[v]) >= pmin:
            frozen_state = _State(s.adj, s.members, s.frozen | {v})
            branches = [s.contract(v, u) for u in options] + [frozen_state]
        else:
            branches = [s.contract(v, u) for u in options]
        for child in branches:
            w = rec(child)
            if w is not None:
                return w
        dead.add(key)
        return None

    return rec(start)


def _general_search(host: Graph, pattern: Graph, stats: MinorSearch) -> MinorWitness | None:
    dead: set = set()
    start = _State(
        {v: set(host.adj[v]) for v in host.vertices},
        {v: frozenset([v]) for v in host.vertices},
        frozenset(),
    )

    def rec(s: _State) -> MinorWitness | None:
        stats.states += 1
        if len(s.adj) < pattern.n or s.m < pattern.m:
            return None
        key = canonical_form(s.graph())
        if key in dead:
            return None
        f = _embed_subgraph(pattern, s.adj, spanning=False)
        if f is not None:
            return _witness(host, pattern, f, s.members)
        for x in sorted(s.adj):
            for y in sorted(s.adj[x]):
                if x < y:
                    w = rec(s.contract(x, y))
                    if w is not None:
                        return w
        dead.add(key)
        return None

    return rec(start)


def minor_search(host: Graph, pattern: Graph) -> MinorSearch:
    stats = MinorSearch(None)
    stats.prefilter_absent = treewidth_prefilter(host, pattern)
    if pattern.n == 0:
        stats.witness = MinorWitness({}, {})
        return stats
    if pattern.n > host.n or pattern.m > host.m:
        return stats
    if pattern.is_connected():
        for comp in host.components():
            sub = host.subgraph(comp)
            if sub.n < pattern.n or sub.m < pattern.m:
                continue
            if pattern.n == 1:
                stats.witness = MinorWitness({next(iter(pattern.vertices)): frozenset(comp)}, {})
                break
            w = _connected_search(sub, pattern, stats)
            if w is not None:
                stats.witness = w
                break
    else:
        stats.witness = _general_search(host, pattern, stats)
    if stats.witness is not None:
        assert check_minor_witness(host, pattern, stats.witness)
        if stats.prefilter_absent:
            raise AssertionError("treewidth certificate contradicts a found minor")
    return stats


def has_minor(host: Graph, pattern: Graph) -> MinorWitness | None:
    return minor_search(host, pattern).witness


def minor_bracket(host: Graph, h1: Graph, h2: Graph) -> bool:
    """<h1, h2; host>: h1 < h2, h1 < host and h2 not < host."""
    return (
        has_minor(h2, h1) is not None
        and has_minor(host, h1) is not None
        and has_minor(host, h2) is None
    )


# -- treewidth certificate --------------------------------------------------------------


def treewidth_upper_bound(g: Graph) -> tuple[int, list[int]]:
    """Width of a min-fill elimination ordering (a valid tree decomposition width)."""
    adj = {v: set(g.adj[v]) for v in g.vertices}
    order = []
    width = 0
    while adj:
        def fill(v):
            nb = adj[v]
            return sum(1 for a, b in combinations(sorted(nb), 2) if b not in adj[a])

        v = min(adj, key=lambda x: (fill(x), len(adj[x]), x))
        nb = adj.pop(v)
        width = max(width, len(nb))
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        order.append(v)
    return width, order


def treewidth_exact(g: Graph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets (small graphs only)."""
    vs = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(vs)}
    nbr = [0] * len(vs)
    for u, v in g.edges:
        nbr[idx[u]] |= 1 << idx[v]
        nbr[idx[v]] |= 1 << idx[u]
    n = len(vs)
    full = (1 << n) - 1

    def q(S: int, v: int) -> int:
        # vertices outside S+v reachable from v through S
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            x = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            for y in range(n):
                if nbr[x] >> y & 1 and not seen >> y & 1:
                    seen |= 1 << y
                    if S >> y & 1:
                        frontier |= 1 << y
                    else:
                        out += 1
        return out

    @lru_cache(maxsize=None)
    def tw(S: int) -> int:
        if S == 0:
            return -1
        best = n
        for v in range(n):
            if S >> v & 1:
                rest = S & ~(1 << v)
                best = min(best, max(tw(rest), q(rest, v)))
        return best

    return max(tw(full), 0) if n else -1


def treewidth_prefilter(host: Graph, pattern: Graph) -> bool:
    """Sound absence test: a host of treewidth below the pattern's has no such minor."""
    if pattern.n > 12 or pattern.n == 0:
        return False
    return treewidth_upper_bound(host)[0] < treewidth_exact(pattern)
