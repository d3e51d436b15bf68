"""Brute-force reference implementations used as test oracles.

Nothing here imports the search code under test; every oracle works from
plain vertex/edge lists by exhaustive enumeration (or through networkx).
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
from networkx.algorithms import isomorphism as nxiso


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def brute_chromatic(vertices, edges) -> int:
    vs = sorted(vertices)
    if not vs:
        return 0
    idx = {v: i for i, v in enumerate(vs)}
    es = [(idx[u], idx[v]) for u, v in edges]
    n = len(vs)
    for k in range(1, n + 1):
        # vertex 0 fixed to colour 0
        for rest in itertools.product(range(k), repeat=n - 1):
            col = (0,) + rest
            if all(col[a] != col[b] for a, b in es):
                return k
    return n


def brute_colorings(vertices, edges, k):
    vs = sorted(vertices)
    for col in itertools.product(range(k), repeat=len(vs)):
        c = dict(zip(vs, col))
        if all(c[u] != c[v] for u, v in edges):
            yield c


def brute_automorphisms(vertices, edges):
    vs = sorted(vertices)
    es = {frozenset(e) for e in edges}
    for p in itertools.permutations(vs):
        phi = dict(zip(vs, p))
        if all(frozenset((phi[u], phi[v])) in es for u, v in edges):
            yield phi


def brute_lonely_classes(vertices, edges) -> set[tuple[int, ...]]:
    """Minimum-size colour-class unions of all 4-colourings, least image under automorphisms."""
    auts = list(brute_automorphisms(vertices, edges))
    out = set()
    for c in brute_colorings(vertices, edges, 4):
        classes = {}
        for v, x in c.items():
            classes.setdefault(x, set()).add(v)
        low = min(len(s) for s in classes.values())
        support = set().union(*(s for s in classes.values() if len(s) == low))
        out.add(min(tuple(sorted(phi[v] for v in support)) for phi in auts))
    return out


# -- Kuratowski subdivisions ----------------------------------------------------------------


def _disjoint_paths(adj, pairs, blocked):
    if not pairs:
        return True
    (a, b), rest = pairs[0], pairs[1:]

    def walk(x, used):
        for y in adj[x]:
            if y == b:
                if walk_done(used, rest):
                    return True
            elif y not in blocked and y not in used:
                used.add(y)
                if walk(y, used):
                    return True
                used.discard(y)
        return False

    def walk_done(used, rest_pairs):
        return _disjoint_paths(adj, rest_pairs, blocked | used)

    return walk(a, set())


def has_kuratowski_subdivision(vertices, edges) -> bool:
    """Exhaustive: some K5 or K3,3 whose branch pairs join by internally disjoint paths."""
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    vs = sorted(vertices)
    for br in itertools.combinations([v for v in vs if len(adj[v]) >= 4], 5):
        pairs = list(itertools.combinations(br, 2))
        if _disjoint_paths(adj, pairs, set(br)):
            return True
    deg3 = [v for v in vs if len(adj[v]) >= 3]
    for six in itertools.combinations(deg3, 6):
        first = six[0]
        for side in itertools.combinations(six[1:], 2):
            left = (first,) + side
            right = tuple(v for v in six if v not in left)
            pairs = [(x, y) for x in left for y in right]
            if _disjoint_paths(adj, pairs, set(six)):
                return True
    return False


# -- minors by partition enumeration ----------------------------------------------------------


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def minor_by_partitions(host, pattern) -> bool:
    """pattern < host iff some partition of a vertex subset into connected blocks has
    a quotient containing the pattern as a subgraph; deleted vertices form one extra
    block that is ignored."""
    H = to_nx(host)
    P = to_nx(pattern)
    vs = sorted(host.vertices)
    for keep_mask in range(1 << len(vs)):
        keep = [v for i, v in enumerate(vs) if keep_mask >> i & 1]
        if len(keep) < P.number_of_nodes():
            continue
        for blocks in set_partitions(keep):
            if len(blocks) < P.number_of_nodes():
                continue
            if any(len(b) > 1 and not nx.is_connected(H.subgraph(b)) for b in blocks):
                continue
            Q = nx.quotient_graph(H.subgraph(keep), [set(b) for b in blocks])
            if Q.number_of_edges() < P.number_of_edges():
                continue
            if nxiso.GraphMatcher(Q, P).subgraph_is_monomorphic():
                return True
    return False


def minor_by_connected_partitions(host, pattern) -> bool:
    """Connected host and pattern: exactly |V(P)| connected blocks covering the host."""
    H = to_nx(host)
    P = to_nx(pattern)
    k = P.number_of_nodes()
    vs = sorted(host.vertices)
    for blocks in set_partitions(vs):
        if len(blocks) != k:
            continue
        if any(len(b) > 1 and not nx.is_connected(H.subgraph(b)) for b in blocks):
            continue
        Q = nx.quotient_graph(H, [set(b) for b in blocks])
        if nxiso.GraphMatcher(Q, P).subgraph_is_monomorphic():
            return True
    return False


def random_graph(n, p, rng: random.Random):
    return list(range(n)), [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
