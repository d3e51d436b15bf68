"""Canonical labeling by equitable refinement plus individualization.

Small-graph machinery: the search walks the individualization tree, keeps the
lexicographically least relabeled edge list, and prunes children that lie in
one orbit of the automorphisms found so far (restricted to those fixing the
current path pointwise).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .graph import Graph


def _refine(adj: dict[int, frozenset[int]], cells: list[list[int]]) -> list[list[int]]:
    while True:
        idx = {}
        for i, c in enumerate(cells):
            for v in c:
                idx[v] = i
        new: list[list[int]] = []
        for i, c in enumerate(cells):
            if len(c) == 1:
                new.append(c)
                continue
            keyed = {}
            for v in c:
                key = tuple(sorted(idx[u] for u in adj[v]))
                keyed.setdefault(key, []).append(v)
            for key in sorted(keyed):
                new.append(keyed[key])
        if len(new) == len(cells):
            return new
        cells = new


def _initial_cells(g: Graph, colors: Mapping[int, object] | None) -> list[list[int]]:
    groups: dict[object, list[int]] = {}
    for v in g.sorted_vertices():
        key = (colors.get(v) if colors else None, g.degree(v))
        groups.setdefault(key, []).append(v)
    return [groups[k] for k in sorted(groups, key=repr)]


def _form(edges, pos) -> tuple:
    return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in edges))


def canonical_labeling(g: Graph, colors: Mapping[int, object] | None = None) -> dict[int, int]:
    """Map each vertex to its position 0..n-1 in a canonical order.

    ``colors`` is an optional vertex coloring that relabelings must respect.
    """
    if g.n == 0:
        return {}
    adj = g.adj
    edges = g.edges
    best: list = [None, None]  # form, labeling
    first: list = [None, None]
    gens: list[dict[int, int]] = []

    def orbit_rep(path: list[int], cell: list[int]) -> dict[int, int]:
        parent = {v: v for v in g.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in gens:
            if all(a[p] == p for p in path):
                for v, w in a.items():
                    rv, rw = find(v), find(w)
                    if rv != rw:
                        parent[max(rv, rw)] = min(rv, rw)
        return {v: find(v) for v in cell}

    def search(cells: list[list[int]], path: list[int]):
        cells = _refine(adj, cells)
        if len(cells) == g.n:
            pos = {c[0]: i for i, c in enumerate(cells)}
            form = _form(edges, pos)
            for ref in (first, best):
                if ref[0] == form:
                    inv = {i: v for v, i in ref[1].items()}
                    gens.append({v: inv[pos[v]] for v in g.vertices})
                    break
            if first[0] is None:
                first[0], first[1] = form, pos
            if best[0] is None or form < best[0]:
                best[0], best[1] = form, pos
            return
        ti = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        target = cells[ti]
        tried_reps: set[int] = set()
        for v in target:
            reps = orbit_rep(path, target)
            if reps[v] in tried_reps:
                continue
            tried_reps.add(reps[v])
            child = cells[:ti] + [[v], [x for x in target if x != v]] + cells[ti + 1 :]
            search(child, path + [v])

    search(_initial_cells(g, colors), [])
    return best[1]


def canonical_form(g: Graph, colors: Mapping[int, object] | None = None) -> tuple:
    """Isomorphism-invariant key: ``(n, sorted canonical edges[, color sequence])``."""
    lab = canonical_labeling(g, colors)
    key = (g.n, _form(g.edges, lab))
    if colors:
        inv = sorted(lab, key=lab.get)
        key += (tuple(repr(colors.get(v)) for v in inv),)
    return key


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def is_isomorphic(a: Graph, b: Graph) -> tuple[bool, dict[int, int] | None]:
    """Exact isomorphism test; the witness maps vertices of ``a`` to ``b``."""
    if a.n != b.n or a.m != b.m:
        return False, None
    if sorted(a.degree(v) for v in a.vertices) != sorted(b.degree(v) for v in b.vertices):
        return False, None
    la, lb = canonical_labeling(a), canonical_labeling(b)
    if _form(a.edges, la) != _form(b.edges, lb):
        return False, None
    inv_b = {i: v for v, i in lb.items()}
    phi = {v: inv_b[la[v]] for v in a.vertices}
    assert all(b.has_edge(phi[u], phi[v]) for u, v in a.edges)
    return True, phi


def isomorphic(a: Graph, b: Graph) -> bool:
    return is_isomorphic(a, b)[0]


def automorphisms(g: Graph) -> list[dict[int, int]]:
    """All automorphisms, by backtracking within equitable cells."""
    adj = g.adj
    cells = _refine(adj, _initial_cells(g, None))
    cell_of = {v: i for i, c in enumerate(cells) for v in c}
    order = sorted(g.vertices, key=lambda v: (len(cells[cell_of[v]]), cell_of[v], v))
    out: list[dict[int, int]] = []

    def extend(i: int, phi: dict[int, int], used: set[int]):
        if i == len(order):
            out.append(dict(phi))
            return
        v = order[i]
        for w in cells[cell_of[v]]:
            if w in used:
                continue
            ok = True
            for u in adj[v]:
                if u in phi and phi[u] not in adj[w]:
                    ok = False
                    break
            if ok:
                for u, pu in phi.items():
                    if (u in adj[v]) != (pu in adj[w]):
                        ok = False
                        break
            if not ok:
                continue
            phi[v] = w
            used.add(w)
            extend(i + 1, phi, used)
            del phi[v]
            used.discard(w)

    extend(0, {}, set())
    return out


def orbit_canonical_set(subset: Sequence[int], group: list[dict[int, int]]) -> tuple[int, ...]:
    """Least sorted image of ``subset`` under the permutation group ``group``."""
    return min(tuple(sorted(a[v] for v in subset)) for a in group)
