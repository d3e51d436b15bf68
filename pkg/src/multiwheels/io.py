"""Serialization: graph6, JSON documents and Graphviz DOT."""

from __future__ import annotations

import json
from typing import Iterable

from .graph import Graph, GraphError

HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    """graph6 string for ``g``; vertices are taken in sorted order."""
    order = {v: i for i, v in enumerate(g.sorted_vertices())}
    n = g.n
    idx = {tuple(sorted((order[u], order[v]))) for u, v in g.edges}
    bits = [1 if (i, j) in idx else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[k : k + 6])), 2) for k in range(0, len(bits), 6)
    )
    out = (_encode_n(n) + body).decode("ascii")
    return HEADER + out if header else out


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise GraphError("empty graph6 string")
    data = s.encode("ascii")
    if any(b < 63 or b > 126 for b in data):
        raise GraphError("graph6 contains bytes outside 63..126")
    if data[0] != 126:
        n, rest = data[0] - 63, data[1:]
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        rest = data[4:]
    else:
        if len(data) < 8:
            raise GraphError("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        rest = data[8:]
    need = n * (n - 1) // 2
    if len(rest) != (need + 5) // 6:
        raise GraphError(f"graph6 body has {len(rest)} bytes, expected {(need + 5) // 6}")
    bits = []
    for b in rest:
        v = b - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[need:]):
        raise GraphError("graph6 padding bits must be zero")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(range(n), edges)


def graph_to_json(g: Graph) -> dict:
    doc = {
        "vertices": g.sorted_vertices(),
        "edges": [list(e) for e in g.sorted_edges()],
        "labels": {str(v): t for v, t in sorted(g.labels.items())},
    }
    if g.handles:
        doc["handles"] = {k: _jsonable(v) for k, v in sorted(g.handles.items())}
    return doc


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return x


def graph_from_json(doc: dict) -> Graph:
    try:
        vertices = [int(v) for v in doc["vertices"]]
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from None
    labels = {int(k): v for k, v in (doc.get("labels") or {}).items()}
    handles = doc.get("handles") or {}
    return Graph(vertices, edges, labels, handles)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


ROLE_COLORS = {
    "central-hub": "red",
    "section-hub": "orange",
    "rim": "lightblue",
    "shadow": "palegreen",
    "apex": "gold",
    "plain": "white",
}


def to_dot(g: Graph, ghosts: Iterable[tuple[int, int]] = (), name: str = "G") -> str:
    """DOT text; vertices filled by role, annihilated edges drawn dashed."""
    lines = [f"graph {name} {{", "  node [style=filled, shape=circle];"]
    labels = g.labels
    for v in g.sorted_vertices():
        role = labels.get(v, "plain")
        lines.append(f'  {v} [fillcolor="{ROLE_COLORS[role]}", tooltip="{role}"];')
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    for u, v in sorted(set(tuple(sorted(e)) for e in ghosts)):
        lines.append(f"  {u} -- {v} [style=dashed, color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> tuple[Graph, dict]:
    """Parse graph6 or a JSON document; returns the graph and the raw document (if JSON)."""
    s = text.strip()
    if not s:
        raise GraphError("empty input")
    if s.startswith("{"):
        try:
            doc = json.loads(s)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
        gdoc = doc.get("graph", doc)
        return graph_from_json(gdoc), doc
    return from_graph6(s.splitlines()[0]), {}
