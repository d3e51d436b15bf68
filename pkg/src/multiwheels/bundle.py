"""Verification bundles: one JSON document per graph with every requested certificate.

Each check records the claim it tests and whether it held. ``check_bundle``
re-validates a serialized bundle against its graph without rerunning any
search: witness colorings, the planar face list or Kuratowski subdivision,
the embedding and the minor witness are checked directly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .canon import canonical_form
from .coloring import certify_4_critical, chromatic_coloring, is_proper
from .constructors import octahedron, octahedron_minus
from .graph import Graph, GraphError, delete_edge, delete_vertex, norm_edge
from .io import graph_to_json, to_graph6
from .minors import MinorWitness, check_minor_witness, minor_search
from .topology import (
    Embedding,
    EmbeddingError,
    KuratowskiWitness,
    certify_projective_quadrangulation,
    check_kuratowski,
    is_planar,
    validate_embedding,
)

CHECKS = ("color", "critical", "planar", "quad", "bracket")


@dataclass
class VerificationBundle:
    graph: Graph
    spec: str
    checks: dict[str, dict] = field(default_factory=dict)
    embedding: Embedding | None = None
    timestamp: str = ""

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def identity(self) -> dict:
        g = self.graph
        canon = canonical_form(g)
        return {
            "n": g.n,
            "m": g.m,
            "two_n_minus_two": g.m == 2 * g.n - 2,
            "canonical_graph6": to_graph6(Graph(range(g.n), canon[1])),
        }

    def body(self) -> dict:
        doc = {
            "identity": self.identity(),
            "graph": graph_to_json(self.graph),
            "provenance": {"spec": self.spec, "tool": "multiwheels", "version": __version__},
            "checks": self.checks,
            "pass": self.passed,
        }
        if self.embedding is not None:
            doc["embedding"] = self.embedding.to_json()
        return doc

    def digest(self) -> str:
        blob = json.dumps(self.body(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> dict:
        doc = self.body()
        doc["sha256"] = self.digest()
        doc["timestamp"] = self.timestamp
        return doc


def expected_planarity(family: str, spec: str) -> bool | None:
    """Planarity claimed for a family; ``None`` when only the certificate is recorded."""
    if family == "plane" or spec in ("base", "O", "O-", "cube") or spec.startswith(("K4", "W", "C")):
        return True
    if family == "grotzsch":
        return spec == "g:q=1"
    if family == "counterexample":
        return False
    return None


def _check_color(g: Graph) -> dict:
    chi, col = chromatic_coloring(g)
    return {
        "claim": "chromatic number is 4",
        "chromatic_number": chi,
        "coloring": {str(v): c for v, c in sorted(col.items())},
        "pass": chi == 4,
    }


def _check_critical(g: Graph, contractions, all_contractions: bool = False) -> dict:
    rep = certify_4_critical(g, contractions, all_contractions)
    doc = rep.to_json()
    doc["claim"] = "4-critical under edge and vertex deletion"
    doc["pass"] = rep.is_4_critical and rep.verify(g)
    return doc


def _check_planar(g: Graph, expect: bool | None) -> dict:
    res = is_planar(g)
    if res.planar:
        chk = validate_embedding(res.embedding)
        valid = chk.euler_characteristic == 2
    else:
        valid = check_kuratowski(g, res.witness)
    doc = res.to_json()
    doc["expected"] = expect
    doc["claim"] = "certificate valid" if expect is None else ("planar" if expect else "non-planar")
    doc["pass"] = valid and (expect is None or expect == res.planar)
    return doc


def _check_quad(emb: Embedding | None) -> dict:
    if emb is None:
        return {"claim": "projective-plane quadrangulation", "pass": False, "reason": "no embedding supplied"}
    try:
        chk = validate_embedding(emb)
    except EmbeddingError as exc:
        return {"claim": "projective-plane quadrangulation", "pass": False, "reason": str(exc)}
    ok = certify_projective_quadrangulation(emb)
    return {
        "claim": "projective-plane quadrangulation",
        "euler_characteristic": chk.euler_characteristic,
        "face_lengths": {str(k): v for k, v in chk.face_lengths.items()},
        "pass": ok,
    }


def _check_bracket(g: Graph) -> dict:
    om, o = octahedron_minus(), octahedron()
    inner = minor_search(o, om)
    low = minor_search(g, om)
    high = minor_search(g, o)
    verdict = inner.found and low.found and not high.found
    return {
        "claim": "<O-, O> is a minor bracket",
        "O-_in_O": inner.found,
        "O-_in_G": low.witness.to_json() if low.found else None,
        "O_in_G": high.witness.to_json() if high.found else None,
        "states": {"O-": low.states, "O": high.states},
        "treewidth_prefilter_O_absent": high.prefilter_absent,
        "pass": verdict,
    }


def verify(
    g: Graph,
    checks=CHECKS,
    spec: str = "",
    family: str = "named",
    embedding: Embedding | None = None,
    timestamp: str | None = None,
    all_contractions: bool = False,
) -> VerificationBundle:
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise GraphError(f"unknown checks: {sorted(unknown)}")
    if embedding is not None and embedding.graph != g:
        raise GraphError("embedding belongs to a different graph")
    b = VerificationBundle(g, spec, embedding=embedding)
    b.timestamp = timestamp if timestamp is not None else datetime.now(timezone.utc).isoformat()
    contractions = {}
    for name in ("thick",):
        if name in g.handles:
            contractions[name] = tuple(g.handles[name])
    for c in CHECKS:
        if c not in checks:
            continue
        if c == "color":
            b.checks[c] = _check_color(g)
        elif c == "critical":
            b.checks[c] = _check_critical(g, contractions, all_contractions)
        elif c == "planar":
            b.checks[c] = _check_planar(g, expected_planarity(family, spec))
        elif c == "quad":
            b.checks[c] = _check_quad(embedding)
        elif c == "bracket":
            b.checks[c] = _check_bracket(g)
    return b


def _coloring(doc) -> dict[int, int]:
    return {int(v): c for v, c in doc.items()}


def check_bundle(doc: dict) -> list[str]:
    """Re-validate every certificate in a serialized bundle; returns a list of problems."""
    from .io import graph_from_json

    problems = []
    g = graph_from_json(doc["graph"])
    body = {k: v for k, v in doc.items() if k not in ("sha256", "timestamp")}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    if hashlib.sha256(blob.encode()).hexdigest() != doc.get("sha256"):
        problems.append("hash mismatch")
    checks = doc["checks"]
    if "color" in checks:
        c = checks["color"]
        if not is_proper(g, _coloring(c["coloring"]), c["chromatic_number"]):
            problems.append("color: stored coloring is not proper")
    if "critical" in checks:
        c = checks["critical"]
        for item in c["edge_witnesses"]:
            col = item["coloring"]
            if col is not None and not is_proper(delete_edge(g, item["edge"]), _coloring(col), 3):
                problems.append(f"critical: bad witness for edge {item['edge']}")
        for item in c["vertex_witnesses"]:
            col = item["coloring"]
            if col is not None and not is_proper(delete_vertex(g, item["vertex"]), _coloring(col), 3):
                problems.append(f"critical: bad witness for vertex {item['vertex']}")
    if "planar" in checks:
        c = checks["planar"]
        if c["planar"]:
            try:
                chk = validate_embedding(Embedding.from_json(g, c["embedding"]))
                if chk.euler_characteristic != 2:
                    problems.append("planar: face list is not spherical")
            except EmbeddingError as exc:
                problems.append(f"planar: {exc}")
        else:
            k = c["kuratowski"]
            edges = frozenset(norm_edge(p[i], p[i + 1]) for p in k["paths"] for i in range(len(p) - 1))
            w = KuratowskiWitness(k["kind"], tuple(k["branch_vertices"]), tuple(map(tuple, k["paths"])), edges)
            if not check_kuratowski(g, w):
                problems.append("planar: Kuratowski witness invalid")
    if "quad" in checks and checks["quad"]["pass"]:
        emb = Embedding.from_json(g, doc["embedding"])
        if not certify_projective_quadrangulation(emb):
            problems.append("quad: embedding is not a projective quadrangulation")
    if "bracket" in checks:
        c = checks["bracket"]
        for key, pattern in (("O-_in_G", octahedron_minus()), ("O_in_G", octahedron())):
            w = c[key]
            if w is None:
                continue
            bs = {int(p): frozenset(b) for p, b in w["branch_sets"].items()}
            em = {tuple(e["pattern"]): tuple(e["host"]) for e in w["edges"]}
            if not check_minor_witness(g, pattern, MinorWitness(bs, em)):
                problems.append(f"bracket: {key} witness invalid")
    return problems
