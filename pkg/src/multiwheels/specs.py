"""Spec literals used on the command line.

Grammar::

    w:<q><type>-<q><type>-...    plane multiwheel, type in rr|ss|sr|rs (default rr)
    g:q=<q>                      Grötzsch-class member with its projective embedding
    p:c=<q>;s=<q>,<q>,...        projective multiwheel
    u:<q>,<q>,...                unclosed chain of odd wheels
    base | O | O- | cube | grotzsch | nonplanar | K<k> | C<k> | W<k>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import constructors as C
from .graph import Edge, Graph, GraphError, SumConfiguration


class SpecError(GraphError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos
        self.msg = msg


@dataclass
class Construction:
    spec: str
    graph: Graph
    config: SumConfiguration | None = None
    embedding: object | None = None  # topology.Embedding
    ghosts: frozenset[Edge] = field(default_factory=frozenset)
    family: str = "named"
    nondefault: bool = False


_SECTION = re.compile(r"(\d+)(rr|ss|sr|rs)?")
_INT = re.compile(r"\d+")


def _int_list(text: str, start: int) -> list[int]:
    out = []
    pos = start
    while True:
        m = _INT.match(text, pos)
        if not m:
            raise SpecError(text, pos, "expected a positive integer")
        out.append(int(m.group()))
        pos = m.end()
        if pos == len(text):
            return out
        if text[pos] != ",":
            raise SpecError(text, pos, "expected ','")
        pos += 1


def parse_multiwheel(text: str) -> C.MultiwheelSpec:
    if not text.startswith("w:"):
        raise SpecError(text, 0, "expected 'w:'")
    pos = 2
    sections = []
    while True:
        m = _SECTION.match(text, pos)
        if not m:
            raise SpecError(text, pos, "expected a section such as '1rr'")
        sections.append((int(m.group(1)), m.group(2) or "rr"))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "-":
            raise SpecError(text, pos, "expected '-' between sections")
        pos += 1
    try:
        return C.MultiwheelSpec.of(sections)
    except GraphError as exc:
        raise SpecError(text, 2, str(exc)) from None


def parse_projective(text: str) -> C.ProjectiveSpec:
    m = re.match(r"p:c=(\d+);s=", text)
    if not m:
        raise SpecError(text, 0, "expected 'p:c=<q>;s=<list>'")
    sats = _int_list(text, m.end())
    try:
        return C.ProjectiveSpec(int(m.group(1)), tuple(sats))
    except GraphError as exc:
        raise SpecError(text, m.end(), str(exc)) from None


def parse_grotzsch(text: str) -> int:
    m = re.fullmatch(r"g:q=(\d+)", text)
    if not m:
        raise SpecError(text, 2 if text.startswith("g:") else 0, "expected 'g:q=<q>'")
    q = int(m.group(1))
    if q < 1:
        raise SpecError(text, 4, "q must be >= 1")
    return q


def _named(text: str) -> Graph | None:
    fixed = {
        "base": C.base_graph,
        "O": C.octahedron,
        "O-": C.octahedron_minus,
        "cube": C.cube,
        "grotzsch": C.grotzsch_graph,
    }
    if text in fixed:
        return fixed[text]()
    m = re.fullmatch(r"([KCW])(\d+)", text)
    if m:
        k = int(m.group(2))
        return {"K": C.complete, "C": C.cycle, "W": C.wheel}[m.group(1)](k)
    return None


def base_projective_embedding():
    """The q=1 Grötzsch-class face list carried over onto ``base_graph()``."""
    from .canon import is_isomorphic
    from .topology import Embedding

    g = C.base_graph()
    h, emb = C.grotzsch_class(1)
    ok, phi = is_isomorphic(h, g)
    assert ok
    return Embedding(g, tuple(tuple(phi[v] for v in f) for f in emb.faces))


def build(text: str) -> Construction:
    """Parse a spec literal and run its constructor (certificates included)."""
    text = text.strip()
    if not text:
        raise SpecError(text, 0, "empty spec")
    if text.startswith("w:"):
        spec = parse_multiwheel(text)
        b = C.plane_multiwheel(spec)
        nondefault = any(t is not C.SectionType.RR for _, t in spec.sections)
        return Construction(spec.literal(), b.graph, b.config, None, b.ghosts, "plane", nondefault)
    if text.startswith("g:"):
        q = parse_grotzsch(text)
        g, emb = C.grotzsch_class(q)
        return Construction(f"g:q={q}", g, None, emb, frozenset(), "grotzsch")
    if text.startswith("p:"):
        spec = parse_projective(text)
        b = C.projective_multiwheel(spec)
        return Construction(spec.literal(), b.graph, b.config, None, b.ghosts, "projective")
    if text.startswith("u:"):
        orders = _int_list(text, 2)
        if any(q < 1 for q in orders):
            raise SpecError(text, 2, "wheel orders must be >= 1")
        return Construction(text, C.unclosed_sequence(orders), family="unclosed")
    if text == "base":
        return Construction(text, C.base_graph(), embedding=base_projective_embedding())
    if text == "nonplanar":
        b = C.nonplanar_counterexample()
        return Construction(text, b.graph, b.config, None, b.ghosts, "counterexample")
    try:
        g = _named(text)
    except GraphError as exc:
        raise SpecError(text, 1, str(exc)) from None
    if g is None:
        raise SpecError(text, 0, "unknown spec")
    return Construction(text, g)
