import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiwheels.canon import automorphisms, canonical_form, is_isomorphic, isomorphic
from multiwheels.constructors import base_graph, complete, cycle, mycielski, octahedron, octahedron_minus, path, wheel
from multiwheels.graph import (
    Graph,
    GraphError,
    SumConfiguration,
    add_edge,
    contract_edge,
    delete_edge,
    delete_vertex,
    split_vertex,
    sum_mod_two,
)
from multiwheels.io import from_graph6, graph_from_json, graph_to_json, read_graph, to_dot, to_graph6
from oracles import brute_automorphisms, to_nx


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(range(n), chosen)


# -- Graph value ------------------------------------------------------------------------


def test_rejects_loops_and_dangling_endpoints():
    with pytest.raises(GraphError):
        Graph([0, 1], [(0, 0)])
    with pytest.raises(GraphError):
        Graph([0], [(0, 1)])


def test_parallel_edges_collapse():
    assert Graph([0, 1], [(0, 1), (1, 0)]).m == 1


def test_labels_do_not_affect_equality():
    a = Graph([0, 1], [(0, 1)], {0: "rim"})
    b = Graph([0, 1], [(0, 1)])
    assert a == b and hash(a) == hash(b)


# -- sum modulo two -----------------------------------------------------------------------


def test_self_sum_is_edgeless():
    g = octahedron()
    res = sum_mod_two(g, g, {v: v for v in g.vertices})
    assert res.graph.m == 0 and res.graph.vertices == g.vertices
    assert len(res.annihilated) == 12


def test_three_w3_gives_seven_vertices_twelve_edges():
    from multiwheels.constructors import three_w3

    g, config = three_w3()
    assert (g.n, g.m) == (7, 12)
    assert [len(x) for x in config.losses()] == [2, 2, 2]


def test_sum_rejects_bad_maps():
    a, b = complete(3), complete(3)
    with pytest.raises(GraphError):
        sum_mod_two(a, b, {0: 0, 1: 0})
    with pytest.raises(GraphError):
        sum_mod_two(a, b, {7: 0})
    with pytest.raises(GraphError):
        sum_mod_two(a, b, {0: 9})


def test_sum_fresh_ids_follow_sorted_order():
    res = sum_mod_two(path(2), path(3), {0: 1})
    assert res.vertex_map == {0: 1, 1: 2, 2: 3}
    assert res.graph.edges == {(0, 1), (1, 2), (2, 3)}


@settings(max_examples=60, deadline=None)
@given(graphs(6), graphs(6), st.randoms(use_true_random=False))
def test_sum_edge_count_identity_and_commutativity(a, b, rnd):
    k = rnd.randint(0, min(a.n, b.n))
    dom = rnd.sample(sorted(b.vertices), k)
    img = rnd.sample(sorted(a.vertices), k)
    phi = dict(zip(dom, img))
    res = sum_mod_two(a, b, phi)
    assert res.graph.m == a.m + b.m - 2 * len(res.annihilated)
    # the reverse sum glues a onto b along the inverse map
    inv = {v: u for u, v in phi.items()}
    rev = sum_mod_two(b, a, inv)
    assert isomorphic(res.graph, rev.graph)


def test_configuration_replay_is_deterministic():
    w = wheel(3)
    config = SumConfiguration((w, w, w), ({0: 0, 1: 3}, {0: 0, 1: 5}))
    g1, _ = config.replay()
    g2, _ = config.replay()
    assert g1 == g2 and g1.labels == g2.labels
    ab = sum_mod_two(w, w, {0: 0, 1: 3}).graph
    left = sum_mod_two(ab, w, {0: 0, 1: 5}).graph
    assert left == g1


# -- deletion, contraction, split -----------------------------------------------------------


def test_delete_edge_of_k4():
    g = delete_edge(complete(4), (0, 1))
    assert (g.n, g.m) == (4, 5)


def test_delete_apex_of_mycielski_triangle():
    g = mycielski(cycle(3))
    g2 = delete_vertex(g, 6)
    assert (g2.n, g2.m) == (6, 9)


def test_delete_last_vertex_gives_empty_graph():
    g = delete_vertex(Graph([0]), 0)
    assert g.n == 0 and g.m == 0


def test_missing_elements_rejected():
    with pytest.raises(GraphError):
        delete_edge(complete(3), (0, 5))
    with pytest.raises(GraphError):
        delete_vertex(complete(3), 5)
    with pytest.raises(GraphError):
        contract_edge(path(3), (0, 2))


def test_contract_triangle_edge_gives_single_edge():
    g = contract_edge(complete(3), (0, 1))
    assert (g.n, g.m) == (2, 1)


@settings(max_examples=80, deadline=None)
@given(graphs(8), st.randoms(use_true_random=False))
def test_contract_matches_networkx_and_stays_simple(g, rnd):
    if g.m == 0:
        return
    e = rnd.choice(g.sorted_edges())
    h = contract_edge(g, e)
    assert h.n == g.n - 1
    ref = nx.contracted_edge(to_nx(g), e, self_loops=False)
    ref = nx.Graph(ref)
    assert nx.is_isomorphic(to_nx(h), ref)
    assert all(u != v for u, v in h.edges)


def test_split_k4_vertex():
    g, w1, w2 = split_vertex(complete(4), 0, [1])
    assert (g.n, g.m) == (5, 6)
    assert not g.has_edge(w1, w2)


def test_split_path_middle_vertex():
    g, _, _ = split_vertex(path(3), 1, [2])
    assert g.m == 2 and len(g.components()) == 2


def test_degenerate_split_rejected():
    with pytest.raises(GraphError):
        split_vertex(complete(4), 0, [])
    with pytest.raises(GraphError):
        split_vertex(complete(4), 0, [1, 2, 3])
    with pytest.raises(GraphError):
        split_vertex(path(3), 0, [2])


@settings(max_examples=60, deadline=None)
@given(graphs(8), st.randoms(use_true_random=False))
def test_split_preserves_edge_count(g, rnd):
    cands = [v for v in g.vertices if g.degree(v) >= 2]
    if not cands:
        return
    w = rnd.choice(sorted(cands))
    nb = sorted(g.adj[w])
    part = rnd.sample(nb, rnd.randint(1, len(nb) - 1))
    h, _, _ = split_vertex(g, w, part)
    assert (h.n, h.m) == (g.n + 1, g.m)


# -- isomorphism and canonical form ---------------------------------------------------------


def test_known_isomorphisms():
    assert isomorphic(complete(4), wheel(3))
    assert not isomorphic(octahedron(), octahedron_minus())
    assert isomorphic(base_graph(), mycielski(cycle(3)))
    assert isomorphic(mycielski(path(2)), cycle(5))


def test_isomorphism_witness_preserves_adjacency():
    a, b = base_graph(), mycielski(cycle(3))
    ok, phi = is_isomorphic(a, b)
    assert ok
    assert {tuple(sorted((phi[u], phi[v]))) for u, v in a.edges} == set(b.edges)


def test_canonical_form_invariant_under_relabelings():
    rng = random.Random(20240611)
    corpus = [base_graph(), mycielski(cycle(5)), mycielski(cycle(7)), wheel(9), octahedron_minus()]
    for g in corpus:
        ref = canonical_form(g)
        for _ in range(200):
            vs = sorted(g.vertices)
            image = rng.sample(range(100), len(vs))
            assert canonical_form(g.relabel(dict(zip(vs, image)))) == ref


@settings(max_examples=150, deadline=None)
@given(graphs(7), graphs(7))
def test_isomorphism_agrees_with_networkx(a, b):
    assert isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


@pytest.mark.parametrize("g", [complete(4), cycle(6), octahedron(), base_graph(), path(4)])
def test_automorphism_group_size_matches_brute_force(g):
    assert len(automorphisms(g)) == sum(1 for _ in brute_automorphisms(g.vertices, g.edges))


# -- serialization ------------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(graphs(12))
def test_graph6_matches_networkx(g):
    s = to_graph6(g)
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert from_graph6(s) == g


def test_graph6_large_size_field():
    g = cycle(70)
    s = to_graph6(g)
    assert s[0] == "~"
    assert from_graph6(s) == g
    assert from_graph6(">>graph6<<" + s) == g


@pytest.mark.parametrize("bad", ["", "A~", "C", "B"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(GraphError):
        from_graph6(bad)


def test_json_round_trip_keeps_labels_and_handles():
    g = base_graph()
    h = graph_from_json(graph_to_json(g))
    assert h == g and h.labels == g.labels
    assert tuple(h.handles["thick"]) == tuple(g.handles["thick"])


def test_read_graph_accepts_both_forms():
    g = octahedron()
    assert read_graph(to_graph6(g))[0] == g
    import json

    assert read_graph(json.dumps({"graph": graph_to_json(g)}))[0] == g
    with pytest.raises(GraphError):
        read_graph("   ")


def test_dot_marks_roles_and_ghosts():
    text = to_dot(wheel(3), ghosts=[(1, 2)])
    assert 'fillcolor="orange"' in text
    assert "style=dashed" in text


def test_add_edge_rejects_duplicates():
    g = path(3)
    assert add_edge(g, 0, 2).m == 3
    with pytest.raises(GraphError):
        add_edge(g, 0, 1)


def test_all_triples_of_k4_are_triangles():
    g = complete(4)
    for a, b, c in itertools.combinations(g.vertices, 3):
        assert g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
