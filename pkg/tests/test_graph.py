import pytest
from hypothesis import given, strategies as st

from monocycle.constructions import example1
from monocycle.graph import (
    BipartiteView,
    Color,
    CycleCertificate,
    GraphError,
    PathCertificate,
    SimpleGraph,
    build,
    from_masks,
    monochrome_view,
    verify_cycle,
    verify_path,
)
from strategies import colored_graphs

R, B = Color.RED, Color.BLUE


def test_swap_is_an_involution():
    for c in (R, B):
        assert c.swap().swap() is c
        assert c.swap() is not c


def test_color_parse_accepts_tokens_and_labels():
    assert Color.parse("R") is R
    assert Color.parse("blue") is B
    with pytest.raises(GraphError):
        Color.parse("green")


def test_dual_edge_lies_in_both_relations():
    g = build(3, [(0, 1, "RB"), (1, 2, "R")])
    assert g.has_edge(0, 1, R) and g.has_edge(0, 1, B)
    assert g.colors_of(0, 1) == {R, B}
    assert g.has_edge(1, 2, R) and not g.has_edge(1, 2, B)


def test_repeated_pairs_merge_colorsets():
    g = build(2, [(0, 1, "R"), (1, 0, "B")])
    assert g.colors_of(0, 1) == {R, B}


@pytest.mark.parametrize("edges", [[(0, 0, "R")], [(0, 5, "R")], [(0, 1, "G")], [(0, 1, [])]])
def test_build_rejects_bad_input(edges):
    with pytest.raises(GraphError):
        build(3, edges)


def test_from_masks_rejects_asymmetry():
    with pytest.raises(GraphError):
        from_masks(2, [0b10, 0], [0, 0])


def test_example1_red_view_is_complete_bipartite():
    inst = example1(2, 0)
    red = monochrome_view(inst.graph, R)
    U1, U2 = inst.params["parts"]["U1"], inst.params["parts"]["U2"]
    expected = {(min(u, v), max(u, v)) for u in U1 for v in U2}
    assert set(red.edges()) == expected


def test_deficiency_in_k33_minus_perfect_matching():
    edges = [(x, y, "R") for x in range(3) for y in range(3, 6) if y - 3 != x]
    view = BipartiteView(build(6, edges), (0, 1, 2), (3, 4, 5), R)
    assert all(view.deficiency(v) == 1 for v in range(6))
    assert view.max_deficiency() == 1


def test_bipartite_view_needs_disjoint_parts():
    with pytest.raises(GraphError):
        BipartiteView(build(3, []), (0, 1), (1, 2), R)


def test_verify_cycle_reason_codes():
    g = build(4, [(0, 1, "R"), (1, 2, "R"), (2, 0, "B"), (2, 3, "R")])
    assert verify_cycle(g, CycleCertificate((0, 1), R)).reason == "short"
    assert verify_cycle(g, CycleCertificate((0, 1, 9), R)).reason == "range"
    assert verify_cycle(g, CycleCertificate((0, 1, 1), R)).reason == "repeat"
    assert verify_cycle(g, CycleCertificate((0, 1, 2), R)).reason == "color"
    assert verify_cycle(g, CycleCertificate((0, 1, 3), R)).reason == "missing"
    assert verify_cycle(g, CycleCertificate((0, 1, 2), None)).reason == "color"
    g2 = g.with_edge(0, 2, R)
    assert verify_cycle(g2, CycleCertificate((0, 1, 2), R))


def test_verify_path():
    g = build(4, [(0, 1, "R"), (1, 2, "R"), (2, 3, "B")])
    assert verify_path(g, PathCertificate((0, 1, 2), R))
    assert PathCertificate((0, 1, 2), R).length == 2
    assert verify_path(g, PathCertificate((0, 1, 2, 3), R)).reason == "color"
    assert verify_path(g, PathCertificate((), R)).reason == "short"


def test_canonical_rotation():
    c = CycleCertificate((3, 1, 2, 0))
    assert c.canonical() == (0, 2, 1, 3)
    assert CycleCertificate((0, 3, 1, 2)).canonical() == (0, 2, 1, 3)


def test_simple_graph_helpers():
    k4 = SimpleGraph.complete(4)
    assert k4.edge_count() == 6
    assert k4.without_edge(0, 1).edge_count() == 5
    assert SimpleGraph.complete_bipartite(2, 3).edge_count() == 6


@given(colored_graphs(max_n=9))
def test_relations_are_symmetric_and_loopless(g):
    for c in (R, B):
        adj = g.adj(c)
        for v in range(g.n):
            assert not adj[v] >> v & 1
            for w in range(g.n):
                assert bool(adj[v] >> w & 1) == bool(adj[w] >> v & 1)


@given(colored_graphs(max_n=9))
def test_underlying_edges_are_union_of_colors(g):
    und = {(u, v) for u, v in g.underlying().edges()}
    union = {(u, v) for c in (R, B) for u, v in monochrome_view(g, c).edges()}
    assert und == union


@given(colored_graphs(max_n=8), st.randoms(use_true_random=False))
def test_relabel_preserves_colorsets(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    for u, v, cs in g.edges():
        assert h.colors_of(perm[u], perm[v]) == cs
    assert h.edge_count() == g.edge_count()


@given(colored_graphs(max_n=8))
def test_swap_colors_exchanges_relations(g):
    s = g.swap_colors()
    assert s.red == g.blue and s.blue == g.red
