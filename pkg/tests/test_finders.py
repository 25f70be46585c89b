from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from monocycle.constructions import example1
from monocycle.finders import (
    Status,
    bagga_varma_bipancyclic,
    bagga_varma_condition,
    berge_condition,
    berge_ham_path,
    bondy_pancyclic,
    chvatal_condition,
    chvatal_hamiltonian,
    connected_matching,
    dense_even_cycles,
    dense_even_window,
    hall_matching,
    jackson_cycle,
    maximum_matching,
    ore_condition,
    verify_matching,
)
from monocycle.graph import BipartiteView, Color, GraphError, SimpleGraph, build, verify_cycle, verify_path
from oracles import cycle_length_set, hall_condition_holds, max_matching_size
from strategies import colored_graphs

R, B = Color.RED, Color.BLUE


def red_bipartite(xs, ys, pairs):
    n = len(xs) + len(ys)
    return BipartiteView(build(n, [(x, y, "R") for x, y in pairs]), xs, ys, R)


def complete_bipartite_view(a, b):
    xs, ys = tuple(range(a)), tuple(range(a, a + b))
    return red_bipartite(xs, ys, [(x, y) for x in xs for y in ys])


def simple(n, edges):
    return SimpleGraph.from_edges(n, edges)


# -- Hall --------------------------------------------------------------------


def test_hall_complete():
    res = hall_matching(complete_bipartite_view(3, 5))
    assert res.saturating and res.matching.size == 3


def test_hall_violator_pigeonhole():
    view = red_bipartite((0, 1), (2, 3, 4), [(0, 2), (1, 2)])
    res = hall_matching(view)
    assert not res.saturating and set(res.violator) == {0, 1}


def test_hall_rejects_large_x():
    with pytest.raises(GraphError):
        hall_matching(complete_bipartite_view(3, 2))


@given(st.integers(1, 5), st.integers(0, 3), st.data())
def test_hall_matches_subset_oracle(a, extra, data):
    xs, ys = tuple(range(a)), tuple(range(a, 2 * a + extra))
    pairs = [(x, y) for x in xs for y in ys if data.draw(st.booleans())]
    view = red_bipartite(xs, ys, pairs)
    res = hall_matching(view)
    nbrs = {x: {y for (u, y) in pairs if u == x} for x in xs}
    assert res.saturating == hall_condition_holds(xs, nbrs)
    assert verify_matching(view.graph, res.matching)
    if not res.saturating:
        S = set(res.violator)
        assert len(set().union(*(nbrs[x] for x in S))) < len(S)


# -- Chvátal -----------------------------------------------------------------


def test_chvatal_k5():
    out = chvatal_hamiltonian(SimpleGraph.complete(5))
    assert out.found and out.certificates[5].length == 5


def test_chvatal_hand_construction():
    # v4, v5 universal plus the edge v2v3: degrees (2,3,3,4,4)
    edges = [(3, v) for v in range(5) if v != 3] + [(4, v) for v in range(3)] + [(1, 2)]
    g = simple(5, edges)
    assert sorted(g.degrees()) == [2, 3, 3, 4, 4]
    assert chvatal_condition(g.degrees())
    assert chvatal_hamiltonian(g).found
    assert 5 in cycle_length_set(5, edges)


def test_chvatal_c5_condition_fails_but_found():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    pre = chvatal_condition([2] * 5)
    assert not pre and pre.witness == 2
    out = chvatal_hamiltonian(simple(5, edges))
    assert out.found and not out.precondition


def test_chvatal_small_n_error():
    with pytest.raises(GraphError):
        chvatal_hamiltonian(SimpleGraph.complete(2))


def _chvatal_direct(degrees):
    d = sorted(degrees)
    n = len(d)
    return all(not (d[k - 1] <= k and d[n - k - 1] < n - k) for k in range(1, n) if k < n / 2)


@given(colored_graphs(max_n=11))
def test_chvatal_validator_agrees_with_direct_recomputation(g):
    degs = [g.degree(v, R) for v in range(g.n)]
    assert bool(chvatal_condition(degs)) == _chvatal_direct(degs)


# -- Bondy -------------------------------------------------------------------


def test_bondy_k6():
    out = bondy_pancyclic(SimpleGraph.complete(6))
    assert out.found and sorted(out.certificates) == [3, 4, 5, 6]


def test_bondy_k33_exceptional():
    out = bondy_pancyclic(SimpleGraph.complete_bipartite(3, 3))
    assert out.status is Status.EXCEPTIONAL


def test_bondy_precondition_failure_names_pair():
    out = bondy_pancyclic(simple(4, [(0, 1), (1, 2), (2, 3)]))
    assert out.status is Status.PRECONDITION_FAILED and len(out.precondition.witness) == 2


@given(colored_graphs(max_n=11))
def test_ore_validator_agrees_with_all_pairs_scan(g):
    view = g.underlying()
    n = g.n
    direct = all(
        view.has_edge(u, v) or view.degree(u) + view.degree(v) >= n for u, v in combinations(range(n), 2)
    )
    assert bool(ore_condition(view)) == direct


# -- Bagga-Varma -------------------------------------------------------------


def test_bagga_varma_k44():
    out = bagga_varma_bipancyclic(complete_bipartite_view(4, 4))
    assert sorted(out.certificates) == [4, 6, 8]


def test_bagga_varma_k44_minus_perfect_matching():
    xs, ys = (0, 1, 2, 3), (4, 5, 6, 7)
    pairs = [(x, y) for x in xs for y in ys if y - 4 != x]
    view = red_bipartite(xs, ys, pairs)
    assert bagga_varma_condition(view)
    out = bagga_varma_bipancyclic(view)
    assert sorted(out.certificates) == [4, 6, 8]
    assert cycle_length_set(8, pairs) == {4, 6, 8}  # oracle agreement


def test_bagga_varma_guards():
    with pytest.raises(GraphError):
        bagga_varma_bipancyclic(complete_bipartite_view(3, 4))
    assert bagga_varma_condition(complete_bipartite_view(3, 3)).witness == "small"


# -- Berge -------------------------------------------------------------------


def test_berge_k33():
    out = berge_ham_path(complete_bipartite_view(3, 3), 0, 3)
    cert = out.certificates[5]
    assert cert.endpoints == (0, 3) and cert.length == 5
    assert verify_path(complete_bipartite_view(3, 3).graph, cert)


def test_berge_k22():
    cert = berge_ham_path(complete_bipartite_view(2, 2), 0, 2).certificates[3]
    assert cert.vertices == (0, 3, 1, 2)


def test_berge_same_side_error():
    with pytest.raises(GraphError):
        berge_ham_path(complete_bipartite_view(3, 3), 0, 1)


# -- Jackson -----------------------------------------------------------------


def test_jackson_examples():
    assert jackson_cycle(complete_bipartite_view(2, 3), 3).certificates[4].length == 4
    out = jackson_cycle(complete_bipartite_view(3, 4), 4)
    assert out.found and 6 in out.certificates


def test_jackson_precondition_names_parameter():
    out = jackson_cycle(complete_bipartite_view(2, 5), 3)
    assert out.status is Status.PRECONDITION_FAILED and out.precondition.witness == "Y"


# -- Bondy-Simonovits ----------------------------------------------------------


def test_dense_even_k6():
    out = dense_even_cycles(SimpleGraph.complete(6), 1)
    assert out.status is Status.PRECONDITION_FAILED
    forced = dense_even_cycles(SimpleGraph.complete(6), 1, force=True)
    assert sorted(forced.certificates) == [4, 6]
    assert dense_even_window(6, 1) == [4, 6]


# -- matchings ---------------------------------------------------------------


def test_connected_matching_examples():
    g = example1(2, 0).graph
    red = connected_matching(g, R)
    assert red.component == frozenset(range(6)) and red.matching.size == 2
    blue = connected_matching(g, B)
    assert len(blue.component) == 4 and blue.matching.size == 2
    k6 = build(6, [(u, v, "R") for u in range(6) for v in range(u + 1, 6)])
    assert connected_matching(k6, R).matching.size == 3
    assert connected_matching(k6, B).matching.size == 0


@given(colored_graphs(max_n=9, tokens=("-", "-", "R", "B")))
@settings(max_examples=80)
def test_maximum_matching_matches_exhaustive(g):
    for c in (R, B):
        edges = [(u, v) for u, v, cs in g.edges() if c in cs]
        m = maximum_matching(SimpleGraph.from_edges(g.n, edges, c))
        assert m.size == max_matching_size(edges)
        assert verify_matching(g, m)


@given(colored_graphs(max_n=12))
@settings(max_examples=40)
def test_found_certificates_always_verify(g):
    for c in (R, B):
        view = SimpleGraph(g.n, g.adj(c), c)
        for out in (bondy_pancyclic(view), dense_even_cycles(view, 2, force=True)):
            for cert in out.certificates.values():
                assert verify_cycle(g, cert)
        if g.n >= 3:
            out = chvatal_hamiltonian(view)
            for cert in out.certificates.values():
                assert verify_cycle(g, cert)
