import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jcmap.graph import (
    CitationGraph,
    clean,
    connected_components,
    extract_subnetwork,
    filter_min_weight,
    largest_component,
    remove_loops,
    symmetrize,
)
from jcmap.partition import Partition

from oracles import bfs_connected, random_citation


def cg(n, arcs):
    return CitationGraph(tuple(f"J{i}" for i in range(1, n + 1)), tuple(arcs))


@st.composite
def citation_graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = draw(
        st.sets(st.tuples(st.integers(1, max(n, 1)), st.integers(1, max(n, 1))), max_size=40)
    ) if n else set()
    arcs = [(s, t, draw(st.integers(1, 9))) for s, t in sorted(pairs)]
    return cg(n, arcs)


def test_remove_loops_examples():
    g, k = remove_loops(cg(2, [(1, 1, 5), (1, 2, 3)]))
    assert g.arcs == ((1, 2, 3),) and k == 1
    same, k = remove_loops(g)
    assert same == g and k == 0


def test_filter_min_weight_examples():
    g = cg(3, [(1, 2, 4), (2, 3, 5)])
    assert filter_min_weight(g, 1) == (g, 0)
    out, k = filter_min_weight(g, 5)
    assert out.arcs == ((2, 3, 5),) and k == 1 and out.n == 3
    with pytest.raises(ValueError):
        filter_min_weight(g, 0)


def test_symmetrize_examples():
    s = symmetrize(cg(2, [(1, 2, 3), (2, 1, 4)]))
    assert s.edges == ((1, 2, 7),) and s.m == 7 and s.degree == (7, 7)
    assert symmetrize(cg(2, [(1, 2, 3)])).edges == ((1, 2, 3),)
    cyc = symmetrize(cg(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)]))
    assert cyc.edges == ((1, 2, 1), (1, 3, 1), (2, 3, 1)) and cyc.m == 3


def test_symmetrize_rejects_loops():
    with pytest.raises(ValueError):
        symmetrize(cg(1, [(1, 1, 2)]))


def test_largest_component_examples():
    tri = cg(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)])
    sub, members = largest_component(tri)
    assert sub == tri and members == [1, 2, 3]
    withiso = cg(4, [(1, 2, 1), (2, 3, 1), (3, 1, 1)])
    sub, members = largest_component(withiso)
    assert members == [1, 2, 3] and sub.n == 3
    empty = cg(0, [])
    assert largest_component(empty) == (empty, [])


def test_largest_component_tie_goes_to_smallest_id():
    g = cg(4, [(4, 3, 1), (2, 1, 1)])
    sub, members = largest_component(g)
    assert members == [1, 2]


def test_weak_connectivity():
    g = cg(3, [(1, 2, 1), (3, 2, 1)])
    assert connected_components(g) == [[1, 2, 3]]


def test_renumbering_keeps_origin_and_labels():
    g = cg(5, [(2, 4, 1), (4, 5, 2)])
    sub, members = largest_component(g)
    assert members == [2, 4, 5]
    assert sub.labels == ("J2", "J4", "J5") and sub.origin == (2, 4, 5)
    assert sub.arcs == ((1, 2, 1), (2, 3, 2))
    again, _ = largest_component(sub)
    assert again.origin == (2, 4, 5)


def test_extract_subnetwork_examples():
    tris = cg(6, [(1, 2, 1), (2, 3, 1), (3, 1, 1), (4, 5, 2), (5, 6, 2), (6, 4, 2)])
    assert extract_subnetwork(tris, Partition.single(6), 1) == tris
    p = Partition.from_labels([1, 1, 1, 2, 2, 2])
    sub = extract_subnetwork(tris, p, 2)
    assert sub.labels == ("J4", "J5", "J6") and sub.arcs == ((1, 2, 2), (2, 3, 2), (3, 1, 2))
    with pytest.raises(KeyError, match="3"):
        extract_subnetwork(tris, p, 3)


def test_duplicate_arcs_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        cg(2, [(1, 2, 1), (1, 2, 3)])


def test_clean_report():
    g = cg(4, [(1, 1, 3), (1, 2, 2), (2, 3, 7), (3, 3, 1)])
    out, rep = clean(g, min_weight=5)
    assert rep.loops_removed == 2 and rep.arcs_removed_by_threshold == 1
    assert rep.nodes_isolated_after_cleaning == 2
    assert out.arcs == ((2, 3, 7),)


@settings(max_examples=60, deadline=None)
@given(citation_graphs(), st.integers(1, 10))
def test_idempotence(g, t):
    once, _ = remove_loops(g)
    assert remove_loops(once)[0] == once
    f1, _ = filter_min_weight(g, t)
    assert filter_min_weight(f1, t) == (f1, 0)
    c1, _ = largest_component(g)
    assert largest_component(c1)[0] == c1


@settings(max_examples=60, deadline=None)
@given(citation_graphs())
def test_symmetrize_preserves_weight_and_degree_sum(g):
    g, _ = remove_loops(g)
    s = symmetrize(g)
    assert s.m == g.total_weight
    assert sum(s.degree) == pytest.approx(2 * s.m)


@settings(max_examples=60, deadline=None)
@given(citation_graphs())
def test_largest_component_is_connected(g):
    sub, _ = largest_component(g)
    assert bfs_connected(sub)


def test_union_of_extracted_clusters_covers_graph():
    rnd = random.Random(3)
    for _ in range(20):
        g = random_citation(rnd, 15, 0.15)
        labels = [rnd.randint(1, 4) for _ in range(g.n)]
        p = Partition.from_labels(labels)
        subs = [extract_subnetwork(g, p, c) for c in range(1, p.n_clusters + 1)]
        assert sum(s.n for s in subs) == g.n
        assert sorted(o for s in subs for o in s.origin) == list(range(1, g.n + 1))
