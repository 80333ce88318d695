import math
import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings

from dist2col import generators as gen
from dist2col.graph_core import (
    GraphValidationError,
    build_graph,
    delete_vertex,
    dist2_neighborhood,
    from_edges,
    girth,
    metrics,
    relabel,
    square_graph,
)

from .conftest import girth6_graphs, plane_graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_path_has_single_face_of_twice_the_edges():
    g = gen.path_graph(3)
    assert [f.length for f in g.faces] == [4]


def test_cycle_has_two_hexagonal_faces(c6):
    assert sorted(f.length for f in c6.faces) == [6, 6]


def test_subdivided_k4(k4s):
    assert (k4s.n, k4s.m) == (10, 12)
    assert [f.length for f in k4s.faces] == [6, 6, 6, 6]
    assert girth(k4s) == 6


def test_subdivided_spider_is_one_long_face():
    g = gen.subdivide(gen.star_graph(6))
    assert [f.length for f in g.faces] == [24]


def test_tree_girth_is_infinite():
    assert girth(gen.subdivide(gen.star_graph(4))) == math.inf
    assert girth(gen.path_graph(1)) == math.inf


def test_isolated_vertex_gets_an_empty_face():
    g = build_graph(None, [[]])
    assert len(g.faces) == 1 and g.faces[0].length == 0
    assert g.euler_characteristic() == 2


def test_dist2_neighborhoods(c6):
    p = gen.path_graph(3)
    assert dist2_neighborhood(p, 0) == {1, 2}
    assert dist2_neighborhood(c6, 0) == {1, 2, 4, 5}
    spider = gen.subdivide(gen.star_graph(6))
    assert dist2_neighborhood(spider, 0) == set(range(1, 13))
    with pytest.raises(KeyError):
        dist2_neighborhood(c6, 6)


def test_square_examples(c6):
    sq = square_graph(c6)
    assert all(len(s) == 4 for s in sq)
    assert all((v + 3) % 6 not in sq[v] for v in range(6))
    star = square_graph(gen.star_graph(6))
    assert all(len(s) == 6 for s in star)
    assert square_graph(gen.path_graph(2)) == (frozenset({1}), frozenset({0}))


def test_delete_vertex_examples(c6, k4s):
    p = delete_vertex(c6, 0)
    assert (p.n, p.m) == (5, 4)
    assert [f.length for f in p.faces] == [8]
    iso = delete_vertex(gen.star_graph(6), 0)
    assert iso.n == 6 and iso.m == 0
    two = next(v for v in range(k4s.n) if k4s.degrees[v] == 2)
    h = delete_vertex(k4s, two)
    assert (h.n, h.m, len(h.faces)) == (9, 10, 3)


def test_delete_vertex_keeps_labels():
    g = build_graph(None, [[1], [0, 2], [1]], labels=["a", "b", "c"])
    h = delete_vertex(g, 1)
    assert h.labels == ("a", "c")


@pytest.mark.parametrize(
    "rot, dart",
    [
        ([[1], []], (0, 1)),
        ([[0]], (0, 0)),
        ([[1, 1], [0]], (0, 1)),
        ([[5], [0]], (0, 5)),
    ],
)
def test_validation_names_the_dart(rot, dart):
    with pytest.raises(GraphValidationError) as e:
        build_graph(None, rot)
    assert e.value.dart == dart


def test_edge_list_must_match_rotations():
    rot = [[1, 2], [0, 2], [0, 1]]
    build_graph([(0, 1), (1, 2), (2, 0)], rot)
    with pytest.raises(GraphValidationError):
        build_graph([(0, 1), (1, 2)], rot)
    with pytest.raises(GraphValidationError):
        build_graph([(0, 1), (1, 2), (2, 0), (0, 1)], rot)


def test_wheel_embedding_is_plane():
    for k in range(3, 10):
        w = gen.wheel_graph(k)
        assert w.is_plane() and len(w.faces) == k + 1


def test_metrics_degree_sums(k4s):
    m = metrics(k4s)
    assert m.max_degree == 3
    for v in range(k4s.n):
        counts = m.neighbor_degree_counts[v]
        assert m.degree_sum[v] == sum(i * c for i, c in counts.items())


@settings(max_examples=150, deadline=None)
@given(plane_graphs())
def test_face_tracing_invariants(g):
    darts = Counter(d for f in g.faces for d in f.darts)
    assert sum(f.length for f in g.faces) == 2 * g.m
    assert len(darts) == 2 * g.m and set(darts.values()) <= {1}
    assert g.is_plane()


@settings(max_examples=150, deadline=None)
@given(plane_graphs())
def test_girth_and_square_match_networkx(g):
    h = to_nx(g)
    assert girth(g) == nx.girth(h)
    power = nx.power(h, 2) if g.n else nx.Graph()
    for v in range(g.n):
        assert set(g.square[v]) == set(power[v])
        assert set(dist2_neighborhood(g, v)) == set(nx.single_source_shortest_path_length(h, v, 2)) - {v}


@settings(max_examples=100, deadline=None)
@given(girth6_graphs())
def test_square_degree_equals_degree_sum_at_girth_six(g):
    for v in range(g.n):
        assert len(g.square[v]) == g.D(v)
        assert v not in g.square[v]
        assert all(v in g.square[u] for u in g.square[v])


@settings(max_examples=100, deadline=None)
@given(plane_graphs())
def test_delete_then_rebuild_is_deterministic(g):
    for v in range(g.n):
        h = delete_vertex(g, v)
        again = build_graph(h.edges, h.rotation)
        assert again.rotation == h.rotation
        assert [f.darts for f in again.faces] == [f.darts for f in h.faces]
        assert h.is_plane()


def test_relabel_preserves_faces():
    rng = random.Random(3)
    g = gen.subdivide(gen.wheel_graph(6))
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = relabel(g, perm)
    assert sorted(f.length for f in h.faces) == sorted(f.length for f in g.faces)
    assert h.girth == g.girth


def test_from_edges_is_not_embedded():
    g = from_edges(3, [(0, 1), (1, 2)])
    assert not g.embedded and g.m == 2
