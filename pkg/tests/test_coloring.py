import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings

from dist2col import coloring as co
from dist2col import generators as gen
from dist2col import structure as st
from dist2col.graph_core import delete_vertex, from_edges
from dist2col.instances import random_instance, sample_colorings

from .conftest import girth6_graphs, plane_graphs


def canonical_colorings(g, k):
    """Every proper k-coloring of the square up to renaming colors (first-use order)."""
    n = g.n
    col = [0] * n

    def rec(v, used):
        if v == n:
            yield dict(enumerate(col))
            return
        for c in range(1, min(used + 1, k) + 1):
            if all(col[u] != c for u in g.square[v] if u < v):
                col[v] = c
                yield from rec(v + 1, max(used, c))
        col[v] = 0

    yield from rec(0, 0)


def test_available_colors_examples(c6):
    c = co.Coloring({0: 1, 1: 2}, 3)
    assert co.available_colors(c6, c, 2) == {3}
    assert co.available_colors(c6, co.Coloring({}, 7), 4) == set(range(1, 8))


def test_two_vertex_keeps_two_colors():
    # 2-vertex u between a 6-vertex and a 2-vertex on the other side
    g = gen.raise_degree(gen.path_graph(4), 0, 6)
    u = 1
    delta = g.max_degree
    c = co.random_coloring(delete_vertex(g, u), delta + 4, random.Random(0))
    lifted = co.lift_coloring(c, u)
    # the far neighbours of u are 2 apart only through u, so drop one to stay proper
    lifted.assignment.pop(2)
    assert len(co.available_colors(g, lifted, u)) >= 2


def test_is_valid_examples(c6):
    assert co.is_valid(c6, co.Coloring(dict(enumerate([1, 2, 3, 1, 2, 3])), 3), require_total=True)
    star = gen.star_graph(6)
    c = co.Coloring({0: 1, 1: 2, 2: 2}, 7)
    assert not co.is_valid(star, c)
    assert co.is_valid(star, co.Coloring({}, 7))
    assert not co.is_valid(star, co.Coloring({}, 7), require_total=True)
    assert not co.is_valid(c6, co.Coloring({0: 4}, 3))


def test_first_conflict_reports_distance(c6):
    c = co.Coloring(dict(enumerate([1, 2, 1, 3, 2, 3])), 3)
    assert co.first_conflict(c6, c) == (0, 2, 2)
    c = co.Coloring({0: 1, 1: 1}, 3)
    assert co.first_conflict(c6, c) == (0, 1, 1)


def test_recolor_chain_examples(c6):
    c = co.Coloring({0: 1, 1: 2}, 3)
    assert co.recolor_chain(c6, c, []) == c
    out = co.recolor_chain(c6, c, [2])
    assert out.assignment[2] == 3 and 2 not in c.assignment


def test_recolor_chain_reports_stuck_vertex():
    # leaf x of a 6-star gets four extra pendants: N2(x) has 10 = delta + 4 vertices
    g = gen.raise_degree(gen.star_graph(6), 1, 5)
    x = 1
    ball = nx.single_source_shortest_path_length(
        nx.Graph(list(g.edges)), x, cutoff=2
    )
    others = sorted(v for v in ball if v != x)
    assert len(others) == 10
    c = co.Coloring({v: i + 1 for i, v in enumerate(others)}, 10)
    with pytest.raises(co.ScriptStuck) as e:
        co.recolor_chain(g, c, [x])
    assert e.value.vertex == x and e.value.forbidden == set(range(1, 11))


def test_adj2_on_nine_cycle_every_coloring():
    g = gen.cycle_graph(9)
    w = st.find_reducible(g, 2)
    assert w.procedure_id == st.ADJ2
    h = delete_vertex(g, w.deletion_vertex)
    seen = 0
    for cols in canonical_colorings(h, 6):
        for perm in (None, [6, 5, 4, 3, 2, 1]):
            a = cols if perm is None else {v: perm[c - 1] for v, c in cols.items()}
            out = co.apply_extension(g, co.Coloring(a, 6), w)
            assert co.is_valid(g, out, require_total=True)
            seen += 1
    assert seen > 100


def test_deg3_lowd_on_subdivided_k4_every_coloring(k4s):
    w = st.find_reducible(k4s, 3)
    assert w.procedure_id == st.DEG3_LOWD
    h = delete_vertex(k4s, w.deletion_vertex)
    rng = random.Random(0)
    count = 0
    for cols in canonical_colorings(h, 7):
        for _ in range(10):
            perm = rng.sample(range(1, 8), 7)
            c = co.Coloring({v: perm[x - 1] for v, x in cols.items()}, 7)
            out = co.apply_extension(k4s, c, w)
            assert co.is_valid(k4s, out, require_total=True)
        count += 1
    assert count > 100


def test_two_next_to_three_colors_the_vertex():
    inst = random_instance(random.Random(4), st.TWO_NEXT_TO_THREE)
    for c in sample_colorings(random.Random(5), inst, 30):
        trace = []
        out = co.apply_extension(inst.graph, c, inst.witness, trace)
        assert co.is_valid(inst.graph, out, require_total=True)
        assert trace[0][2] <= inst.delta + 3


def test_two_next_to_three_rejects_improper_lift():
    # u between a 3-vertex and a leaf side; color the two ends of u alike in G - u
    g = gen.raise_degree(gen.path_graph(3), 0, 3)
    u = 1
    w = st.ConfigurationWitness(st.TWO_NEXT_TO_THREE, u, {"u": u, "x": 0})
    assert st.validate_witness(g, 3, w)
    h = delete_vertex(g, u)
    c = co.random_coloring(h, 7, random.Random(0), {0: 1, 1: 1})
    with pytest.raises(co.ColoringError):
        co.apply_extension(g, c, w)


def test_apply_extension_checks_inputs(k4s):
    w = st.find_reducible(k4s, 3)
    with pytest.raises(co.ColoringError):
        co.apply_extension(k4s, co.Coloring({0: 1}, 7), w)
    bogus = st.ConfigurationWitness(st.ADJ2, w.deletion_vertex, {"u": w.deletion_vertex, "v": 0, "w": 1, "z": 2})
    h = delete_vertex(k4s, w.deletion_vertex)
    with pytest.raises(co.ColoringError):
        co.apply_extension(k4s, co.random_coloring(h, 7, random.Random(0)), bogus)


def test_exact_chi2_examples(c6, k4s):
    assert co.exact_chi2(c6)[0] == 3
    assert co.exact_chi2(gen.star_graph(6))[0] == 7
    k, c = co.exact_chi2(k4s)
    assert k == co.brute_force_chi2(k4s)
    assert co.is_valid(k4s, c, require_total=True) and c.colors_used() == k


def test_exact_chi2_budget():
    g = gen.cycle_graph(7)  # square has clique number 3 but needs 4 colors
    with pytest.raises(co.SearchBudgetExceeded) as e:
        co.exact_chi2(g, budget_ms=0)
    assert e.value.lower <= e.value.upper
    assert co.is_valid(g, e.value.coloring, require_total=True)


def test_brute_force_examples():
    assert co.brute_force_chi2(gen.path_graph(1)) == 1
    assert co.brute_force_chi2(gen.path_graph(2)) == 2
    assert co.brute_force_chi2(gen.path_graph(4)) == 3
    assert co.brute_force_chi2(build_empty()) == 0
    with pytest.raises(ValueError):
        co.brute_force_chi2(gen.path_graph(13))


def build_empty():
    return from_edges(0, [])


def test_constructive_rejects_small_delta(k4s):
    with pytest.raises(co.HypothesisError):
        co.constructive_color(k4s)
    with pytest.raises(co.HypothesisError):
        co.constructive_color(gen.wheel_graph(6))  # girth 3


def test_constructive_on_subdivided_wheel():
    g = gen.subdivide(gen.wheel_graph(6))
    assert (g.n, g.girth, g.max_degree) == (19, 6, 6)
    c = co.constructive_color(g)
    assert co.is_valid(g, c, require_total=True)
    assert c.colors_used() <= 10 and c.palette_size == 10
    assert co.exact_chi2(g)[0] <= c.colors_used()


def test_constructive_on_hex_patch_with_six_vertex():
    g = gen.hex_patch(3, hub_pendants=3, pendant_length=2)
    assert g.max_degree == 6 and g.girth == 6
    run = co.constructive_run(g)
    assert co.is_valid(g, run.coloring, require_total=True)
    assert run.coloring.colors_used() <= 10
    assert run.fallbacks == 0


def test_constructive_override_allows_small_delta(k4s):
    run = co.constructive_run(k4s, override_hypothesis=True)
    assert co.is_valid(k4s, run.coloring, require_total=True)
    assert run.coloring.palette_size == 7


@settings(max_examples=120, deadline=None)
@given(plane_graphs(max_n=9))
def test_exact_matches_oracle_and_bounds(g):
    k, c = co.exact_chi2(g)
    assert k == co.brute_force_chi2(g)
    assert co.is_valid(g, c, require_total=True)
    assert k >= g.max_degree + 1
    for v in range(g.n):
        assert co.brute_force_chi2(delete_vertex(g, v)) <= k


@settings(max_examples=60, deadline=None)
@given(girth6_graphs())
def test_constructive_soundness(g):
    if g.max_degree < 6:
        return
    run = co.constructive_run(g)
    assert co.is_valid(g, run.coloring, require_total=True)
    assert run.coloring.colors_used() <= g.max_degree + 4


def test_random_coloring_respects_precoloring(c6):
    c = co.random_coloring(c6, 4, random.Random(2), {0: 3})
    assert c.assignment[0] == 3 and co.is_valid(c6, c, require_total=True)
    assert co.random_coloring(c6, 2, random.Random(2)) is None


def test_canonical_enumeration_matches_count_of_small_square():
    # P3 square is a triangle: 3 colors, exactly one partition
    assert len(list(canonical_colorings(gen.path_graph(3), 3))) == 1
    assert list(itertools.islice(canonical_colorings(gen.path_graph(3), 2), 1)) == []
