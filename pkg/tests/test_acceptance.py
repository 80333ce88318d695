"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import networkx as nx
import pytest

from dist2col import coloring as co
from dist2col import discharging as dc
from dist2col import formats as fm
from dist2col import generators as gen
from dist2col import harness as hs
from dist2col import structure as st
from dist2col.graph_core import from_edges
from dist2col.instances import grow_tree, iter_instances, sample_colorings

from .conftest import ACCEPTANCE_LINES

CORPUS_SIZE = 600
INSTANCES_PER_PROCEDURE = 50
COLORINGS_PER_INSTANCE = 200


def report(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    return list(hs.generate_corpus("all", CORPUS_SIZE, seed=2024))


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def distance_two_pairs(h):
    """Pairs at distance 1 or 2, computed by networkx."""
    return [(a, b) for a, b in nx.power(h, 2).edges()] if h.number_of_nodes() else []


# -- 1 -----------------------------------------------------------------------


def connected_graphs_up_to_8():
    """Every connected graph on at most 8 vertices, one per isomorphism class.

    Up to 7 vertices this is the networkx atlas. Every connected 8-vertex graph
    has a vertex whose removal leaves it connected, so adding a vertex to each
    connected 7-vertex graph in every possible way and removing isomorphic
    copies reaches them all.
    """
    atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() and nx.is_connected(g)]
    eight = []
    buckets = {}
    for base in (g for g in atlas if g.number_of_nodes() == 7):
        for mask in range(1, 128):
            h = base.copy()
            h.add_edges_from((7, i) for i in range(7) if mask >> i & 1)
            key = (
                tuple(sorted(d for _, d in h.degree())),
                nx.weisfeiler_lehman_graph_hash(h, iterations=3),
            )
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(h, r) for r in bucket):
                continue
            bucket.append(h)
            eight.append(h)
    return atlas, eight


def test_criterion_1_exact_matches_brute_force():
    t0 = time.perf_counter()
    atlas, eight = connected_graphs_up_to_8()
    # known counts of connected graphs on 1..8 vertices
    assert len(eight) == 11117
    assert len(atlas) == 1 + 1 + 2 + 6 + 21 + 112 + 853
    mismatches = []
    for h in atlas + eight:
        g = from_edges(h.number_of_nodes(), list(h.edges()))
        k, c = co.exact_chi2(g)
        if k != co.brute_force_chi2(g) or not co.is_valid(g, c, require_total=True):
            mismatches.append(sorted(h.edges()))
    total = len(atlas) + len(eight)
    report(
        1, "exact_chi2 == brute_force_chi2", not mismatches,
        f"{total} connected graphs, {len(mismatches)} mismatches, {time.perf_counter() - t0:.0f}s",
    )


# -- 2 -----------------------------------------------------------------------


def test_criterion_2_bound_sweep(corpus):
    t0 = time.perf_counter()
    summary, results = hs.run_sweep(corpus, hs.SweepConfig(budget_ms=60000))
    bad = list(summary.anomalies)
    for rec, (_, g) in zip(results, corpus):
        assert g.girth >= 6 and g.max_degree >= 6 and g.n <= 26
        # independent re-check of the stored coloring
        col = rec.coloring
        if col is None or any(col[a] == col[b] for a, b in distance_two_pairs(nx_graph(g))):
            bad.append(rec.id)
            continue
        best = rec.chi2 if rec.chi2 is not None else len(set(col))
        if best > g.max_degree + 4:
            bad.append(rec.id)
    report(
        2, "chi2 <= delta + 4 over the corpus", not bad and summary.processed >= 500,
        f"{summary.processed} graphs, {summary.bounded_only} bounded-only, "
        f"max chi2 - delta = {summary.max_excess}, {len(bad)} anomalies, {time.perf_counter() - t0:.0f}s",
    )


# -- 3 -----------------------------------------------------------------------


def test_criterion_3_charge_conservation(corpus):
    t0 = time.perf_counter()
    failures = []
    runs = 0
    for rec, g in corpus:
        case = dc.case_for(g)
        led = dc.discharge(g, case)
        runs += 1
        if any(total != -12 for _, total in led.phase_totals) or len(led.phase_totals) != 8:
            failures.append(rec.id)
            continue
        # replay the transfers over hand-computed initial charges
        vc = {v: Fraction(2 * g.degrees[v] - 6) for v in range(g.n)}
        fc = {j: Fraction(f.length - 6) for j, f in enumerate(g.faces)}
        for t in led.transfers:
            src = vc if t.source[0] == "v" else fc
            dst = vc if t.target[0] == "v" else fc
            src[t.source[1]] -= t.amount
            dst[t.target[1]] += t.amount
        replay_ok = [vc[v] for v in range(g.n)] == led.vertex_charge and [
            fc[j] for j in range(len(g.faces))
        ] == led.face_charge
        if not replay_ok or sum(vc.values()) + sum(fc.values()) != -12:
            failures.append(rec.id)
    report(
        3, "total charge is -12 at every phase boundary", not failures,
        f"{runs} rule-set runs, {len(failures)} failures, {time.perf_counter() - t0:.1f}s",
    )


# -- 4 and 5 -----------------------------------------------------------------


def claimed_bound(pid, role, delta, g, cast):
    """Forbidden-color counts claimed by the correctness arguments."""
    d = delta
    if role.startswith("t"):
        return d + 3
    table = {
        st.DEG1: {"u": d},
        st.ADJ2: {"v": d + 1, "u": d + 2},
        st.TWO_NEXT_TO_THREE: {"u": d + 3},
        st.DEG3_LOWD: {"v": d + 3, "u": d + 3},
        st.DEG3_31CHAIN: {"v": d + 3, "u": d + 3},
        st.DEG4_LOWD: {"v": d + 3, "u": d + 3},
        st.DEG4_31: {"v": d + 3, "u": d + 3},
        st.DEG4_THREE31: {"u": d + 3, "v": 8},
        st.SPECIAL_D6_TYPE12: {"v": 9, "u1": 9, "u2": 9},
        st.SPECIAL_D6_TYPE34: {"v": 9, "u": 9},
        st.TYPE2_54: {"u": d + 3, "v": d + 3, "w": 10},
    }
    if pid == st.SPECIAL_D7:
        if role == "v" and st.special_type(g, cast["v"]) == st.TYPE_IV:
            return 10
        return d + 3
    return table[pid][role]


@pytest.fixture(scope="module")
def extension_runs():
    """Run every procedure over its instances; shared by criteria 4 and 5."""
    rng = random.Random(4)
    out = {}
    for pid in sorted(co.CATALOG):
        stats = {"instances": 0, "colorings": 0, "stuck": 0, "invalid": 0, "violations": [], "slack": None}
        for inst in iter_instances(rng, pid, INSTANCES_PER_PROCEDURE):
            g, w, delta = inst.graph, inst.witness, inst.delta
            pairs = distance_two_pairs(nx_graph(g))
            stats["instances"] += 1
            for c in sample_colorings(rng, inst, COLORINGS_PER_INSTANCE):
                stats["colorings"] += 1
                trace = []
                try:
                    res = co.apply_extension(g, c, w, trace)
                except co.ScriptStuck:
                    stats["stuck"] += 1
                    continue
                a = res.assignment
                ok = co.is_valid(g, res, require_total=True)
                ok_nx = len(a) == g.n and all(a[x] != a[y] for x, y in pairs)
                ok_nx = ok_nx and all(1 <= col <= delta + 4 for col in a.values())
                if not (ok and ok_nx):
                    stats["invalid"] += 1
                for role, v, n_forb, bound in trace:
                    claim = claimed_bound(pid, role, delta, g, w.cast)
                    if n_forb > claim or bound != claim:
                        stats["violations"].append((role, v, n_forb, claim))
                    s = claim - n_forb
                    stats["slack"] = s if stats["slack"] is None else min(stats["slack"], s)
        out[pid] = stats
    return out


def test_criterion_4_extension_totality(extension_runs):
    lines = []
    ok = True
    for pid, s in extension_runs.items():
        good = (
            s["instances"] >= INSTANCES_PER_PROCEDURE
            and s["colorings"] >= INSTANCES_PER_PROCEDURE * COLORINGS_PER_INSTANCE
            and s["stuck"] == 0
            and s["invalid"] == 0
        )
        ok &= good
        lines.append(f"{pid}: {s['instances']}x{s['colorings'] // max(1, s['instances'])}")
    stuck = sum(s["stuck"] for s in extension_runs.values())
    invalid = sum(s["invalid"] for s in extension_runs.values())
    report(
        4, "apply_extension always yields a valid coloring", ok,
        f"{len(extension_runs)} procedures, {stuck} stuck, {invalid} invalid; " + ", ".join(lines),
    )


def test_criterion_5_forbidden_count_bounds(extension_runs):
    violations = {pid: s["violations"] for pid, s in extension_runs.items() if s["violations"]}
    checked = sum(s["colorings"] for s in extension_runs.values())
    slack = min(s["slack"] for s in extension_runs.values() if s["slack"] is not None)
    report(
        5, "forbidden-color counts stay within the claimed bounds", not violations,
        f"{checked} extensions traced, {sum(map(len, violations.values()))} violations, minimum slack {slack}",
    )


# -- 6 -----------------------------------------------------------------------


def high_degree_instances():
    rng = random.Random(6)
    for d in range(7, 11):
        yield grow_tree(rng, [d] + [2] * d, 10_000, 99, {1: 1}).freeze()
        yield grow_tree(rng, [d] + [2] * (d - 1) + [5], 10_000, 99, {1: 1}).freeze()
        for _ in range(25):
            nbrs = [rng.choice([1, 2, 2, 3, 4, 5, 6, d]) for _ in range(d)]
            yield grow_tree(rng, [d] + nbrs, 60, d, None).freeze()
    for _ in range(150):
        yield gen.random_plane_graph(rng, rng.randint(12, 26), rng.randint(0, 6), min_girth=6, hub_degree=rng.randint(7, 10))


def test_criterion_6_face_share_floor():
    checked = 0
    low = {Fraction(1, 7): None, Fraction(2, 7): None}
    failures = []
    for g in high_degree_instances():
        if g.max_degree < 7:
            continue
        led = dc.discharge(g, "d7")
        for v in range(g.n):
            d = g.degrees[v]
            if d < 7:
                continue
            big = any(g.degrees[u] >= 5 for u in g.rotation[v])
            floor = Fraction(2, 7) if big else Fraction(1, 7)
            shares = dc.face_shares(g, led, "R6", v)
            checked += 1
            if len(shares) != d or min(shares) < floor:
                failures.append((d, big, min(shares, default=None)))
                continue
            m = min(shares)
            low[floor] = m if low[floor] is None else min(low[floor], m)
    report(
        6, "R6 face shares reach 1/7, and 2/7 next to a 5+ vertex", not failures and checked > 0,
        f"{checked} vertices of degree >= 7, smallest shares {low[Fraction(1, 7)]} and {low[Fraction(2, 7)]}, "
        f"{len(failures)} violations",
    )


# -- 7 -----------------------------------------------------------------------


def test_criterion_7_crucial_cap(corpus):
    faces = 0
    violations = []
    for rec, g in corpus:
        for f in g.faces:
            faces += 1
            if len(st.f_crucial_vertices(g, f)) > f.length // 4:
                violations.append((rec.id, f.length))
    report(
        7, "at most floor(l/4) f-crucial vertices per face", not violations,
        f"{faces} faces in {len(corpus)} graphs, {len(violations)} violations",
    )


# -- 8 -----------------------------------------------------------------------


def test_criterion_8_format_round_trips():
    rng = random.Random(8)
    g6_bad = 0
    for i in range(1000):
        n = rng.randint(0, 80)
        h = nx.gnp_random_graph(n, rng.random(), seed=i)
        data = fm.encode_graph6(n, h.edges())
        again = fm.write_graph6(fm.parse_graph6(data + b"\n")[0])
        if again != data or data != nx.to_graph6_bytes(h, header=False).rstrip(b"\n"):
            g6_bad += 1
    pc_bad = 0
    for i in range(1000):
        g = gen.random_plane_graph(rng, rng.randint(1, 40), rng.randint(0, 40))
        data = fm.encode_planar_code([g])
        back = fm.parse_planar_code(data)
        if fm.encode_planar_code(back) != data or back[0].rotation != g.rotation:
            pc_bad += 1
    report(
        8, "graph6 and planar_code round trips are byte-identical", g6_bad == 0 and pc_bad == 0,
        f"1000 graph6 samples ({g6_bad} diffs), 1000 planar_code samples ({pc_bad} diffs)",
    )
