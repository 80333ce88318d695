"""Corpus generation, sweeps and JSONL records."""

from __future__ import annotations

import json
import logging
import math
import os
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Iterator

import networkx as nx

from . import coloring as co
from . import discharging as dc
from . import generators as gen
from .formats import parse_coloring_file
from .graph_core import PlanarGraph, build_graph

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FAMILIES = ("subdivision", "hex", "chorded-tree")


@dataclass
class CorpusRecord:
    id: str
    source: dict
    hash: str
    n: int
    m: int
    delta: int
    girth: float
    embedding: str

    def as_json(self) -> dict:
        d = asdict(self)
        d["girth"] = _girth_json(self.girth)
        return d


@dataclass
class ResultRecord:
    id: str
    mode: str
    n: int
    m: int
    delta: int
    girth: float
    status: str = "ok"
    reason: str | None = None
    chi2: int | None = None
    bound_ok: bool | None = None
    palette: int | None = None
    colors_used: int | None = None
    fallbacks: int | None = None
    discharge_total: str | None = None
    negatives: int | None = None
    coloring: list[int] | None = None
    graph: list[list[int]] | None = None
    ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_json(self) -> dict:
        d = asdict(self)
        d["girth"] = _girth_json(self.girth)
        extra = d.pop("extra")
        return {"schema": SCHEMA_VERSION, **{k: v for k, v in d.items() if v is not None}, **extra}


def _girth_json(gv: float):
    return None if math.isinf(gv) else int(gv)


def graph_hash(g: PlanarGraph) -> str:
    """Relabel-invariant hash of the abstract graph (Weisfeiler-Lehman, degree-seeded)."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return f"{g.n}-{g.m}-" + nx.weisfeiler_lehman_graph_hash(h, iterations=4)


def make_record(g: PlanarGraph, gid: str, source: dict, embedding: str = "generator") -> CorpusRecord:
    return CorpusRecord(gid, source, graph_hash(g), g.n, g.m, g.max_degree, g.girth, embedding)


# -- corpus families ---------------------------------------------------------


def _random_triangulation(rng: random.Random, n: int) -> PlanarGraph:
    """Stacked triangulation: repeatedly insert a vertex into a random triangle."""
    rot = [[1, 2], [2, 0], [0, 1]]
    while len(rot) < n:
        face = rng.choice([f for f in gen.Embedding(rot).faces() if len(f) == 3])
        x = len(rot)
        for pred, v in face:
            rot[v].insert(rot[v].index(pred) + 1, x)
        # the new vertex sees the triangle in the opposite cyclic sense
        rot.append([v for _, v in reversed(face)])
    return build_graph(None, rot)


def _subdivision_seeds(rng: random.Random, max_n: int) -> Iterator[tuple[PlanarGraph, dict]]:
    for k in range(6, 9):
        if 3 * k + 1 <= max_n:
            yield gen.wheel_graph(k), {"seed": "wheel", "k": k}
    for k in range(3, 6):
        if 5 * k <= max_n:
            yield gen.prism_graph(k), {"seed": "prism", "k": k}
    while True:
        n = rng.randint(7, 8)
        tri = _random_triangulation(rng, n)
        if tri.n + tri.m <= max_n:
            yield tri, {"seed": "triangulation", "n": n}
        s = next(gen.iter_seeds(rng, 1, max_n))
        yield s, {"seed": "random", "n": s.n, "m": s.m}


def _family_subdivision(rng, max_n) -> Iterator[tuple[PlanarGraph, dict]]:
    for seed, params in _subdivision_seeds(rng, max_n):
        g = gen.subdivide(seed)
        yield g, params
        room = max_n - g.n
        if room > 0 and rng.random() < 0.5:
            count = rng.randint(1, room)
            length = rng.randint(1, max(1, room // count))
            h = gen.attach_pendants(rng, g, count, length, cap=max(g.max_degree, 6))
            if h.n <= max_n:
                yield h, {**params, "pendants": count, "length": length}


def _family_hex(rng, max_n) -> Iterator[tuple[PlanarGraph, dict]]:
    while True:
        radius = rng.choice([1, 1, 2])
        hub = rng.randint(3, 5) if radius > 1 else rng.randint(4, 6)
        length = rng.randint(1, 3)
        g = gen.hex_patch(radius, hub, length)
        if g.n <= max_n:
            yield g, {"radius": radius, "hub_pendants": hub, "length": length}
        elif radius == 2:
            # a radius-2 patch alone already has 24 vertices
            g = gen.hex_patch(2, hub, 1)
            if g.n <= max_n:
                yield g, {"radius": 2, "hub_pendants": hub, "length": 1}


def _family_chorded_tree(rng, max_n) -> Iterator[tuple[PlanarGraph, dict]]:
    while True:
        n = rng.randint(10, max_n)
        hub = rng.randint(6, min(9, n - 1))
        extra = rng.randint(0, n // 3)
        g = gen.random_plane_graph(rng, n, extra, min_girth=6, hub_degree=hub)
        yield g, {"n": n, "hub": hub, "extra": extra}


_FAMILY_FNS = {
    "subdivision": _family_subdivision,
    "hex": _family_hex,
    "chorded-tree": _family_chorded_tree,
}


def parse_family_spec(families: str) -> list[str]:
    """``"subdivision,hex"`` or ``"all"`` -> family names."""
    names = list(FAMILIES) if families in ("", "all") else [s.strip() for s in families.split(",")]
    for name in names:
        if name not in _FAMILY_FNS:
            raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return names


def generate_corpus(
    families: str = "all",
    count: int = 100,
    seed: int = 0,
    max_n: int = 26,
    require_hypothesis: bool = True,
) -> Iterator[tuple[CorpusRecord, PlanarGraph]]:
    """``count`` distinct verified graphs, round-robin over the requested families.

    With ``require_hypothesis`` only girth >= 6, max degree >= 6 graphs are kept.
    """
    names = parse_family_spec(families)
    rng = random.Random(seed)
    streams = {name: _FAMILY_FNS[name](rng, max_n) for name in names}
    seen: set[str] = set()
    made = 0
    stale = 0
    while made < count:
        for name in names:
            if made >= count:
                break
            g, params = next(streams[name])
            if not g.is_plane():
                raise AssertionError(f"{name} produced a non-plane rotation system")
            if name in ("subdivision", "hex") and g.girth < 6:
                raise AssertionError(f"{name} produced girth {g.girth}")
            if require_hypothesis and (g.girth < 6 or g.max_degree < 6):
                continue
            h = graph_hash(g)
            if h in seen:
                stale += 1
                if stale > 50 * count:
                    raise RuntimeError("corpus families exhausted before reaching the requested count")
                continue
            seen.add(h)
            gid = f"{name}-{made:05d}"
            made += 1
            yield make_record(g, gid, {"family": name, **params}), g


# -- sweep -------------------------------------------------------------------


@dataclass
class SweepConfig:
    budget_ms: float = 60000
    discharge: bool = False
    case: str = "auto"
    override_hypothesis: bool = False


@dataclass
class SweepSummary:
    processed: int = 0
    skipped: int = 0
    bounded_only: int = 0
    anomalies: list[str] = field(default_factory=list)
    fallbacks: int = 0
    max_excess: int | None = None  # max of chi2 - delta over exactly solved graphs

    def as_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "summary": True, **asdict(self)}


def _resolve_case(g: PlanarGraph, case: str) -> str | None:
    return dc.case_for(g) if case == "auto" else case


def color_record(g: PlanarGraph, gid: str, cfg: SweepConfig) -> ResultRecord:
    """One sweep step: hypothesis filter, constructive + exact coloring, optional discharge."""
    t0 = time.perf_counter()
    rec = ResultRecord(gid, "sweep", g.n, g.m, g.max_degree, g.girth)
    if not cfg.override_hypothesis and (g.max_degree < 6 or g.girth < 6):
        rec.status, rec.reason = "skipped", "hypothesis"
        return rec
    delta = g.max_degree
    rec.palette = delta + 4
    try:
        run = co.constructive_run(g, override_hypothesis=cfg.override_hypothesis, budget_ms=cfg.budget_ms)
    except (co.InfeasibleError, co.ScriptStuck) as e:
        rec.status, rec.reason = "anomaly", f"constructive: {e}"
        rec.graph = [list(r) for r in g.rotation]
        rec.bound_ok = False
        rec.ms = (time.perf_counter() - t0) * 1000
        return rec
    rec.fallbacks = run.fallbacks
    rec.colors_used = run.coloring.colors_used()
    rec.coloring = run.coloring.as_list(g.n)
    rec.extra["steps"] = dict(run.steps)
    try:
        k, witness = co.exact_chi2(g, upper_bound_hint=rec.colors_used, budget_ms=cfg.budget_ms)
        rec.chi2 = k
        rec.bound_ok = k <= delta + 4
    except co.SearchBudgetExceeded:
        rec.status = "bounded-only"
        rec.bound_ok = rec.colors_used <= delta + 4
    if not rec.bound_ok:
        rec.status, rec.reason = "anomaly", "chi2 exceeds delta + 4"
    if cfg.discharge:
        case = _resolve_case(g, cfg.case)
        if case is not None:
            led = dc.discharge(g, case, override=cfg.override_hypothesis)
            rep = dc.final_report(g, led)
            rec.discharge_total = str(rep.total)
            rec.negatives = len(rep.negatives)
            rec.extra["case"] = case
            if rep.total != dc.expected_total(g):
                rec.status, rec.reason = "anomaly", f"charge total {rep.total}"
    if rec.status == "anomaly":
        rec.graph = [list(r) for r in g.rotation]
    rec.ms = (time.perf_counter() - t0) * 1000
    return rec


class JsonlAppender:
    """Appends one JSON object per line, flushing and syncing each record."""

    def __init__(self, path: str | None):
        self.fh = open(path, "a", encoding="utf-8") if path else None

    def write(self, obj: dict) -> None:
        if self.fh is None:
            return
        self.fh.write(json.dumps(obj, sort_keys=True) + "\n")
        self.fh.flush()
        os.fsync(self.fh.fileno())

    def close(self) -> None:
        if self.fh:
            self.fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def run_sweep(
    graphs, cfg: SweepConfig, out: JsonlAppender | None = None
) -> tuple[SweepSummary, list[ResultRecord]]:
    """Sweep ``(record_or_id, graph)`` pairs; never aborts on a single graph."""
    summary = SweepSummary()
    results = []
    for item, g in graphs:
        gid = item.id if isinstance(item, CorpusRecord) else str(item)
        rec = color_record(g, gid, cfg)
        results.append(rec)
        if out:
            out.write(rec.as_json())
        if rec.status == "skipped":
            summary.skipped += 1
            continue
        summary.processed += 1
        summary.fallbacks += rec.fallbacks or 0
        if rec.status == "bounded-only":
            summary.bounded_only += 1
        if rec.status == "anomaly":
            summary.anomalies.append(gid)
            log.warning("anomaly on %s: %s", gid, rec.reason)
        if rec.chi2 is not None:
            ex = rec.chi2 - rec.delta
            summary.max_excess = ex if summary.max_excess is None else max(summary.max_excess, ex)
    if out:
        out.write(summary.as_json())
    return summary, results


@dataclass
class Verdict:
    valid: bool
    conflict: tuple[int, int, int] | None = None
    uncolored: list[int] = field(default_factory=list)
    colors_used: int = 0


def verify_coloring(g: PlanarGraph, assignment: dict[int, int], palette: int | None = None) -> Verdict:
    for v in assignment:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex {v}")
    if palette is not None:
        for v, c in assignment.items():
            if not 1 <= c <= palette:
                raise ValueError(f"vertex {v}: color {c} outside 1..{palette}")
    c = co.Coloring(dict(assignment), palette or max(assignment.values(), default=0))
    conflict = co.first_conflict(g, c)
    missing = [v for v in range(g.n) if v not in assignment]
    return Verdict(conflict is None and not missing, conflict, missing, c.colors_used())


def verify_coloring_file(g: PlanarGraph, text: str, palette: int | None = None) -> Verdict:
    return verify_coloring(g, parse_coloring_file(text, g.n), palette)


def graph_from_record(obj: dict) -> PlanarGraph:
    return build_graph(None, obj["graph"])
