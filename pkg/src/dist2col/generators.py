"""Embedded graph constructions: classic families, subdivision, hex patches, random growth.

Every construction manipulates a rotation system directly, so the output is
always a plane embedding and no planarity algorithm is needed.
"""

from __future__ import annotations

import math
import random
from typing import Iterator

from .graph_core import PlanarGraph, bfs_distances, build_graph

Corner = tuple[int | None, int]  # (predecessor on the face walk, vertex)


class Embedding:
    """Mutable rotation system used while growing a graph."""

    def __init__(self, rotation=None):
        self.rot: list[list[int]] = [list(r) for r in (rotation or [])]

    @classmethod
    def of(cls, g: PlanarGraph) -> "Embedding":
        return cls(g.rotation)

    @property
    def n(self) -> int:
        return len(self.rot)

    def freeze(self) -> PlanarGraph:
        return build_graph(None, self.rot)

    def add_vertex(self) -> int:
        self.rot.append([])
        return len(self.rot) - 1

    def _insert(self, v: int, after: int | None, new: int) -> None:
        r = self.rot[v]
        if after is None:
            r.append(new)
        else:
            r.insert(r.index(after) + 1, new)

    def add_edge(self, ca: Corner, cb: Corner) -> None:
        """Join the vertices of two corners lying on the same face."""
        (pa, a), (pb, b) = ca, cb
        self._insert(a, pa, b)
        self._insert(b, pb, a)

    def add_pendant(self, corner: Corner) -> int:
        x = self.add_vertex()
        self.add_edge(corner, (None, x))
        return x

    def add_pendant_path(self, corner: Corner, length: int) -> list[int]:
        path = []
        for _ in range(length):
            x = self.add_pendant(corner)
            path.append(x)
            corner = (corner[1], x)
        return path

    def subdivide(self, a: int, b: int) -> int:
        s = self.add_vertex()
        ra, rb = self.rot[a], self.rot[b]
        ra[ra.index(b)] = s
        rb[rb.index(a)] = s
        self.rot[s] = [a, b]
        return s

    def faces(self) -> list[list[Corner]]:
        """Each face as its list of corners ``(pred, v)`` in walk order."""
        out = []
        used = set()
        for s, r in enumerate(self.rot):
            if not r:
                out.append([(None, s)])
                continue
            for t in r:
                if (s, t) in used:
                    continue
                corners = []
                u, v = s, t
                while (u, v) not in used:
                    used.add((u, v))
                    rv = self.rot[v]
                    corners.append((u, v))
                    u, v = v, rv[(rv.index(u) + 1) % len(rv)]
                out.append(corners)
        return out

    def corners(self) -> list[Corner]:
        return [c for f in self.faces() for c in f]


def _as_graph(rot) -> PlanarGraph:
    return build_graph(None, rot)


def path_graph(k: int) -> PlanarGraph:
    rot = [[] for _ in range(k)]
    for i in range(k - 1):
        rot[i].append(i + 1)
        rot[i + 1].append(i)
    return _as_graph(rot)


def cycle_graph(k: int) -> PlanarGraph:
    return _as_graph([[(i - 1) % k, (i + 1) % k] for i in range(k)])


def star_graph(k: int) -> PlanarGraph:
    """K_{1,k} with centre 0."""
    return _as_graph([list(range(1, k + 1))] + [[0] for _ in range(k)])


def wheel_graph(k: int) -> PlanarGraph:
    """Hub 0 joined to the rim cycle 1..k."""
    hub = list(range(1, k + 1))
    rot = [hub]
    for i in range(k):
        prev, nxt = (i - 1) % k + 1, (i + 1) % k + 1
        rot.append([nxt, 0, prev])
    return _as_graph(rot)


def prism_graph(k: int) -> PlanarGraph:
    """Two concentric k-cycles (0..k-1 inner, k..2k-1 outer) joined by spokes."""
    rot = []
    for i in range(k):
        rot.append([(i + 1) % k, (i - 1) % k, k + i])
    for i in range(k):
        rot.append([k + (i - 1) % k, k + (i + 1) % k, i])
    return _as_graph(rot)


def k4_graph() -> PlanarGraph:
    return wheel_graph(3)


def subdivide(g: PlanarGraph) -> PlanarGraph:
    """Subdivide every edge once; the girth doubles and 2-vertices are never adjacent."""
    emb = Embedding.of(g)
    for a, b in g.edges:
        emb.subdivide(a, b)
    return emb.freeze()


def hex_patch(radius: int, hub_pendants: int = 0, pendant_length: int = 1) -> PlanarGraph:
    """Honeycomb patch of the hexagons within hex-distance ``radius - 1`` of the centre.

    With ``hub_pendants`` > 0, that many pendant paths are hung on a central
    lattice vertex (raising its degree to ``3 + hub_pendants``).
    """
    cells = [
        (q, r)
        for q in range(-radius + 1, radius)
        for r in range(-radius + 1, radius)
        if max(abs(q), abs(r), abs(q + r)) < radius
    ]
    key_of = {}
    pts = []
    nbrs: list[set[int]] = []

    def vid(x: float, y: float) -> int:
        key = (round(x, 6), round(y, 6))
        if key not in key_of:
            key_of[key] = len(pts)
            pts.append((x, y))
            nbrs.append(set())
        return key_of[key]

    for q, r in cells:
        cx = math.sqrt(3) * (q + r / 2)
        cy = 1.5 * r
        ring = [
            vid(cx + math.cos(math.radians(30 + 60 * k)), cy + math.sin(math.radians(30 + 60 * k)))
            for k in range(6)
        ]
        for k in range(6):
            a, b = ring[k], ring[(k + 1) % 6]
            nbrs[a].add(b)
            nbrs[b].add(a)

    def angle(v: int, u: int) -> float:
        return math.atan2(pts[u][1] - pts[v][1], pts[u][0] - pts[v][0])

    rot = [sorted(nbrs[v], key=lambda u: angle(v, u)) for v in range(len(pts))]
    emb = Embedding(rot)
    if hub_pendants:
        hub = min(
            (v for v in range(len(pts)) if len(rot[v]) == 3) if radius > 1 else range(len(pts)),
            key=lambda v: (pts[v][0] ** 2 + pts[v][1] ** 2, v),
        )
        for i in range(hub_pendants):
            r_hub = emb.rot[hub]
            pred = r_hub[i % len(r_hub)]
            emb.add_pendant_path((pred, hub), pendant_length)
    return emb.freeze()


def random_plane_graph(
    rng: random.Random,
    n: int,
    extra_edges: int,
    max_degree: int | None = None,
    min_girth: int = 3,
    hub_degree: int = 0,
) -> PlanarGraph:
    """Grow a connected plane graph on ``n`` vertices.

    A spanning tree is grown by hanging pendants into random corners, then up
    to ``extra_edges`` chords are drawn inside faces between corners whose
    current distance is at least ``min_girth - 1``.  ``hub_degree`` forces
    vertex 0 to receive that many tree neighbours first.
    """
    emb = Embedding([[]])
    cap = max_degree if max_degree is not None else n

    for _ in range(min(hub_degree, n - 1)):
        corners = [c for c in emb.corners() if c[1] == 0]
        emb.add_pendant(rng.choice(corners))
    while emb.n < n:
        corners = [c for c in emb.corners() if len(emb.rot[c[1]]) < cap]
        emb.add_pendant(rng.choice(corners))

    attempts = 0
    added = 0
    while added < extra_edges and attempts < 40 * (extra_edges + 1):
        attempts += 1
        face = rng.choice(emb.faces())
        if len(face) < 2:
            continue
        ca, cb = rng.sample(face, 2)
        a, b = ca[1], cb[1]
        if a == b or b in emb.rot[a]:
            continue
        if len(emb.rot[a]) >= cap or len(emb.rot[b]) >= cap:
            continue
        if min_girth > 3:
            g = build_graph(None, emb.rot)
            if bfs_distances(g, a, min_girth - 2).get(b, math.inf) < min_girth - 1:
                continue
        emb.add_edge(ca, cb)
        added += 1
    return emb.freeze()


def attach_pendants(
    rng: random.Random, g: PlanarGraph, count: int, length: int = 1, cap: int | None = None
) -> PlanarGraph:
    """Hang ``count`` pendant paths on random corners (degree capped by ``cap``)."""
    emb = Embedding.of(g)
    for _ in range(count):
        corners = [c for c in emb.corners() if cap is None or len(emb.rot[c[1]]) < cap]
        if not corners:
            break
        emb.add_pendant_path(rng.choice(corners), length)
    return emb.freeze()


def raise_degree(g: PlanarGraph, v: int, target: int, length: int = 1) -> PlanarGraph:
    """Hang pendant paths on ``v`` until its degree reaches ``target``."""
    emb = Embedding.of(g)
    while len(emb.rot[v]) < target:
        r = emb.rot[v]
        pred = r[0] if r else None
        emb.add_pendant_path((pred, v), length)
    return emb.freeze()


def iter_seeds(rng: random.Random, count: int, budget: int = 26) -> Iterator[PlanarGraph]:
    """Random simple plane seeds with a degree-6+ hub whose subdivision has at most ``budget`` vertices."""
    made = 0
    while made < count:
        n = rng.randint(7, 10)
        max_e = budget - n
        if max_e < n - 1:
            continue
        hub = rng.randint(6, min(n - 1, 8))
        extra = rng.randint(0, max_e - (n - 1))
        g = random_plane_graph(rng, n, extra, max_degree=rng.choice([None, 8, 9]), hub_degree=hub)
        if g.max_degree >= 6 and g.n + g.m <= budget:
            made += 1
            yield g
