"""Embedded planar graphs given by a rotation system.

A graph is stored as one cyclic neighbour list per vertex.  Faces are traced
with a single fixed convention: the dart following ``(u, v)`` on a face is
``(v, w)`` where ``w`` is the successor of ``u`` in the rotation at ``v``.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

Dart = tuple[int, int]

INF = math.inf


class GraphValidationError(ValueError):
    """Raised when an edge list / rotation system does not describe a simple graph."""

    def __init__(self, message: str, dart: Dart | None = None):
        super().__init__(message)
        self.dart = dart


@dataclass(frozen=True)
class Face:
    """One boundary walk.  ``length`` counts darts, so cut vertices count twice."""

    darts: tuple[Dart, ...]
    # set only for the empty face of an isolated vertex
    isolated: int | None = None

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        if self.isolated is not None:
            return (self.isolated,)
        return tuple(u for u, _ in self.darts)


@dataclass(frozen=True)
class GraphMetrics:
    max_degree: int
    girth: float
    degree_sum: tuple[int, ...]
    neighbor_degree_counts: tuple[Mapping[int, int], ...]


@dataclass(frozen=True, eq=False)
class PlanarGraph:
    """Immutable simple graph with a rotation system.

    ``rotation[v]`` lists the neighbours of ``v`` in cyclic order.  ``labels``
    keeps the caller's original vertex names for reporting.
    """

    rotation: tuple[tuple[int, ...], ...]
    labels: tuple[Hashable, ...] = field(default=())
    embedded: bool = True

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(self.rotation))))

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rotation)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.rotation[u] if u < v)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(trace_faces(self))

    @cached_property
    def girth(self) -> float:
        return girth(self)

    @cached_property
    def square(self) -> tuple[frozenset[int], ...]:
        return square_graph(self)

    def D(self, v: int) -> int:
        return sum(self.degrees[u] for u in self.rotation[v])

    def n_i(self, v: int, i: int) -> int:
        return sum(1 for u in self.rotation[v] if self.degrees[u] == i)

    def successor(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation at ``v``."""
        rot = self.rotation[v]
        return rot[(rot.index(u) + 1) % len(rot)]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.rotation[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def euler_characteristic(self) -> int:
        return self.n - self.m + len(self.faces)

    def is_plane(self) -> bool:
        """True when every component is embedded in the sphere (V - E + F = 2 each)."""
        return self.euler_characteristic() == 2 * len(self.components())

    def __repr__(self) -> str:
        return f"PlanarGraph(n={self.n}, m={self.m})"


def build_graph(
    edge_list: Iterable[tuple[int, int]] | None,
    rotations: Sequence[Sequence[int]] | Mapping[int, Sequence[int]],
    labels: Sequence[Hashable] | None = None,
    embedded: bool = True,
) -> PlanarGraph:
    """Validate a rotation system (and optionally the matching edge list).

    ``rotations`` is indexed by dense vertex ids ``0..n-1``.  When
    ``edge_list`` is given it must contain every edge of the rotation system
    exactly once.
    """
    if isinstance(rotations, Mapping):
        n = len(rotations)
        if set(rotations) != set(range(n)):
            raise GraphValidationError("rotation keys must be the dense ids 0..n-1")
        rot = [tuple(rotations[v]) for v in range(n)]
    else:
        rot = [tuple(r) for r in rotations]
        n = len(rot)

    for v, r in enumerate(rot):
        seen = set()
        for u in r:
            if not isinstance(u, int) or not 0 <= u < n:
                raise GraphValidationError(f"vertex {v} lists unknown neighbour {u!r}", (v, u))
            if u == v:
                raise GraphValidationError(f"loop at vertex {v}", (v, v))
            if u in seen:
                raise GraphValidationError(f"parallel edge {v}-{u}", (v, u))
            seen.add(u)
    adj = [set(r) for r in rot]
    for v in range(n):
        for u in rot[v]:
            if v not in adj[u]:
                raise GraphValidationError(
                    f"asymmetric rotation: {u} appears at {v} but {v} is missing at {u}", (v, u)
                )

    if edge_list is not None:
        seen_edges = set()
        for a, b in edge_list:
            if a == b:
                raise GraphValidationError(f"loop at vertex {a}", (a, b))
            key = (min(a, b), max(a, b))
            if key in seen_edges:
                raise GraphValidationError(f"duplicate edge {a}-{b}", (a, b))
            if not (0 <= a < n and 0 <= b < n) or b not in adj[a]:
                raise GraphValidationError(f"edge {a}-{b} missing from rotations", (a, b))
            seen_edges.add(key)
        m = sum(len(r) for r in rot) // 2
        if len(seen_edges) != m:
            missing = next(
                (v, u) for v in range(n) for u in rot[v] if (min(u, v), max(u, v)) not in seen_edges
            )
            raise GraphValidationError(f"rotation edge {missing[0]}-{missing[1]} not in edge list", missing)

    g = PlanarGraph(tuple(rot), tuple(labels) if labels is not None else (), embedded)
    g.faces  # trace eagerly so the graph is fully validated on return
    return g


def from_edges(n: int, edges: Iterable[tuple[int, int]], labels=None) -> PlanarGraph:
    """Graph with sorted (not necessarily planar) rotations; for coloring-only use."""
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    return build_graph(None, [sorted(r) for r in nbrs], labels, embedded=False)


def trace_faces(g: PlanarGraph) -> list[Face]:
    """Boundary walks of the embedding; every dart lies on exactly one face.

    An isolated vertex contributes one empty face so that V - E + F = 2 holds
    per component.
    """
    rot = g.rotation
    pos = [{u: i for i, u in enumerate(r)} for r in rot]
    used: set[Dart] = set()
    faces = []
    for s in range(len(rot)):
        if not rot[s]:
            faces.append(Face((), isolated=s))
            continue
        for t in rot[s]:
            if (s, t) in used:
                continue
            walk = []
            u, v = s, t
            while (u, v) not in used:
                used.add((u, v))
                walk.append((u, v))
                r = rot[v]
                w = r[(pos[v][u] + 1) % len(r)]
                u, v = v, w
            faces.append(Face(tuple(walk)))
    return faces


def bfs_distances(g: PlanarGraph, source: int, limit: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    q = deque([source])
    while q:
        x = q.popleft()
        if limit is not None and dist[x] >= limit:
            continue
        for y in g.rotation[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def girth(g: PlanarGraph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = INF
    rot = g.rotation
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        q = deque([root])
        while q:
            x = q.popleft()
            if 2 * dist[x] >= best:
                break
            for y in rot[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def dist2_neighborhood(g: PlanarGraph, v: int) -> set[int]:
    """Vertices at distance 1 or 2 from ``v``."""
    if not 0 <= v < g.n:
        raise KeyError(f"unknown vertex {v}")
    out = set(g.rotation[v])
    for u in g.rotation[v]:
        out.update(g.rotation[u])
    out.discard(v)
    return out


def square_graph(g: PlanarGraph) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(dist2_neighborhood(g, v)) for v in range(g.n))


def delete_vertex(g: PlanarGraph, v: int) -> PlanarGraph:
    """Remove ``v``; ids above ``v`` shift down by one, labels follow their vertices."""
    if not 0 <= v < g.n:
        raise KeyError(f"unknown vertex {v}")

    def shift(x: int) -> int:
        return x - 1 if x > v else x

    rot = [tuple(shift(u) for u in r if u != v) for i, r in enumerate(g.rotation) if i != v]
    labels = g.labels[:v] + g.labels[v + 1:]
    return PlanarGraph(tuple(rot), labels, g.embedded)


def lift_vertex(deleted: int, x: int) -> int:
    """Map an id of ``G - deleted`` back to its id in ``G``."""
    return x + 1 if x >= deleted else x


def metrics(g: PlanarGraph) -> GraphMetrics:
    deg = g.degrees
    return GraphMetrics(
        max_degree=g.max_degree,
        girth=g.girth,
        degree_sum=tuple(g.D(v) for v in range(g.n)),
        neighbor_degree_counts=tuple(
            dict(Counter(deg[u] for u in g.rotation[v])) for v in range(g.n)
        ),
    )


def relabel(g: PlanarGraph, perm: Sequence[int]) -> PlanarGraph:
    """Graph with vertex ``v`` renamed ``perm[v]``; rotations keep their cyclic order."""
    n = g.n
    rot: list[tuple[int, ...]] = [()] * n
    labels: list[Hashable] = [None] * n
    for v in range(n):
        rot[perm[v]] = tuple(perm[u] for u in g.rotation[v])
        labels[perm[v]] = g.labels[v]
    return PlanarGraph(tuple(rot), tuple(labels), g.embedded)
