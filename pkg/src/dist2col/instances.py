"""Random girth-6 instances that contain a chosen reducible configuration,
plus samplers for colorings of ``G - u``.

An instance is grown as a plane tree whose first few vertices (in BFS order)
get prescribed degrees, so the configuration is planted around the root.
The rest of the tree is random, a few chords are added between vertices at
distance >= 5, and a hub of the target maximum degree is hung far away.  The
configuration's own checker decides whether the result is kept.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from . import coloring as co
from . import structure as st
from .generators import Embedding
from .graph_core import PlanarGraph, bfs_distances, delete_vertex


@dataclass
class Instance:
    graph: PlanarGraph
    delta: int
    witness: st.ConfigurationWitness


def grow_tree(
    rng: random.Random,
    planned: Sequence[int | None],
    n_max: int,
    max_degree: int,
    weights: dict[int, float] | None = None,
) -> Embedding:
    """BFS-grown plane tree; vertex ``i`` gets degree ``planned[i]`` when given."""
    weights = weights or {1: 4, 2: 4, 3: 2, 4: 1, 5: 1}
    ds = [d for d in weights if d <= max_degree]
    ws = [weights[d] for d in ds]
    emb = Embedding([[]])
    queue = deque([0])
    while queue:
        v = queue.popleft()
        want = planned[v] if v < len(planned) and planned[v] is not None else None
        if want is None:
            want = rng.choices(ds, ws)[0] if emb.n < n_max else 1
        want = max(want, len(emb.rot[v]))
        while len(emb.rot[v]) < want:
            r = emb.rot[v]
            c = emb.add_pendant((rng.choice(r) if r else None, v))
            queue.append(c)
    return emb


def decorate(
    rng: random.Random, emb: Embedding, protect: int, chords: int, hub_degree: int | None
) -> PlanarGraph:
    """Add chords between far vertices and a hub, both kept at distance >= 4 from ``protect``."""
    g = emb.freeze()
    near = set(bfs_distances(g, protect, 3))
    for _ in range(chords * 10):
        if chords <= 0:
            break
        face = rng.choice(emb.faces())
        if len(face) < 12:
            continue
        ca, cb = rng.sample(face, 2)
        a, b = ca[1], cb[1]
        if a == b or a in near or b in near or b in emb.rot[a]:
            continue
        g = emb.freeze()
        if bfs_distances(g, a, 4).get(b, 99) < 5:
            continue
        emb.add_edge(ca, cb)
        chords -= 1
    if hub_degree:
        g = emb.freeze()
        if g.max_degree < hub_degree:
            far = [v for v in range(g.n) if v not in near and len(emb.rot[v]) == 1]
            if not far:
                far = [v for v in range(g.n) if v not in near and len(emb.rot[v]) <= hub_degree]
            if far:
                h = rng.choice(far)
                while len(emb.rot[h]) < hub_degree:
                    emb.add_pendant((emb.rot[h][0] if emb.rot[h] else None, h))
    return emb.freeze()


# -- planted patterns --------------------------------------------------------
#
# Each pattern returns ``(planned degrees, delta)``; indices are BFS order.
# ``R`` marks a random degree.

R = None


def _pick(rng, lo, hi):
    return rng.randint(lo, hi)


def _p_deg1(rng, delta):
    return [1], delta


def _p_adj2(rng, delta):
    return [2, 2, _pick(rng, 1, delta)], delta


def _p_two_next_to_three(rng, delta):
    return [2, 3, _pick(rng, 1, delta)], delta


def _p_deg3_lowd(rng, delta):
    a = _pick(rng, 1, delta)
    b = _pick(rng, 1, max(1, delta + 2 - a))
    return [3, 2, a, b], delta


def _p_deg3_31chain(rng, delta):
    # root v: children u (2), z (3), other; z's children: t (2) and one more
    return [3, 2, 3, R, R, 2, R], delta


def _p_deg4_lowd(rng, delta):
    rest = [_pick(rng, 1, 3) for _ in range(3)]
    while 2 + sum(rest) > delta + 3:
        rest[rng.randrange(3)] = 1
    return [4, 2] + rest, delta


def _p_deg4_31(rng, delta):
    rest = [_pick(rng, 1, 4) for _ in range(2)]
    while 5 + sum(rest) > delta + 4:
        rest[rng.randrange(2)] = 1
    # v: u(2), z(3), a, b;  u's child; z's children t(2) and a 3+-vertex
    return [4, 2, 3] + rest + [R, 2, _pick(rng, 3, delta)], delta


def _p_deg4_three31(rng, delta):
    p = [4, 2, 3, 3, 3, R]
    for _ in range(3):
        p += [2, _pick(rng, 3, delta)]
    return p, delta


def _p_special(rng, delta, kind, z_max):
    """Special vertex at the root, with a 2-neighbour whose far end has degree <= z_max."""
    d45 = rng.choice([4, 5])
    if kind == st.TYPE_I:
        p = [4, 2, 2, 3, d45, _pick(rng, 1, z_max), R, 2, _pick(rng, 3, delta)]
    elif kind == st.TYPE_II:
        p = [4, 2, 2, 2, d45, _pick(rng, 1, z_max), R, R]
    elif kind == st.TYPE_III:
        p = [5, 2, 2, 2, 2, 3, _pick(rng, 1, z_max), R, R, R, 2, _pick(rng, 3, delta)]
    else:
        p = [5, 2, 2, 2, 2, 2, _pick(rng, 1, z_max), R, R, R, R]
    return p, delta


def _p_special_d6_12(rng, delta):
    return _p_special(rng, 6, rng.choice([st.TYPE_I, st.TYPE_II]), 5)


def _p_special_d6_34(rng, delta):
    return _p_special(rng, 6, rng.choice([st.TYPE_III, st.TYPE_IV]), 4)


def _p_special_d7(rng, delta):
    kind = rng.choice([st.TYPE_I, st.TYPE_II, st.TYPE_III, st.TYPE_IV])
    return _p_special(rng, delta, kind, delta - 1)


def _p_type2_54(rng, delta):
    # v = 4(3) with its 5(4)-neighbour u first; u's children: three 2s and one more 2 or 3(1)
    return [4, 5, 2, 2, 2, 2, 2, 2, 2, R, R, R, _pick(rng, 1, 5)], delta


@dataclass(frozen=True)
class Pattern:
    planted: Callable[[random.Random, int], tuple[list, int]]
    delta_range: tuple[int, int]
    weights: dict[int, float] | None = None


PATTERNS: dict[str, Pattern] = {
    st.DEG1: Pattern(_p_deg1, (2, 9)),
    st.ADJ2: Pattern(_p_adj2, (2, 9)),
    st.TWO_NEXT_TO_THREE: Pattern(_p_two_next_to_three, (3, 9)),
    st.DEG3_LOWD: Pattern(_p_deg3_lowd, (3, 9)),
    st.DEG3_31CHAIN: Pattern(_p_deg3_31chain, (3, 9)),
    st.DEG4_LOWD: Pattern(_p_deg4_lowd, (4, 9)),
    st.DEG4_31: Pattern(_p_deg4_31, (4, 9)),
    st.DEG4_THREE31: Pattern(_p_deg4_three31, (5, 9)),
    st.SPECIAL_D6_TYPE12: Pattern(_p_special_d6_12, (6, 6)),
    st.SPECIAL_D6_TYPE34: Pattern(_p_special_d6_34, (6, 6)),
    st.SPECIAL_D7: Pattern(_p_special_d7, (7, 10)),
    st.TYPE2_54: Pattern(_p_type2_54, (7, 10)),
}


def random_instance(
    rng: random.Random, procedure: str, n_max: int = 40, tries: int = 200
) -> Instance | None:
    """A graph with girth >= 6 and maximum degree ``delta`` containing ``procedure``'s configuration."""
    pat = PATTERNS[procedure]
    for _ in range(tries):
        delta = rng.randint(*pat.delta_range)
        planned, delta = pat.planted(rng, delta)
        emb = grow_tree(rng, planned, rng.randint(len(planned) + 4, n_max), delta, pat.weights)
        g = decorate(rng, emb, 0, rng.randint(0, 3), delta)
        if g.max_degree != delta or g.girth < 6 or not g.is_plane():
            continue
        found = [w for w in st.iter_witnesses(g, delta, (procedure,))]
        if found:
            return Instance(g, delta, rng.choice(found))
    return None


def iter_instances(rng: random.Random, procedure: str, count: int, **kw) -> Iterator[Instance]:
    made = 0
    while made < count:
        inst = random_instance(rng, procedure, **kw)
        if inst is None:
            raise RuntimeError(f"could not plant {procedure}")
        made += 1
        yield inst


# -- coloring samplers -------------------------------------------------------


def sample_colorings(
    rng: random.Random, inst: Instance, count: int, max_attempts: int | None = None
) -> Iterator[co.Coloring]:
    """Valid ``(delta + 4)``-colorings of ``G - u``.

    Half of the samples first force two cast vertices that are far apart in
    ``G - u`` onto the same color, so equal-color branches of the scripts run.
    For TWO_NEXT_TO_THREE the samples are restrictions of colorings of ``G``.
    """
    g, w = inst.graph, inst.witness
    palette = inst.delta + 4
    u = w.deletion_vertex
    proper_lift = co.CATALOG[w.procedure_id].needs_proper_lift
    base = g if proper_lift else delete_vertex(g, u)

    def to_base(x):
        return x if proper_lift else (x - 1 if x > u else x)

    cast = sorted({to_base(x) for role, x in w.cast.items() if x != u})
    pairs = [
        (a, b) for i, a in enumerate(cast) for b in cast[i + 1:] if b not in base.square[a]
    ]
    made = 0
    attempts = 0
    limit = max_attempts or 20 * count
    while made < count and attempts < limit:
        attempts += 1
        pre = {}
        if pairs and rng.random() < 0.5:
            a, b = rng.choice(pairs)
            col = rng.randint(1, palette)
            pre = {a: col, b: col}
        c = co.random_coloring(base, palette, rng, pre)
        if c is None:
            continue
        if proper_lift:
            c.assignment.pop(u)
            c = co.Coloring({(x - 1 if x > u else x): col for x, col in c.assignment.items()}, palette)
        made += 1
        yield c
