"""Local structure of girth-6 plane graphs: vertex classes, special/bad vertices,
crucial paths and the reducible configurations used by the constructive colorer.

Degree words follow the usual shorthand: a ``k(d)``-vertex has degree ``k`` and
exactly ``d`` neighbours of degree 2; a *poor* vertex is a 2-vertex or a
``3(1)``-vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Mapping

from .graph_core import Face, PlanarGraph

TYPE_I, TYPE_II, TYPE_III, TYPE_IV = "I", "II", "III", "IV"
BAD4, SEMIBAD4, BAD5, SEMIBAD5 = "bad4", "semibad4", "bad5", "semibad5"


@dataclass(frozen=True)
class VertexProfile:
    degree: int
    two_neighbor_count: int
    is_poor: bool
    is_senior: bool
    special_type: str | None
    badness: str | None

    @property
    def kd(self) -> str:
        return f"{self.degree}({self.two_neighbor_count})"


@dataclass(frozen=True)
class CrucialPath:
    vertices: tuple[int, int, int, int, int]
    variant: int


@dataclass(frozen=True)
class ConfigurationWitness:
    """A located reducible configuration.

    ``deletion_vertex`` is the vertex removed before recursing; ``cast`` names
    every other vertex the extension script touches.
    """

    procedure_id: str
    deletion_vertex: int
    cast: Mapping[str, int] = field(default_factory=dict)


# -- elementary predicates ---------------------------------------------------


def two_neighbors(g: PlanarGraph, v: int) -> list[int]:
    deg = g.degrees
    return [u for u in g.rotation[v] if deg[u] == 2]


def other_end(g: PlanarGraph, mid: int, v: int) -> int:
    """The neighbour of the 2-vertex ``mid`` that is not ``v``."""
    a, b = g.rotation[mid]
    return b if a == v else a


def is_31(g: PlanarGraph, v: int) -> bool:
    return g.degrees[v] == 3 and g.n_i(v, 2) == 1


def is_poor(g: PlanarGraph, v: int) -> bool:
    return g.degrees[v] == 2 or is_31(g, v)


def poor_count(g: PlanarGraph, v: int) -> int:
    return sum(1 for u in g.rotation[v] if is_poor(g, u))


def is_senior(g: PlanarGraph, v: int) -> bool:
    return g.degrees[v] == 5 and poor_count(g, v) <= 4


def weak_partners(g: PlanarGraph, v: int) -> list[tuple[int, int]]:
    """``(mid, far)`` for every path ``v - mid - far`` with ``d(mid) = 2``."""
    return [(u, other_end(g, u, v)) for u in two_neighbors(g, v)]


def star_partners(g: PlanarGraph, v: int) -> list[tuple[int, int, int]]:
    """``(mid, far, two)`` where ``mid`` is a 3(1)-neighbour of ``v``, ``two`` its
    2-neighbour and ``far`` its remaining neighbour."""
    out = []
    for x in g.rotation[v]:
        if x == v or not is_31(g, x):
            continue
        (t,) = two_neighbors(g, x)
        if t == v:
            continue
        (far,) = [y for y in g.rotation[x] if y not in (v, t)]
        out.append((x, far, t))
    return out


def weak_adjacent(g: PlanarGraph, u: int, w: int) -> bool:
    if u == w:
        return False
    deg = g.degrees
    return any(deg[x] == 2 for x in g.adj[u] & g.adj[w])


def star_adjacent(g: PlanarGraph, u: int, w: int) -> bool:
    if u == w:
        return False
    for x in g.adj[u] & g.adj[w]:
        if is_31(g, x):
            (t,) = two_neighbors(g, x)
            if t not in (u, w):
                return True
    return False


def _has_nbr(g: PlanarGraph, v: int, pred: Callable[[int], bool]) -> bool:
    return any(pred(u) for u in g.rotation[v])


def special_type(g: PlanarGraph, v: int) -> str | None:
    deg = g.degrees
    d, n2 = deg[v], g.n_i(v, 2)
    deg45 = lambda u: deg[u] in (4, 5)  # noqa: E731
    if d == 4 and n2 == 2 and _has_nbr(g, v, lambda u: is_31(g, u)) and _has_nbr(g, v, deg45):
        return TYPE_I
    if d == 4 and n2 == 3 and _has_nbr(g, v, deg45):
        return TYPE_II
    if d == 5 and n2 == 4 and _has_nbr(g, v, lambda u: is_31(g, u)):
        return TYPE_III
    if d == 5 and n2 == 5:
        return TYPE_IV
    return None


def badness(g: PlanarGraph, v: int) -> str | None:
    """Bad / semi-bad label of a 4- or 5-vertex (meaningful when the maximum degree is 6)."""
    deg = g.degrees
    d = deg[v]
    if d not in (4, 5):
        return None
    weak = weak_partners(g, v)
    if d == 5:
        strong = [far for _, far in weak if deg[far] >= 5]
        if len(weak) == 5 and len(strong) == 5:
            return BAD5
        if len(weak) == 4 and len(strong) == 4:
            for _, far, _ in star_partners(g, v):
                if deg[far] in (4, 5) and far not in strong:
                    return SEMIBAD5
        return None
    six = [far for _, far in weak if deg[far] == 6]
    deg45 = [u for u in g.rotation[v] if deg[u] in (4, 5)]
    if len(weak) == 3 and len(six) == 3 and deg45:
        return BAD4
    if len(weak) == 2 and len(six) == 2 and deg45:
        for mid, far, _ in star_partners(g, v):
            if deg[far] == 5 and far not in six:
                return SEMIBAD4
    return None


def classify_vertex(g: PlanarGraph, v: int) -> VertexProfile:
    return VertexProfile(
        degree=g.degrees[v],
        two_neighbor_count=g.n_i(v, 2),
        is_poor=is_poor(g, v),
        is_senior=is_senior(g, v),
        special_type=special_type(g, v),
        badness=badness(g, v),
    )


# -- crucial paths -----------------------------------------------------------

_CRUCIAL_PATTERNS = (
    lambda D, d: d[0] == D and d[1] == 2 and d[2] == 4 and d[3] == 2 and d[4] == D,
    lambda D, d: d[0] == D and d[1] == 2 and d[2] == 5 and d[3] == 2 and d[4] == D,
    lambda D, d: d[0] == D and d[1] == 2 and d[2] == 4 and d[3] == 5 and d[4] >= 6,
)


def crucial_variant(g: PlanarGraph, path, delta: int | None = None) -> int | None:
    """Pattern number (1-3) matched by ``path`` read in either direction, else None."""
    if len(set(path)) != 5:
        return None
    D = g.max_degree if delta is None else delta
    deg = g.degrees
    for seq in (path, path[::-1]):
        ds = [deg[x] for x in seq]
        for i, pat in enumerate(_CRUCIAL_PATTERNS, 1):
            if pat(D, ds):
                return i
    return None


def crucial_paths(g: PlanarGraph, delta: int | None = None) -> list[CrucialPath]:
    """Every crucial path of ``g``, each listed once."""
    out = []
    deg = g.degrees
    for v in range(g.n):
        if deg[v] not in (4, 5):
            continue
        for u, z in combinations(g.rotation[v], 2):
            for w in g.rotation[u]:
                if w == v:
                    continue
                for t in g.rotation[z]:
                    if t == v:
                        continue
                    path = (w, u, v, z, t)
                    var = crucial_variant(g, path, delta)
                    if var is not None:
                        out.append(CrucialPath(path, var))
    return out


def f_crucial_vertices(g: PlanarGraph, f: Face, delta: int | None = None) -> list[int]:
    """Middle vertices of crucial paths running along consecutive darts of ``f``.

    A vertex visited twice by the walk is listed once per crucial visit.
    """
    seq = f.vertices
    L = len(f.darts)
    if L < 5:
        return []
    out = []
    for i in range(L):
        window = tuple(seq[(i + k) % L] for k in range(5))
        if crucial_variant(g, window, delta) is not None:
            out.append(window[2])
    return out


# -- reducible configurations ------------------------------------------------
#
# Every configuration has a checker ``(g, delta, cast) -> bool`` and an
# enumerator yielding candidate casts.  ``delta`` is the palette degree: the
# colorer works with ``delta + 4`` colors.

ADJ2 = "ADJ2"
DEG1 = "DEG1"
TWO_NEXT_TO_THREE = "TWO_NEXT_TO_THREE"
DEG3_LOWD = "DEG3_LOWD"
DEG3_31CHAIN = "DEG3_31CHAIN"
DEG4_LOWD = "DEG4_LOWD"
DEG4_31 = "DEG4_31"
DEG4_THREE31 = "DEG4_THREE31"
SPECIAL_D6_TYPE12 = "SPECIAL_D6_TYPE12"
SPECIAL_D6_TYPE34 = "SPECIAL_D6_TYPE34"
SPECIAL_D7 = "SPECIAL_D7"
TYPE2_54 = "TYPE2_54"


def _adjacent(g: PlanarGraph, a: int, b: int) -> bool:
    return b in g.adj[a]


def _chk_deg1(g, delta, c):
    return g.degrees[c["u"]] <= 1


def _chk_adj2(g, delta, c):
    u, v, w, z = c["u"], c["v"], c["w"], c["z"]
    deg = g.degrees
    return (
        deg[u] == 2 and deg[v] == 2 and _adjacent(g, u, v)
        and set(g.rotation[u]) == {v, w} and set(g.rotation[v]) == {u, z}
    )


def _chk_two_next_to_three(g, delta, c):
    u, x = c["u"], c["x"]
    return g.degrees[u] == 2 and g.degrees[x] == 3 and _adjacent(g, u, x)


def _chk_deg3_lowd(g, delta, c):
    u, v, w = c["u"], c["v"], c["w"]
    deg = g.degrees
    return (
        deg[v] == 3 and deg[u] == 2 and set(g.rotation[u]) == {v, w}
        and g.D(v) <= delta + 4
    )


def _chk_deg3_31chain(g, delta, c):
    u, v, w, z, t = c["u"], c["v"], c["w"], c["z"], c["t"]
    deg = g.degrees
    return (
        deg[v] == 3 and deg[u] == 2 and set(g.rotation[u]) == {v, w}
        and deg[z] == 3 and _adjacent(g, v, z)
        and deg[t] == 2 and _adjacent(g, z, t)
        and len({u, v, w, z, t}) == 5
    )


def _chk_deg4_lowd(g, delta, c):
    u, v, w = c["u"], c["v"], c["w"]
    deg = g.degrees
    return (
        deg[v] == 4 and deg[u] == 2 and set(g.rotation[u]) == {v, w}
        and g.D(v) <= delta + 3
    )


def _chk_deg4_31(g, delta, c):
    u, v, w, z, t = c["u"], c["v"], c["w"], c["z"], c["t"]
    deg = g.degrees
    return (
        deg[v] == 4 and deg[u] == 2 and set(g.rotation[u]) == {v, w}
        and is_31(g, z) and _adjacent(g, v, z) and two_neighbors(g, z) == [t]
        and len({u, v, w, z, t}) == 5
        and g.D(v) <= delta + 4
    )


def _chk_deg4_three31(g, delta, c):
    u, v, w = c["u"], c["v"], c["w"]
    deg = g.degrees
    xs = [c["x1"], c["x2"], c["x3"]]
    ts = [c["t1"], c["t2"], c["t3"]]
    if not (deg[v] == 4 and deg[u] == 2 and set(g.rotation[u]) == {v, w}):
        return False
    if len(set(xs)) != 3 or u in xs or delta + 4 <= 8:
        return False
    return all(
        is_31(g, x) and _adjacent(g, v, x) and two_neighbors(g, x) == [t]
        for x, t in zip(xs, ts)
    )


def _special_cast_ok(g, v, c, kind):
    """Check the type-specific cast members ``t`` (types I/III) and ``x`` (type II 4/5-neighbour)."""
    if kind in (TYPE_I, TYPE_III):
        y, t = c.get("y"), c.get("t")
        return (
            y is not None and is_31(g, y) and _adjacent(g, v, y)
            and two_neighbors(g, y) == [t]
        )
    return "t" not in c


def _chk_special_d6_12(g, delta, c):
    v, u1, z, u2 = c["v"], c["u1"], c["z"], c["u2"]
    deg = g.degrees
    kind = special_type(g, v)
    return (
        delta == 6 and kind in (TYPE_I, TYPE_II)
        and deg[u1] == 2 and set(g.rotation[u1]) == {v, z} and deg[z] <= 5
        and deg[u2] == 2 and u2 != u1 and _adjacent(g, v, u2)
        and _special_cast_ok(g, v, c, kind)
    )


def _chk_special_d6_34(g, delta, c):
    v, u, z = c["v"], c["u"], c["z"]
    deg = g.degrees
    kind = special_type(g, v)
    return (
        delta == 6 and kind in (TYPE_III, TYPE_IV)
        and deg[u] == 2 and set(g.rotation[u]) == {v, z} and deg[z] <= 4
        and _special_cast_ok(g, v, c, kind)
    )


def _chk_special_d7(g, delta, c):
    v, u, z = c["v"], c["u"], c["z"]
    deg = g.degrees
    kind = special_type(g, v)
    return (
        delta >= 7 and kind is not None
        and deg[u] == 2 and set(g.rotation[u]) == {v, z} and deg[z] <= delta - 1
        and _special_cast_ok(g, v, c, kind)
    )


def _chk_type2_54(g, delta, c):
    v, u, w, z = c["v"], c["u"], c["w"], c["z"]
    deg = g.degrees
    return (
        delta >= 7 and special_type(g, v) == TYPE_II
        and _adjacent(g, v, u) and deg[u] == 5 and g.n_i(u, 2) == 4
        and deg[w] == 2 and set(g.rotation[w]) == {u, z} and deg[z] <= 5
    )


def _gen_deg1(g, delta):
    for u in range(g.n):
        yield u, {"u": u}


def _gen_adj2(g, delta):
    deg = g.degrees
    for u in range(g.n):
        if deg[u] != 2:
            continue
        for v in g.rotation[u]:
            if deg[v] == 2:
                yield u, {"u": u, "v": v, "w": other_end(g, u, v), "z": other_end(g, v, u)}


def _gen_two_next_to_three(g, delta):
    for u in range(g.n):
        if g.degrees[u] == 2:
            for x in g.rotation[u]:
                yield u, {"u": u, "x": x}


def _gen_low2(g, delta, degree):
    """Casts ``(u, v, w)``: ``v`` of the given degree, ``u`` a 2-neighbour, ``w`` beyond."""
    deg = g.degrees
    for v in range(g.n):
        if deg[v] != degree:
            continue
        for u in two_neighbors(g, v):
            yield v, u, other_end(g, u, v)


def _gen_deg3_lowd(g, delta):
    for v, u, w in _gen_low2(g, delta, 3):
        yield u, {"u": u, "v": v, "w": w}


def _gen_deg3_31chain(g, delta):
    deg = g.degrees
    for v, u, w in _gen_low2(g, delta, 3):
        for z in g.rotation[v]:
            if deg[z] == 3:
                for t in two_neighbors(g, z):
                    yield u, {"u": u, "v": v, "w": w, "z": z, "t": t}


def _gen_deg4_lowd(g, delta):
    for v, u, w in _gen_low2(g, delta, 4):
        yield u, {"u": u, "v": v, "w": w}


def _gen_deg4_31(g, delta):
    for v, u, w in _gen_low2(g, delta, 4):
        for z in g.rotation[v]:
            if is_31(g, z):
                yield u, {"u": u, "v": v, "w": w, "z": z, "t": two_neighbors(g, z)[0]}


def _gen_deg4_three31(g, delta):
    for v, u, w in _gen_low2(g, delta, 4):
        xs = [x for x in g.rotation[v] if is_31(g, x)]
        for trio in combinations(xs, 3):
            cast = {"u": u, "v": v, "w": w}
            for i, x in enumerate(trio, 1):
                cast[f"x{i}"] = x
                cast[f"t{i}"] = two_neighbors(g, x)[0]
            yield u, cast


def _special_extras(g, v, kind):
    if kind in (TYPE_I, TYPE_III):
        for y in g.rotation[v]:
            if is_31(g, y):
                yield {"y": y, "t": two_neighbors(g, y)[0]}
    else:
        yield {}


def _gen_special(g, delta, kinds):
    for v in range(g.n):
        kind = special_type(g, v)
        if kind not in kinds:
            continue
        for u, z in weak_partners(g, v):
            for extra in _special_extras(g, v, kind):
                yield kind, v, u, z, extra


def _gen_special_d6_12(g, delta):
    for kind, v, u1, z, extra in _gen_special(g, delta, (TYPE_I, TYPE_II)):
        for u2 in two_neighbors(g, v):
            if u2 != u1:
                yield u1, {"v": v, "u1": u1, "z": z, "u2": u2, **extra}


def _gen_special_d6_34(g, delta):
    for kind, v, u, z, extra in _gen_special(g, delta, (TYPE_III, TYPE_IV)):
        yield u, {"v": v, "u": u, "z": z, **extra}


def _gen_special_d7(g, delta):
    for kind, v, u, z, extra in _gen_special(g, delta, (TYPE_I, TYPE_II, TYPE_III, TYPE_IV)):
        yield u, {"v": v, "u": u, "z": z, **extra}


def _gen_type2_54(g, delta):
    deg = g.degrees
    for v in range(g.n):
        if special_type(g, v) != TYPE_II:
            continue
        for u in g.rotation[v]:
            if deg[u] == 5 and g.n_i(u, 2) == 4:
                for w, z in weak_partners(g, u):
                    yield w, {"v": v, "u": u, "w": w, "z": z}


@dataclass(frozen=True)
class Configuration:
    procedure_id: str
    check: Callable[[PlanarGraph, int, Mapping[str, int]], bool]
    candidates: Callable[[PlanarGraph, int], Iterator[tuple[int, dict]]]
    deletion_role: str


CONFIGURATIONS: dict[str, Configuration] = {
    c.procedure_id: c
    for c in (
        Configuration(DEG1, _chk_deg1, _gen_deg1, "u"),
        Configuration(ADJ2, _chk_adj2, _gen_adj2, "u"),
        Configuration(TWO_NEXT_TO_THREE, _chk_two_next_to_three, _gen_two_next_to_three, "u"),
        Configuration(DEG3_LOWD, _chk_deg3_lowd, _gen_deg3_lowd, "u"),
        Configuration(DEG3_31CHAIN, _chk_deg3_31chain, _gen_deg3_31chain, "u"),
        Configuration(DEG4_LOWD, _chk_deg4_lowd, _gen_deg4_lowd, "u"),
        Configuration(DEG4_31, _chk_deg4_31, _gen_deg4_31, "u"),
        Configuration(DEG4_THREE31, _chk_deg4_three31, _gen_deg4_three31, "u"),
        Configuration(SPECIAL_D6_TYPE12, _chk_special_d6_12, _gen_special_d6_12, "u1"),
        Configuration(SPECIAL_D6_TYPE34, _chk_special_d6_34, _gen_special_d6_34, "u"),
        Configuration(SPECIAL_D7, _chk_special_d7, _gen_special_d7, "u"),
        Configuration(TYPE2_54, _chk_type2_54, _gen_type2_54, "w"),
    )
}

# TWO_NEXT_TO_THREE only finishes other scripts; it is not a deletion step.
PRIORITY = (
    DEG1,
    ADJ2,
    DEG3_LOWD,
    DEG3_31CHAIN,
    DEG4_LOWD,
    DEG4_31,
    DEG4_THREE31,
    SPECIAL_D6_TYPE12,
    SPECIAL_D6_TYPE34,
    SPECIAL_D7,
    TYPE2_54,
)


def validate_witness(g: PlanarGraph, delta: int, w: ConfigurationWitness) -> bool:
    conf = CONFIGURATIONS.get(w.procedure_id)
    if conf is None:
        return False
    cast = dict(w.cast)
    if cast.get(conf.deletion_role) != w.deletion_vertex:
        return False
    if any(not 0 <= x < g.n for x in cast.values()):
        return False
    return conf.check(g, delta, cast)


def iter_witnesses(
    g: PlanarGraph, delta: int, procedures=PRIORITY
) -> Iterator[ConfigurationWitness]:
    """All witnesses of the given procedures, in priority then vertex order."""
    for pid in procedures:
        conf = CONFIGURATIONS[pid]
        for deletion, cast in conf.candidates(g, delta):
            if conf.check(g, delta, cast):
                yield ConfigurationWitness(pid, deletion, cast)


def find_reducible(g: PlanarGraph, delta: int | None = None) -> ConfigurationWitness | None:
    """First reducible configuration in priority order, or None."""
    if delta is None:
        delta = g.max_degree
    return next(iter_witnesses(g, delta), None)
