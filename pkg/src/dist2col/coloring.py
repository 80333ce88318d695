"""2-distance colorings: validity, exact search, extension scripts and the
constructive (delta + 4)-colorer.

Colors are the integers ``1..palette_size``.  A 2-distance coloring of ``G``
is a proper coloring of the square graph ``G^2``.
"""

from __future__ import annotations

import logging
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from . import structure as st
from .graph_core import PlanarGraph, bfs_distances, delete_vertex, lift_vertex
from .structure import ConfigurationWitness

log = logging.getLogger(__name__)


class ColoringError(Exception):
    pass


class ScriptStuck(ColoringError):
    """An extension script met a vertex with no available color."""

    def __init__(self, vertex: int, forbidden: set[int], procedure: str | None = None):
        super().__init__(
            f"{procedure or 'recolor'}: vertex {vertex} has no available color "
            f"({len(forbidden)} forbidden)"
        )
        self.vertex = vertex
        self.forbidden = forbidden
        self.procedure = procedure


class HypothesisError(ColoringError):
    """Input violates girth >= 6, max degree >= 6 or the embedding requirement."""


class InfeasibleError(ColoringError):
    """No (delta + 4)-coloring was found although one always exists for girth >= 6, delta >= 6."""


class SearchBudgetExceeded(ColoringError):
    def __init__(self, lower: int, upper: int, coloring: "Coloring"):
        super().__init__(f"search budget exhausted with {lower} <= chi2 <= {upper}")
        self.lower = lower
        self.upper = upper
        self.coloring = coloring


@dataclass
class Coloring:
    assignment: dict[int, int]
    palette_size: int

    def copy(self) -> "Coloring":
        return Coloring(dict(self.assignment), self.palette_size)

    def __getitem__(self, v: int) -> int | None:
        return self.assignment.get(v)

    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def as_list(self, n: int) -> list[int | None]:
        return [self.assignment.get(v) for v in range(n)]


def forbidden_colors(g: PlanarGraph, c: Coloring, v: int) -> set[int]:
    a = c.assignment
    return {a[u] for u in g.square[v] if u in a}


def available_colors(g: PlanarGraph, c: Coloring, v: int) -> set[int]:
    return set(range(1, c.palette_size + 1)) - forbidden_colors(g, c, v)


def first_conflict(g: PlanarGraph, c: Coloring) -> tuple[int, int, int] | None:
    """First pair ``(u, w, distance)`` at distance <= 2 sharing a color."""
    a = c.assignment
    for u in sorted(a):
        for w in sorted(g.square[u]):
            if w > u and a.get(w) == a[u]:
                dist = 1 if w in g.adj[u] else 2
                return u, w, dist
    return None


def is_valid(g: PlanarGraph, c: Coloring, require_total: bool = False) -> bool:
    a = c.assignment
    if any(not 0 <= v < g.n for v in a):
        return False
    if any(not 1 <= col <= c.palette_size for col in a.values()):
        return False
    if require_total and len(a) != g.n:
        return False
    return first_conflict(g, c) is None


def recolor_chain(g: PlanarGraph, c: Coloring, ordered_vertices: Iterable[int]) -> Coloring:
    """Color the listed (uncolored) vertices in order, lowest available color first.

    The input is never modified; :class:`ScriptStuck` names the first vertex
    left without a color.
    """
    out = c.copy()
    for v in ordered_vertices:
        if v in out.assignment:
            raise ValueError(f"vertex {v} is already colored")
        avail = available_colors(g, out, v)
        if not avail:
            raise ScriptStuck(v, forbidden_colors(g, out, v))
        out.assignment[v] = min(avail)
    return out


# -- exact search ------------------------------------------------------------


def _dsatur(
    adj: Sequence[Iterable[int]],
    k: int,
    precolored: Mapping[int, int] | None = None,
    deadline: float | None = None,
    rng: random.Random | None = None,
) -> list[int] | None:
    """Proper k-coloring of ``adj`` (colors 0..k-1) by DSATUR backtracking, or None.

    With ``rng`` the color order and tie-breaks are randomized (used for
    sampling); otherwise the search is deterministic and breaks color
    symmetry by opening at most one new color per branch.
    """
    n = len(adj)
    nbrs = [list(a) for a in adj]
    color = [-1] * n
    cnt = [[0] * k for _ in range(n)]
    sat = [0] * n  # bitmask of colors seen on neighbours
    deg = [len(a) for a in nbrs]
    jitter = [rng.random() for _ in range(n)] if rng else [0.0] * n
    uncolored = set(range(n))
    steps = 0

    def assign(v: int, col: int) -> None:
        color[v] = col
        uncolored.discard(v)
        for u in nbrs[v]:
            cnt[u][col] += 1
            sat[u] |= 1 << col

    def unassign(v: int) -> None:
        col = color[v]
        color[v] = -1
        uncolored.add(v)
        for u in nbrs[v]:
            cnt[u][col] -= 1
            if cnt[u][col] == 0:
                sat[u] &= ~(1 << col)

    for v, col in (precolored or {}).items():
        if sat[v] >> col & 1:
            return None
        assign(v, col)
    max_used = max(color, default=-1)

    def rec(max_used: int) -> bool:
        nonlocal steps
        if not uncolored:
            return True
        steps += 1
        if deadline is not None and steps % 256 == 0 and time.monotonic() > deadline:
            raise TimeoutError
        v = max(uncolored, key=lambda x: (bin(sat[x]).count("1"), deg[x], jitter[x], -x))
        if rng is not None:
            cols = [c for c in range(k) if not sat[v] >> c & 1]
            rng.shuffle(cols)
        else:
            cols = [c for c in range(min(max_used + 2, k)) if not sat[v] >> c & 1]
        for col in cols:
            assign(v, col)
            if rec(max(max_used, col)):
                return True
            unassign(v)
        return False

    return list(color) if rec(max_used) else None


def _greedy_upper(adj: Sequence[Iterable[int]]) -> list[int]:
    n = len(adj)
    sol = _dsatur(adj, max(n, 1))
    assert sol is not None
    return sol


def _clique_lower(g: PlanarGraph) -> int:
    """Size of a clique of the square graph grown greedily from each closed neighbourhood."""
    sq = g.square
    best = 1 if g.n else 0
    for v in range(g.n):
        clique = {v} | set(g.rotation[v])
        # closed neighbourhoods are cliques of the square; extend greedily
        for x in sorted(set().union(*(sq[u] for u in clique)) - clique if clique else ()):
            if all(x in sq[y] for y in clique):
                clique.add(x)
        best = max(best, len(clique))
    return best


def color_with_palette(
    g: PlanarGraph, k: int, budget_ms: float | None = None
) -> Coloring | None:
    """A 2-distance coloring with at most ``k`` colors, or None if none exists."""
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    sol = _dsatur(g.square, k, deadline=deadline)
    if sol is None:
        return None
    return Coloring({v: col + 1 for v, col in enumerate(sol)}, k)


def exact_chi2(
    g: PlanarGraph, upper_bound_hint: int | None = None, budget_ms: float | None = None
) -> tuple[int, Coloring]:
    """Exact 2-distance chromatic number with a witness coloring.

    Bounds: greedy DSATUR on the square from above, the largest greedily
    grown clique of the square from below; decisions are then solved for
    increasing palette sizes.  Raises :class:`SearchBudgetExceeded` when
    ``budget_ms`` runs out.
    """
    if g.n == 0:
        return 0, Coloring({}, 0)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    sq = g.square
    greedy = _greedy_upper(sq)
    best = Coloring({v: col + 1 for v, col in enumerate(greedy)}, max(greedy) + 1)
    # a hint is trusted as feasible: the search never tries more colors than it
    stop = best.palette_size if upper_bound_hint is None else min(upper_bound_hint, best.palette_size)
    lower = _clique_lower(g)
    for k in range(lower, stop + 1):
        if k == best.palette_size:
            return k, best
        try:
            if deadline is not None and time.monotonic() > deadline:
                raise TimeoutError
            sol = _dsatur(sq, k, deadline=deadline)
        except TimeoutError:
            raise SearchBudgetExceeded(k, stop, best) from None
        if sol is not None:
            return k, Coloring({v: col + 1 for v, col in enumerate(sol)}, k)
    raise ValueError(f"upper bound hint {upper_bound_hint} is not achievable")


def brute_force_chi2(g: PlanarGraph, cap: int = 12) -> int:
    """Exhaustive oracle: minimum number of classes over all set partitions of V
    into independent sets of the square (vertices taken in id order)."""
    if g.n > cap:
        raise ValueError(f"brute force limited to {cap} vertices, got {g.n}")
    n = g.n
    if n == 0:
        return 0
    sq = [set(s) for s in g.square]
    color = [0] * n
    best = n

    def rec(v: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if v == n:
            best = used
            return
        for col in range(1, used + 2):
            if all(color[u] != col for u in sq[v] if u < v):
                color[v] = col
                rec(v + 1, max(used, col))
        color[v] = 0

    rec(0, 0)
    return best


def random_coloring(
    g: PlanarGraph,
    k: int,
    rng: random.Random,
    precolored: Mapping[int, int] | None = None,
) -> Coloring | None:
    """A randomized valid k-coloring (1-based), optionally extending ``precolored``."""
    pre = {v: col - 1 for v, col in (precolored or {}).items()}
    sol = _dsatur(g.square, k, precolored=pre, rng=rng)
    if sol is None:
        return None
    return Coloring({v: col + 1 for v, col in enumerate(sol)}, k)


# -- extension scripts -------------------------------------------------------


class _Run:
    """Working state of one extension script on ``G``."""

    def __init__(self, g: PlanarGraph, c: Coloring, procedure: str, trace: list | None):
        self.g = g
        self.c = c
        self.procedure = procedure
        self.trace = trace
        self.delta = c.palette_size - 4

    def decolor(self, *vs: int) -> None:
        for v in vs:
            self.c.assignment.pop(v, None)

    def same(self, a: int, b: int) -> bool:
        col = self.c.assignment.get(a)
        return col is not None and col == self.c.assignment.get(b)

    def color(self, v: int, role: str, bound: int | None = None) -> None:
        forb = forbidden_colors(self.g, self.c, v)
        if self.trace is not None:
            self.trace.append((role, v, len(forb), bound))
        if len(forb) >= self.c.palette_size:
            raise ScriptStuck(v, forb, self.procedure)
        self.c.assignment[v] = min(set(range(1, self.c.palette_size + 1)) - forb)


def _finish_two(run: _Run, t: int, role: str = "t") -> None:
    """A 2-vertex next to a 3-vertex sees at most delta + 3 colors."""
    run.color(t, role, run.delta + 3)


def _script_deg1(run: _Run, k: Mapping[str, int]) -> None:
    run.color(k["u"], "u", run.delta)


def _script_adj2(run: _Run, k) -> None:
    d = run.delta
    if run.same(k["w"], k["v"]):
        run.decolor(k["v"])
        run.color(k["v"], "v", d + 1)
    run.color(k["u"], "u", d + 2)


def _script_two_next_to_three(run: _Run, k) -> None:
    _finish_two(run, k["u"], "u")


def _script_deg3_lowd(run: _Run, k) -> None:
    d = run.delta
    if run.same(k["w"], k["v"]):
        run.decolor(k["v"])
        run.color(k["v"], "v", d + 3)
    run.color(k["u"], "u", d + 3)


def _script_deg3_31chain(run: _Run, k) -> None:
    run.decolor(k["t"])
    _script_deg3_lowd(run, k)
    _finish_two(run, k["t"])


def _script_deg4_lowd(run: _Run, k) -> None:
    d = run.delta
    run.decolor(k["v"])
    run.color(k["u"], "u", d + 3)
    run.color(k["v"], "v", d + 3)


def _script_deg4_31(run: _Run, k) -> None:
    run.decolor(k["t"])
    _script_deg4_lowd(run, k)
    _finish_two(run, k["t"])


def _script_deg4_three31(run: _Run, k) -> None:
    d = run.delta
    ts = [k["t1"], k["t2"], k["t3"]]
    run.decolor(k["v"], *ts)
    run.color(k["u"], "u", d + 3)
    run.color(k["v"], "v", 8)
    for i, t in enumerate(ts, 1):
        _finish_two(run, t, f"t{i}")


def _script_special_d6_12(run: _Run, k) -> None:
    t = k.get("t")
    run.decolor(k["u2"], k["v"])
    if t is not None:
        run.decolor(t)
    run.color(k["v"], "v", 9)
    run.color(k["u2"], "u2", 9)
    run.color(k["u1"], "u1", 9)
    if t is not None:
        _finish_two(run, t)


def _script_special_d6_34(run: _Run, k) -> None:
    t = k.get("t")
    if t is not None:
        run.decolor(t)
    if run.same(k["z"], k["v"]):
        run.decolor(k["v"])
        run.color(k["v"], "v", 9)
    run.color(k["u"], "u", 9)
    if t is not None:
        _finish_two(run, t)


def _script_special_d7(run: _Run, k) -> None:
    d = run.delta
    v, u, z, t = k["v"], k["u"], k["z"], k.get("t")
    kind = st.special_type(run.g, v)
    if t is not None:
        run.decolor(t)
    if kind in (st.TYPE_I, st.TYPE_II):
        if run.same(z, v):
            run.decolor(v)
            run.color(v, "v", d + 3)
        run.color(u, "u", d + 3)
    else:
        run.decolor(v)
        run.color(u, "u", d + 3)
        run.color(v, "v", d + 3 if kind == st.TYPE_III else 10)
    if t is not None:
        _finish_two(run, t)


def _script_type2_54(run: _Run, k) -> None:
    d = run.delta
    run.decolor(k["u"], k["v"])
    run.color(k["u"], "u", d + 3)
    run.color(k["v"], "v", d + 3)
    run.color(k["w"], "w", 10)


@dataclass(frozen=True)
class ExtensionProcedure:
    id: str
    precondition: str
    script: Callable[[_Run, Mapping[str, int]], None]
    # True when the input coloring must already be proper in G (u uncolored)
    needs_proper_lift: bool = False


CATALOG: dict[str, ExtensionProcedure] = {
    p.id: p
    for p in (
        ExtensionProcedure(st.DEG1, "vertex of degree at most 1", _script_deg1),
        ExtensionProcedure(st.ADJ2, "two adjacent 2-vertices u, v", _script_adj2),
        ExtensionProcedure(
            st.TWO_NEXT_TO_THREE,
            "uncolored 2-vertex u adjacent to a 3-vertex",
            _script_two_next_to_three,
            needs_proper_lift=True,
        ),
        ExtensionProcedure(st.DEG3_LOWD, "3-vertex v with 2-neighbour u and D(v) <= delta+4", _script_deg3_lowd),
        ExtensionProcedure(
            st.DEG3_31CHAIN,
            "3-vertex v with 2-neighbour u and a 3-neighbour z carrying a 2-vertex t",
            _script_deg3_31chain,
        ),
        ExtensionProcedure(st.DEG4_LOWD, "4-vertex v with 2-neighbour u and D(v) <= delta+3", _script_deg4_lowd),
        ExtensionProcedure(
            st.DEG4_31,
            "4-vertex v with 2-neighbour u, 3(1)-neighbour z and D(v) <= delta+4",
            _script_deg4_31,
        ),
        ExtensionProcedure(
            st.DEG4_THREE31, "4-vertex v with a 2-neighbour and three 3(1)-neighbours", _script_deg4_three31
        ),
        ExtensionProcedure(
            st.SPECIAL_D6_TYPE12,
            "delta = 6, special vertex of type I/II weak-adjacent to a 5^- vertex",
            _script_special_d6_12,
        ),
        ExtensionProcedure(
            st.SPECIAL_D6_TYPE34,
            "delta = 6, special vertex of type III/IV weak-adjacent to a 4^- vertex",
            _script_special_d6_34,
        ),
        ExtensionProcedure(
            st.SPECIAL_D7,
            "delta >= 7, special vertex weak-adjacent to a (delta-1)^- vertex",
            _script_special_d7,
        ),
        ExtensionProcedure(
            st.TYPE2_54,
            "delta >= 7, type II vertex v whose 5(4)-neighbour u is weak-adjacent to a 5^- vertex z via w",
            _script_type2_54,
        ),
    )
}


def lift_coloring(c: Coloring, deleted: int) -> Coloring:
    return Coloring({lift_vertex(deleted, v): col for v, col in c.assignment.items()}, c.palette_size)


def apply_extension(
    g: PlanarGraph,
    c_of_g_minus_u: Coloring,
    w: ConfigurationWitness,
    trace: list | None = None,
    check_input: bool = True,
) -> Coloring:
    """Extend a coloring of ``G - w.deletion_vertex`` to ``G`` by the witness' script.

    The palette size of the input fixes ``delta = palette - 4``.  ``trace``,
    when given, collects ``(role, vertex, forbidden_count, bound)`` for
    every vertex the script colors.
    """
    proc = CATALOG[w.procedure_id]
    delta = c_of_g_minus_u.palette_size - 4
    u = w.deletion_vertex
    if check_input:
        if not st.validate_witness(g, delta, w):
            raise ColoringError(f"witness {w} does not hold in this graph")
        h = delete_vertex(g, u)
        if not is_valid(h, c_of_g_minus_u, require_total=True):
            raise ColoringError("input is not a valid total coloring of G - u")
    c = lift_coloring(c_of_g_minus_u, u)
    if proc.needs_proper_lift and not is_valid(g, c):
        raise ColoringError(f"{proc.id} needs a coloring that is proper in G with u uncolored")
    run = _Run(g, c, proc.id, trace)
    proc.script(run, dict(w.cast))
    if not is_valid(g, run.c, require_total=True):
        conflict = first_conflict(g, run.c)
        raise ScriptStuck(conflict[0] if conflict else u, set(), proc.id)
    return run.c


# -- constructive colorer ----------------------------------------------------


@dataclass
class ConstructiveRun:
    coloring: Coloring
    delta: int
    fallbacks: int = 0
    residual_size: int = 0
    steps: Counter = field(default_factory=Counter)


def check_hypothesis(g: PlanarGraph) -> None:
    if g.max_degree < 6:
        raise HypothesisError(f"maximum degree {g.max_degree} < 6")
    if g.girth < 6:
        raise HypothesisError(f"girth {g.girth} < 6")
    if not g.embedded or not g.is_plane():
        raise HypothesisError("graph is not given with a plane embedding")


def constructive_run(
    g: PlanarGraph, override_hypothesis: bool = False, budget_ms: float | None = None
) -> ConstructiveRun:
    """Peel reducible configurations, color the residue exactly, then extend back.

    The palette stays at ``delta + 4`` for the root's maximum degree throughout.
    """
    if not override_hypothesis:
        check_hypothesis(g)
    delta = g.max_degree
    palette = delta + 4
    stack: list[tuple[PlanarGraph, ConfigurationWitness]] = []
    cur = g
    while True:
        w = st.find_reducible(cur, delta)
        if w is None:
            break
        stack.append((cur, w))
        cur = delete_vertex(cur, w.deletion_vertex)

    run = ConstructiveRun(Coloring({}, palette), delta, residual_size=cur.n)
    if cur.n:
        run.fallbacks = 1
        log.info("no reducible configuration left; exact search on %d residual vertices", cur.n)
        try:
            base = color_with_palette(cur, palette, budget_ms)
        except TimeoutError:
            raise InfeasibleError("budget exhausted coloring the residual graph") from None
        if base is None:
            raise InfeasibleError(
                f"residual graph on {cur.n} vertices has no {palette}-coloring"
            )
    else:
        base = Coloring({}, palette)

    c = base
    for graph, w in reversed(stack):
        c = apply_extension(graph, c, w, check_input=False)
        run.steps[w.procedure_id] += 1
    if not is_valid(g, c, require_total=True):
        raise InfeasibleError("constructive coloring failed validation")
    run.coloring = c
    return run


def constructive_color(g: PlanarGraph, override_hypothesis: bool = False) -> Coloring:
    return constructive_run(g, override_hypothesis).coloring


def distance(g: PlanarGraph, u: int, w: int) -> int | None:
    return bfs_distances(g, u).get(w)
