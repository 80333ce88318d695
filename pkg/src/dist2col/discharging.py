"""Exact-rational discharging for girth-6 plane graphs.

Charges start at ``2d(v) - 6`` on vertices and ``len(f) - 6`` on faces, which
sums to ``-12`` per connected component.  Two rule systems are provided:
``"d7"`` for maximum degree at least 7 and ``"d6"`` for maximum degree 6.
Each rule is one phase; inside a phase every transfer is computed from the
charges at phase entry and then applied at once.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import structure as st
from .graph_core import PlanarGraph

CASES = ("d7", "d6")

Element = tuple[str, int]  # ("v", vertex) or ("f", face index)


class HypothesisRequired(ValueError):
    """The rule system's degree hypothesis is unmet and no override was given."""


@dataclass(frozen=True)
class Transfer:
    source: Element
    target: Element
    amount: Fraction
    rule: str
    phase: int


@dataclass
class ChargeLedger:
    vertex_charge: list[Fraction]
    face_charge: list[Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    # (label, total) recorded after initialisation and after each phase
    phase_totals: list[tuple[str, Fraction]] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.vertex_charge, Fraction(0)) + sum(self.face_charge, Fraction(0))

    def charge(self, e: Element) -> Fraction:
        kind, i = e
        return self.vertex_charge[i] if kind == "v" else self.face_charge[i]

    def _add(self, e: Element, amount: Fraction) -> None:
        kind, i = e
        if kind == "v":
            self.vertex_charge[i] += amount
        else:
            self.face_charge[i] += amount

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(
            list(self.vertex_charge), list(self.face_charge), list(self.transfers), list(self.phase_totals)
        )


def expected_total(g: PlanarGraph) -> int:
    """``-6 (V - E + F)``: -12 for every connected plane graph."""
    return -6 * g.euler_characteristic()


def init_charges(g: PlanarGraph) -> ChargeLedger:
    ledger = ChargeLedger(
        [Fraction(2 * d - 6) for d in g.degrees],
        [Fraction(f.length - 6) for f in g.faces],
    )
    ledger.phase_totals.append(("init", ledger.total()))
    return ledger


def corner_faces(g: PlanarGraph) -> list[list[int]]:
    """For each vertex the faces at its corners, one entry per corner (so ``d(v)`` entries)."""
    out: list[list[int]] = [[] for _ in range(g.n)]
    for j, f in enumerate(g.faces):
        for u, _ in f.darts:
            out[u].append(j)
    return out


def case_for(g: PlanarGraph) -> str | None:
    if g.max_degree >= 7:
        return "d7"
    if g.max_degree == 6:
        return "d6"
    return None


# -- rule helpers ------------------------------------------------------------


Rule = Callable[[PlanarGraph, ChargeLedger, "_Ctx"], list[tuple[Element, Element, Fraction]]]


@dataclass
class _Ctx:
    g: PlanarGraph
    delta: int
    corners: list[list[int]]
    is31: list[bool]
    senior: list[bool]


def _make_ctx(g: PlanarGraph) -> _Ctx:
    return _Ctx(
        g,
        g.max_degree,
        corner_faces(g),
        [st.is_31(g, v) for v in range(g.n)],
        [st.is_senior(g, v) for v in range(g.n)],
    )


def _spread(source: Element, amount: Fraction, targets: list[Element]):
    """Split ``amount`` equally over ``targets`` (repeats count separately)."""
    if amount <= 0 or not targets:
        return []
    share = amount / len(targets)
    per: dict[Element, Fraction] = defaultdict(Fraction)
    for t in targets:
        per[t] += share
    return [(source, t, a) for t, a in per.items()]


def _r_two_vertices(g, led, cx):
    deg = g.degrees
    return [(("v", u), ("v", v), Fraction(1)) for v in range(g.n) if deg[v] == 2 for u in g.rotation[v]]


def _receive_31(pred, amount):
    def rule(g, led, cx):
        return [
            (("v", u), ("v", v), Fraction(amount))
            for v in range(g.n) if cx.is31[v]
            for u in g.rotation[v] if pred(cx, u)
        ]
    return rule


def _d7_r4(g, led, cx):
    deg = g.degrees
    out = []
    for v in range(g.n):
        if deg[v] == 4 and g.n_i(v, 2) == 3:
            for u in g.rotation[v]:
                if deg[u] == 5 and g.n_i(u, 2) <= 3:
                    out.append((("v", u), ("v", v), Fraction(1, 2)))
    return out


def _top_up(qualifies, already_paid):
    """6+-vertices give 1 to qualifying neighbours not already paid 1 earlier.

    Neighbours covered by an earlier unit rule from the same source (2- and
    3(1)-neighbours) are skipped, so each neighbour costs the source 1 in total.
    """
    def rule(g, led, cx):
        deg = g.degrees
        return [
            (("v", v), ("v", u), Fraction(1))
            for v in range(g.n) if deg[v] >= 6
            for u in g.rotation[v]
            if qualifies(cx, u) and not already_paid(cx, u)
        ]
    return rule


def _to_faces(source_ok):
    def rule(g, led, cx):
        out = []
        for v in range(g.n):
            if source_ok(cx, v):
                targets = [("f", j) for j in cx.corners[v]]
                out += _spread(("v", v), led.vertex_charge[v], targets)
        return out
    return rule


def _face_rule(targets_of):
    def rule(g, led, cx):
        out = []
        for j, f in enumerate(g.faces):
            targets = [("v", v) for v in targets_of(cx, f)]
            out += _spread(("f", j), led.face_charge[j], targets)
        return out
    return rule


def _paid_unit(cx, u):
    return cx.g.degrees[u] == 2 or cx.is31[u]


def _d6_r3(g, led, cx):
    deg = g.degrees
    out = []
    for v in range(g.n):
        if not cx.is31[v]:
            continue
        if any(deg[u] >= 6 or cx.senior[u] for u in g.rotation[v]):
            continue
        out += [(("v", u), ("v", v), Fraction(1, 2)) for u in g.rotation[v] if deg[u] >= 4]
    return out


def _d6_r5_target(cx, u):
    g = cx.g
    d, n2 = g.degrees[u], g.n_i(u, 2)
    if d == 2 or cx.is31[u]:
        return True
    if d == 4 and n2 == 3:
        return True
    return d == 4 and n2 == 2 and any(cx.is31[x] for x in g.rotation[u])


def _d6_r4_source(cx, v):
    return cx.g.degrees[v] == 5 and st.poor_count(cx.g, v) <= 3


def _d6_r7_targets(cx, f):
    return [v for v in f.vertices if f.isolated is None and st.badness(cx.g, v) is not None]


RULES: dict[str, tuple[tuple[str, Rule], ...]] = {
    "d7": (
        ("R1", _r_two_vertices),
        ("R2", _receive_31(lambda cx, u: cx.g.degrees[u] >= 6, 1)),
        ("R3", _receive_31(lambda cx, u: cx.g.degrees[u] == 5, Fraction(1, 2))),
        ("R4", _d7_r4),
        ("R5", _top_up(lambda cx, u: cx.g.degrees[u] <= 4, _paid_unit)),
        ("R6", _to_faces(lambda cx, v: cx.g.degrees[v] >= 7)),
        ("R7", _face_rule(lambda cx, f: st.f_crucial_vertices(cx.g, f, cx.delta))),
    ),
    "d6": (
        ("R1", _r_two_vertices),
        ("R2", _receive_31(lambda cx, u: cx.g.degrees[u] >= 6 or cx.senior[u], 1)),
        ("R3", _d6_r3),
        ("R4", _to_faces(_d6_r4_source)),
        ("R5", _top_up(_d6_r5_target, _paid_unit)),
        ("R6", _to_faces(lambda cx, v: cx.g.degrees[v] >= 6)),
        ("R7", _face_rule(_d6_r7_targets)),
    ),
}


def check_case(g: PlanarGraph, case: str, override: bool = False) -> None:
    if case not in RULES:
        raise ValueError(f"unknown rule set {case!r}; expected one of {CASES}")
    ok = g.max_degree >= 7 if case == "d7" else g.max_degree == 6
    if not ok and not override:
        raise HypothesisRequired(
            f"rule set {case} does not apply at maximum degree {g.max_degree}; pass override=True"
        )


def apply_ruleset(
    g: PlanarGraph, ledger: ChargeLedger, case: str, override: bool = False
) -> ChargeLedger:
    """Run phases R1..R7 of ``case`` on a copy of ``ledger``.

    Raises AssertionError if any phase changes the total charge.
    """
    check_case(g, case, override)
    led = ledger.copy()
    cx = _make_ctx(g)
    start = led.total()
    for phase, (name, rule) in enumerate(RULES[case], 1):
        moves = rule(g, led, cx)
        for src, dst, amount in moves:
            assert amount >= 0
            led.transfers.append(Transfer(src, dst, amount, name, phase))
        for src, dst, amount in moves:
            led._add(src, -amount)
            led._add(dst, amount)
        total = led.total()
        led.phase_totals.append((name, total))
        if total != start:
            raise AssertionError(f"charge not conserved after {name}: {total} != {start}")
    return led


def discharge(g: PlanarGraph, case: str | None = None, override: bool = False) -> ChargeLedger:
    case = case or case_for(g)
    if case is None:
        if not override:
            raise HypothesisRequired(f"no rule set for maximum degree {g.max_degree}")
        case = "d6"
    return apply_ruleset(g, init_charges(g), case, override)


def face_shares(g: PlanarGraph, ledger: ChargeLedger, rule: str, source: int) -> list[Fraction]:
    """Amount per corner that vertex ``source`` sent to faces under ``rule``."""
    mult: dict[int, int] = defaultdict(int)
    for j in corner_faces(g)[source]:
        mult[j] += 1
    out = []
    for t in ledger.transfers:
        if t.rule == rule and t.source == ("v", source) and t.target[0] == "f":
            out += [t.amount / mult[t.target[1]]] * mult[t.target[1]]
    return out


@dataclass
class NegativeElement:
    element: Element
    charge: Fraction
    profile: dict
    transfers: list[Transfer]


@dataclass
class DischargeReport:
    total: Fraction
    phase_totals: list[tuple[str, Fraction]]
    negatives: list[NegativeElement]
    # vertices that both sent charge to faces under the 5-vertex rule and received face charge
    dual_role: list[int]

    def summary(self) -> dict:
        return {
            "total": str(self.total),
            "phase_totals": [[name, str(t)] for name, t in self.phase_totals],
            "negatives": [
                {"element": list(n.element), "charge": str(n.charge), **n.profile} for n in self.negatives
            ],
            "dual_role": self.dual_role,
        }


def final_report(g: PlanarGraph, ledger: ChargeLedger) -> DischargeReport:
    corners = corner_faces(g)
    faces = g.faces
    negatives = []
    for v, ch in enumerate(ledger.vertex_charge):
        if ch < 0:
            p = st.classify_vertex(g, v)
            profile = {
                "degree": p.degree,
                "class": p.kd,
                "special": p.special_type,
                "badness": p.badness,
                "face_lengths": sorted(faces[j].length for j in corners[v]),
            }
            trail = [t for t in ledger.transfers if ("v", v) in (t.source, t.target)]
            negatives.append(NegativeElement(("v", v), ch, profile, trail))
    for j, ch in enumerate(ledger.face_charge):
        if ch < 0:
            trail = [t for t in ledger.transfers if ("f", j) in (t.source, t.target)]
            negatives.append(NegativeElement(("f", j), ch, {"length": faces[j].length}, trail))

    senders = {t.source[1] for t in ledger.transfers if t.rule == "R4" and t.target[0] == "f"}
    receivers = {t.target[1] for t in ledger.transfers if t.rule == "R7"}
    return DischargeReport(ledger.total(), list(ledger.phase_totals), negatives, sorted(senders & receivers))
