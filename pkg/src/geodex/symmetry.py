"""Arc-, geodesic- and distance-transitivity, local actions, b_2/b_3 forcing."""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Iterator

from .autsearch import is_automorphism
from .errors import HypothesisNotMet, NotAutomorphisms, NotTransitive
from .graph import (Graph, diameter, enumerate_s_arcs, enumerate_s_geodesics,
                    intersection_numbers)
from .perm import (PermGroup, action_on_set, is_primitive, is_two_primitive, is_two_transitive,
                   stabilizer, transitivity_degree, tuple_orbit_gap)


class Mode(str, enum.Enum):
    ARC = "arc"
    GEODESIC = "geodesic"
    DISTANCE = "distance"


def check_automorphisms(g: Graph, group: PermGroup) -> None:
    if group.degree != g.n:
        raise NotAutomorphisms(f"group degree {group.degree} != {g.n} vertices")
    for k, p in enumerate(group.gens):
        if not is_automorphism(g, p):
            raise NotAutomorphisms(f"generator {k} does not preserve adjacency")


def is_vertex_transitive(g: Graph, group: PermGroup) -> bool:
    check_automorphisms(g, group)
    return len(group.orbit(0)) == g.n if g.n else True


def distance_pairs(g: Graph, i: int) -> Iterator[tuple[int, int]]:
    dm = g.distance_matrix()
    for u in range(g.n):
        for v in (dm[u] == i).nonzero()[0].tolist():
            yield u, v


def tuples(g: Graph, mode: Mode, s: int) -> Iterator[tuple[int, ...]]:
    mode = Mode(mode)
    if mode is Mode.ARC:
        return enumerate_s_arcs(g, s)
    if mode is Mode.GEODESIC:
        return enumerate_s_geodesics(g, s)
    return distance_pairs(g, s)


@dataclass(frozen=True)
class LevelResult:
    s: int
    count: int
    transitive: bool
    seed: tuple[int, ...] | None
    witness: tuple[int, ...] | None = None


@dataclass
class TransitivityReport:
    mode: Mode
    max_s: int
    per_s: list[LevelResult] = field(default_factory=list)
    group_label: str = "supplied group"

    def transitive_at(self, s: int) -> bool:
        return self.max_s >= s

    def to_dict(self) -> dict:
        return {"mode": self.mode.value, "group": self.group_label, "max_s": self.max_s,
                "per_s": [_level_dict(r) for r in self.per_s]}


def _level_dict(r: LevelResult) -> dict:
    d = {"s": r.s, "count": r.count, "transitive": r.transitive,
         "seed": list(r.seed) if r.seed is not None else None}
    if not r.transitive:
        d["witness"] = list(r.witness) if r.witness is not None else None
    return d


def transitivity(g: Graph, group: PermGroup, mode: Mode | str, s_max: int,
                 cap: int | None = None, group_label: str = "supplied group") -> TransitivityReport:
    """Test transitivity on s-arcs / s-geodesics / distance-s pairs for s = 1..s_max."""
    mode = Mode(mode)
    check_automorphisms(g, group)
    diameter(g)
    report = TransitivityReport(mode, 0, group_label=group_label)
    cumulative = True
    for s in range(1, s_max + 1):
        stream = tuples(g, mode, s)
        seed = next(stream, None)
        if seed is None:
            report.per_s.append(LevelResult(s, 0, False, None, ()))
            cumulative = False
            continue
        count = 0

        def counted():
            nonlocal count
            for t in tuples(g, mode, s):
                count += 1
                yield t

        gap = tuple_orbit_gap(group, seed, counted(), cap)
        ok = gap is None
        report.per_s.append(LevelResult(s, count, ok, tuple(seed), gap))
        cumulative = cumulative and ok
        if cumulative:
            report.max_s = s
    return report


def is_geodesic_transitive(g: Graph, group: PermGroup, cap: int | None = None) -> bool:
    d = diameter(g)
    return transitivity(g, group, Mode.GEODESIC, d, cap).max_s == d


def orbit_size_by_stabilizers(group: PermGroup, t: tuple[int, ...]) -> int:
    """|G| / |G_(t)| using a stabiliser chain through the points of ``t``."""
    pts = list(dict.fromkeys(t))
    return group.order() // group.pointwise_stabilizer(pts).order()


@dataclass(frozen=True)
class LocalAction:
    vertex: int
    degree: int
    order: int
    kernel_order: int
    faithful: bool
    two_transitive: bool
    primitive: bool
    two_primitive: bool
    transitivity_degree: int
    induced: PermGroup = field(repr=False, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("induced")
        return d


def local_action(g: Graph, group: PermGroup, u: int) -> LocalAction:
    if not is_vertex_transitive(g, group):
        raise NotTransitive("local action needs a vertex-transitive group")
    act = action_on_set(stabilizer(group, u), g.neighbors(u))
    h = act.group
    transitive = h.is_transitive()
    return LocalAction(
        vertex=u,
        degree=len(act.labels),
        order=h.order(),
        kernel_order=act.kernel_order,
        faithful=act.faithful,
        two_transitive=transitive and is_two_transitive(h),
        primitive=transitive and is_primitive(h),
        two_primitive=transitive and is_two_primitive(h),
        transitivity_degree=transitivity_degree(h),
        induced=h,
    )


@dataclass(frozen=True)
class ForcingReport:
    b2: int | None
    b3: int | None
    route: str
    geodesic_transitive: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _b(g: Graph, i: int) -> int | None:
    if i > diameter(g):
        return 0
    nums = intersection_numbers(g, i)
    return nums.b if nums else None


def remark_23_forcing(g: Graph, group: PermGroup, cap: int | None = None) -> ForcingReport:
    """If g is (G,2)-geodesic-transitive with b_2 <= 1, or (G,3)- with b_3 <= 1,
    confirm that g is geodesic-transitive on this instance."""
    d = diameter(g)
    rep = transitivity(g, group, Mode.GEODESIC, min(3, d), cap)
    b2 = _b(g, 2) if rep.max_s >= 2 else None
    b3 = _b(g, 3) if rep.max_s >= 3 or (rep.max_s >= 2 and d < 3) else None
    if b2 is not None and b2 <= 1:
        route = "b2"
    elif b3 is not None and b3 <= 1:
        route = "b3"
    else:
        raise HypothesisNotMet(f"need (G,2)-GT with b_2<=1 or (G,3)-GT with b_3<=1; "
                               f"geodesic-transitive up to s={rep.max_s}, b_2={b2}, b_3={b3}")
    if d <= rep.max_s:
        gt = True
    else:
        gt = transitivity(g, group, Mode.GEODESIC, d, cap).max_s == d
    return ForcingReport(b2, b3, route, gt)


def lifted_group(group: PermGroup) -> PermGroup:
    """G x <tau> acting on the standard double cover (vertex x + n*i)."""
    n = group.degree
    gens = [tuple(g) + tuple(n + x for x in g) for g in group.gens]
    tau = tuple(range(n, 2 * n)) + tuple(range(n))
    return PermGroup(gens + [tau], 2 * n)


__all__ = [
    "Mode", "TransitivityReport", "LevelResult", "LocalAction", "ForcingReport",
    "check_automorphisms", "is_vertex_transitive", "transitivity", "is_geodesic_transitive",
    "local_action", "remark_23_forcing", "orbit_size_by_stabilizers", "lifted_group",
]
