"""Census runs: construct graphs, compute invariants and symmetry, emit verdicts.

Every claim in a report is PASS, FAIL or SKIPPED.  A FAIL always carries a
witness (an offending tuple, vertex pair, cell or the observed value).
Symmetry results are always for G = Aut(graph) as computed here.
"""
from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Callable

from . import constructions as C
from .autsearch import SearchResult, are_isomorphic, search_automorphisms
from .errors import BadParameter, BudgetExceeded, TupleBudgetExceeded, UnknownName
from .graph import (INFINITE, Graph, IntersectionArray, bipartition, diameter, girth,
                    intersection_array, intersection_numbers, is_connected, srg_params)
from .perm import PermGroup
from .quotients import antipodal_partition, cover_witness, quotient_graph, recognize_sdc
from .symmetry import Mode, local_action, orbit_size_by_stabilizers, transitivity

SCHEMA_VERSION = "1.0"
GROUP_SCOPE = "all symmetry results are for G = Aut(graph), computed by the automorphism search"


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass
class Claim:
    name: str
    verdict: Verdict
    expected: Any = None
    observed: Any = None
    witness: Any = None
    reason: str | None = None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"claim": self.name, "verdict": self.verdict.value}
        if self.expected is not None:
            d["expected"] = self.expected
        if self.observed is not None:
            d["observed"] = self.observed
        if self.verdict is Verdict.FAIL:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d


@dataclass
class CensusItem:
    id: str
    params: dict = field(default_factory=dict)
    aut_order: int | None = None
    transitivity: list = field(default_factory=list)
    covers: list = field(default_factory=list)
    claims: list[Claim] = field(default_factory=list)
    wall_time: float = 0.0
    budget_skipped: bool = False

    def check(self, name: str, ok: bool, expected: Any = None, observed: Any = None,
              witness: Any = None) -> bool:
        if ok:
            self.claims.append(Claim(name, Verdict.PASS, expected, observed))
        else:
            self.claims.append(Claim(name, Verdict.FAIL, expected, observed,
                                     witness if witness is not None else {"observed": observed}))
        return ok

    def skip(self, name: str, reason: str, budget: bool = False) -> None:
        self.claims.append(Claim(name, Verdict.SKIPPED, reason=reason))
        self.budget_skipped = self.budget_skipped or budget

    def to_dict(self, timings: bool = False) -> dict:
        d = {"id": self.id, "params": self.params, "aut_order": self.aut_order,
             "transitivity": self.transitivity, "covers": self.covers,
             "claims": [c.to_dict() for c in self.claims]}
        if timings:
            d["wall_time"] = round(self.wall_time, 3)
        return d


@dataclass
class CensusReport:
    command: str
    items: list[CensusItem]
    notes: list[str] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {v.value: 0 for v in Verdict}
        for it in self.items:
            for c in it.claims:
                out[c.verdict.value] += 1
        return out

    def exit_code(self) -> int:
        if any(c.verdict is Verdict.FAIL for it in self.items for c in it.claims):
            return 1
        if any(it.budget_skipped for it in self.items):
            return 2
        return 0

    def to_dict(self, timestamp: str | None = None, timings: bool = False) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "generated_at": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "group_scope": GROUP_SCOPE,
            "summary": self.counts(),
            "items": [it.to_dict(timings) for it in self.items],
            "notes": self.notes,
        }


# ------------------------------------------------------------ building blocks

def build(name: str, params: dict[str, str] | None = None) -> Graph:
    """Registry lookup with string parameters converted to the declared types."""
    entry = C.REGISTRY.get(name)
    if entry is None:
        raise UnknownName(f"unknown construction {name!r}; known: {', '.join(sorted(C.REGISTRY))}")
    kwargs = {}
    for key, raw in (params or {}).items():
        if key not in entry.params:
            raise BadParameter(f"{name} takes no parameter {key!r}")
        try:
            kwargs[key] = entry.params[key](raw)
        except (TypeError, ValueError):
            raise BadParameter(f"{key}={raw!r} is not a valid {entry.params[key].__name__}") from None
    missing = [k for k in entry.params if k not in kwargs]
    try:
        return entry.build(**kwargs)
    except TypeError as exc:
        raise BadParameter(f"{name}: missing parameters {missing}") from exc
    except ValueError as exc:
        raise BadParameter(f"{name}: {exc}") from exc


def _num(x: float | int) -> int | None:
    return None if x == INFINITE else int(x)


def graph_params(g: Graph) -> dict:
    connected = is_connected(g)
    srg = srg_params(g)
    arr = intersection_array(g)
    return {
        "n": g.n,
        "m": g.edge_count,
        "valency": g.valency(),
        "girth": _num(girth(g)),
        "diameter": diameter(g) if connected else None,
        "srg": list(srg.as_tuple()) if srg else None,
        "intersection_array": arr.as_list() if arr else None,
        "bipartite": bool(bipartition(g)),
    }


def analyze(g: Graph) -> dict:
    d = graph_params(g)
    d["degrees"] = g.degrees()
    return d


def srg_witness(g: Graph, expected: tuple[int, int, int, int]) -> dict:
    """Smallest vertex or pair breaking SRG(n,k,a,c)."""
    n, k, a, c = expected
    if g.n != n:
        return {"n": g.n}
    for v in range(n):
        if g.degree(v) != k:
            return {"vertex": v, "degree": g.degree(v)}
    for u in range(n):
        for v in range(u + 1, n):
            common = (g.adj[u] & g.adj[v]).bit_count()
            want = a if g.has_edge(u, v) else c
            if common != want:
                return {"pair": [u, v], "adjacent": g.has_edge(u, v), "common": common}
    return {"srg": None}


def _aut(item: CensusItem, g: Graph) -> SearchResult:
    res = search_automorphisms(g)
    item.aut_order = res.order
    return res


def _transitivity(item: CensusItem, g: Graph, group: PermGroup, mode: Mode, s: int):
    rep = transitivity(g, group, mode, s, group_label="Aut(graph)")
    item.transitivity.append(rep.to_dict())
    return rep


def _check_transitive(item: CensusItem, name: str, rep, s: int) -> bool:
    bad = next((r for r in rep.per_s if r.s <= s and not r.transitive), None)
    witness = None
    if bad is not None:
        witness = {"s": bad.s, "seed": list(bad.seed or ()), "outside_orbit": list(bad.witness or ())}
    return item.check(name, rep.max_s >= s, expected=s, observed=rep.max_s, witness=witness)


def _check_array(item: CensusItem, g: Graph, expected: str) -> None:
    arr = intersection_array(g)
    want = IntersectionArray.parse(expected)
    item.check("intersection_array", arr == want, expected=want.as_list(),
               observed=arr.as_list() if arr else None,
               witness={"intersection_array": arr.as_list() if arr else str(arr)})


def _check_iso(item: CensusItem, name: str, g: Graph, h: Graph, h_name: str) -> None:
    ok, _ = are_isomorphic(g, h)
    item.check(name, ok, expected=h_name, observed=h_name if ok else "not isomorphic",
               witness={"n": g.n, "edges": g.edge_count, "reference_n": h.n,
                        "reference_edges": h.edge_count})


def _orbit_count_check(item: CensusItem, group: PermGroup, rep, s: int) -> None:
    lvl = next((r for r in rep.per_s if r.s == s), None)
    if lvl is None or not lvl.transitive:
        item.skip(f"orbit_count_{s}", f"not transitive at level {s}")
        return
    size = orbit_size_by_stabilizers(group, lvl.seed)
    item.check(f"orbit_count_{s}", size == lvl.count, expected=lvl.count, observed=size,
               witness={"seed": list(lvl.seed), "orbit_by_stabilizers": size})


def _quotient_shape(q: Graph, qgirth: int | None, cover_girth: int | None) -> str:
    """Which of the three possible shapes the quotient takes."""
    if q.edge_count == q.n * (q.n - 1) // 2:
        return "complete"
    if srg_params(q):
        return "strongly_regular"
    if is_connected(q) and diameter(q) >= 3 and qgirth == cover_girth:
        return "diameter_ge_3_same_girth"
    return "none"


def _check_cover(item: CensusItem, g: Graph, cells: list[list[int]], group: PermGroup,
                 quotient_ref: Graph, quotient_name: str, fold: int) -> Graph:
    """Cover property, fold, quotient identity, girth bound and induced symmetry on the quotient."""
    q = quotient_graph(g, cells).graph
    sizes = sorted({len(c) for c in cells})
    item.check("fold", sizes == [fold], expected=fold, observed=sizes,
               witness={"cell_sizes": sizes})
    wit = cover_witness(g, cells)
    item.check("cover", wit is None, expected=True, observed=wit is None,
               witness=None if wit is None else {"vertex": wit[0], "cell": list(cells[wit[1]]),
                                                  "neighbours_in_cell": wit[2]})
    _check_iso(item, "quotient_isomorphic", q, quotient_ref, quotient_name)
    gg, qg = _num(girth(g)), _num(girth(q))
    item.check("quotient_girth_at_most_cover_girth", qg is None or (gg is not None and qg <= gg),
               expected=f"<= {gg}", observed=qg, witness={"quotient_girth": qg, "cover_girth": gg})
    shape = _quotient_shape(q, qg, gg)
    item.check("quotient_shape", shape != "none", observed=shape, witness={"quotient": graph_params(q)})
    block = quotient_graph(g, cells).block_of
    induced = PermGroup([tuple(block[p[c[0]]] for c in cells) for p in group.gens], len(cells))
    s_prime = min(3, diameter(q))
    rep = transitivity(q, induced, Mode.GEODESIC, s_prime, group_label="induced on quotient")
    _check_transitive(item, f"quotient_{s_prime}_geodesic_transitive", rep, s_prime)
    item.covers.append({"quotient": quotient_name, "cells": len(cells), "fold": fold,
                        "quotient_params": graph_params(q)})
    return q


# ------------------------------------------------------ strongly regular census

THEOREM2_ITEMS: list[tuple[str, str, dict, tuple[int, int, int, int], int, int | None]] = [
    # id, construction, params, srg, girth, |Aut| when it is a named group
    *[(f"girth4/K_{{{m},{m}}}", "complete_bipartite", {"m": str(m), "n": str(m)},
       (2 * m, m, 0, m), 4, None) for m in range(2, 6)],
    ("girth4/higman_sims", "higman_sims", {}, (100, 22, 0, 6), 4, 88704000),
    ("girth4/gewirtz", "gewirtz", {}, (56, 10, 0, 2), 4, 80640),
    ("girth4/m22_graph", "m22_graph", {}, (77, 16, 0, 4), 4, 887040),
    ("girth4/folded_5_cube", "folded_cube", {"d": "5"}, (16, 5, 0, 2), 4, None),
    ("girth5/C_5", "cycle", {"n": "5"}, (5, 2, 0, 1), 5, None),
    ("girth5/petersen", "petersen", {}, (10, 3, 0, 1), 5, 120),
    ("girth5/hoffman_singleton", "hoffman_singleton", {}, (50, 7, 0, 1), 5, 252000),
]


def theorem2_item(idx: int) -> CensusItem:
    ident, name, params, srg, gir, order = THEOREM2_ITEMS[idx]
    item = CensusItem(ident)
    g = build(name, params)
    item.params = graph_params(g)
    observed = srg_params(g)
    item.check("strongly_regular", observed and observed.as_tuple() == srg, expected=list(srg),
               observed=list(observed.as_tuple()) if observed else None, witness=srg_witness(g, srg))
    item.check("girth", _num(girth(g)) == gir, expected=gir, observed=_num(girth(g)))
    res = _aut(item, g)
    if order is not None:
        item.check("aut_order", res.order == order, expected=order, observed=res.order)
    rep = _transitivity(item, g, res.group, Mode.ARC, 2)
    _check_transitive(item, "2_arc_transitive", rep, 2)
    _orbit_count_check(item, res.group, rep, 2)
    la = local_action(g, res.group, 0)
    item.check("local_action_2_transitive", la.two_transitive, expected=True, observed=la.to_dict(),
               witness={"vertex": 0, "local_action": la.to_dict()})
    return item


# ----------------------------------------------------------------- cover census

def _cover_item(ident: str, g: Graph, quotient_ref: Graph, quotient_name: str, fold: int,
                array: str | None = None) -> tuple[CensusItem, SearchResult, list[list[int]]]:
    item = CensusItem(ident)
    item.params = graph_params(g)
    if array is not None:
        _check_array(item, g, array)
    res = _aut(item, g)
    cells = antipodal_partition(g)
    if not item.check("antipodal", bool(cells), expected=True, observed=bool(cells),
                      witness={"antipodal": str(cells)}):
        return item, res, []
    _check_cover(item, g, cells, res.group, quotient_ref, quotient_name, fold)
    rep = _transitivity(item, g, res.group, Mode.GEODESIC, 3)
    _check_transitive(item, "3_geodesic_transitive", rep, 3)
    _orbit_count_check(item, res.group, rep, 3)
    return item, res, cells


def _distance_transitive(item: CensusItem, g: Graph, group: PermGroup) -> None:
    d = diameter(g)
    rep = _transitivity(item, g, group, Mode.DISTANCE, d)
    _check_transitive(item, "distance_transitive", rep, d)


def krr_item(r: int) -> CensusItem:
    g = C.krr_minus_matching(r)
    item, res, _ = _cover_item(f"K_r/krr_minus_matching(r={r})", g, C.complete(r), f"K_{r}", 2,
                               f"({r - 1},{r - 2},1;1,{r - 2},{r - 1})")
    _distance_transitive(item, g, res.group)
    return item


def hos2_item() -> CensusItem:
    g = C.hos2()
    item, res, _ = _cover_item("K_r/hos2", g, C.complete(7), "K_7", 6)
    item.check("diameter", diameter(g) == 3, expected=3, observed=diameter(g))
    item.check("girth", _num(girth(g)) == 5, expected=5, observed=_num(girth(g)))
    return item


def folded_cube_cover_item(which: str) -> CensusItem:
    if which == "hamming":
        g, ident, arr = C.hamming_2(5), "folded_5_cube/H(5,2)", "(5,4,3,2,1;1,2,3,4,5)"
    else:
        g, ident, arr = C.wells(), "folded_5_cube/wells", "(5,4,1,1;1,1,4,5)"
    item, _, _ = _cover_item(ident, g, C.folded_cube(5), "folded_5_cube", 2, arr)
    if which == "wells":
        item.check("aut_order", item.aut_order == 1920, expected=1920, observed=item.aut_order)
    return item


def dodecahedron_item() -> CensusItem:
    g = C.dodecahedron()
    item, _, _ = _cover_item("petersen/dodecahedron", g, C.petersen(), "petersen", 2,
                             "(3,2,1,1,1;1,1,1,2,3)")
    return item


SDC_EXPECT = {
    "higman_sims": {2: {"c": 6}},
    "gewirtz": {2: {"a": 0, "b": 8, "c": 2}},
    "m22_graph": {2: {"c": 4}, 3: {"c": 12}, 4: {"c": 15}, 5: {"c": 16}},
}


def sdc_item(base_name: str) -> CensusItem:
    base = build(base_name)
    g = C.sdc(base)
    item, _, _ = _cover_item(f"{base_name}/sdc", g, base, base_name, 2)
    rec = recognize_sdc(g)
    item.check("recognized_as_double_cover", bool(rec), expected=True, observed=bool(rec),
               witness={"reason": getattr(rec, "reason", None)})
    if rec:
        _check_iso(item, "recognized_quotient_isomorphic", rec.quotient, base, base_name)
        image = rec.as_vertex_map()
        target = C.sdc(rec.quotient)
        bad = next(((u, v) for u, v in g.edges() if not target.has_edge(image[u], image[v])), None)
        item.check("phi_is_isomorphism", bad is None and len(set(image)) == g.n, expected=True,
                   observed=bad is None, witness={"edge": list(bad) if bad else None})
    for i, want in SDC_EXPECT[base_name].items():
        nums = intersection_numbers(g, i)
        got = {k: getattr(nums, k) for k in want} if nums else None
        item.check(f"intersection_numbers_{i}", got == want, expected=want, observed=got,
                   witness={"level": i, "numbers": str(nums)})
    return item


def hadamard_item(order: int) -> CensusItem:
    h = C.hadamard_matrix(order)
    g = C.hadamard_graph(h)
    mu = order // 2
    item, _, cells = _cover_item(f"K_rr/hadamard_graph(order={order})", g,
                                 C.complete_bipartite(order, order), f"K_{{{order},{order}}}", 2,
                                 f"({2 * mu},{2 * mu - 1},{mu},1;1,{mu},{2 * mu - 1},{2 * mu})")
    return item


def rgd_item() -> CensusItem:
    d = C.rgd_from_hadamard(C.hadamard_matrix(4))
    lam = d.check()
    item = CensusItem("K_rr/rgd_incidence_graph(hadamard order 4)")
    item.check("design_parameters", (d.r, lam, d.m) == (4, 2, 2), expected=[4, 2, 2],
               observed=[d.r, lam, d.m])
    g = C.rgd_incidence_graph(d)
    item.params = graph_params(g)
    _check_array(item, g, "(4,3,2,1;1,2,3,4)")
    res = _aut(item, g)
    cells = antipodal_partition(g)
    if item.check("antipodal", bool(cells), expected=True, observed=bool(cells),
                  witness={"antipodal": str(cells)}):
        _check_cover(item, g, cells, res.group, C.complete_bipartite(4, 4), "K_{4,4}", 2)
    return item


def rgd_large_m_item() -> CensusItem:
    item = CensusItem("K_rr/rgd_incidence_graph(m>2)")
    item.skip("cover", "no-instance: no resolvable design with m > 2 is constructed")
    return item


TABLE1_ITEMS: dict[str, Callable[[], CensusItem]] = {
    **{f"krr{r}": (lambda r=r: krr_item(r)) for r in range(4, 8)},
    "hos2": hos2_item,
    "hamming52": lambda: folded_cube_cover_item("hamming"),
    "wells": lambda: folded_cube_cover_item("wells"),
    "dodecahedron": dodecahedron_item,
    "sdc_higman_sims": lambda: sdc_item("higman_sims"),
    "sdc_gewirtz": lambda: sdc_item("gewirtz"),
    "sdc_m22": lambda: sdc_item("m22_graph"),
    "hadamard4": lambda: hadamard_item(4),
    "hadamard8": lambda: hadamard_item(8),
    "rgd4": rgd_item,
    "rgd_m_gt_2": rgd_large_m_item,
}

TABLE1_NOTES = [
    "Cover relations are checked for antipodal partitions only; quotients by other normal "
    "subgroups with at least three orbits are not enumerated.",
    "Designs with m > 2 are not constructed; that row is SKIPPED(no-instance).",
    "Rows asserting stabiliser structure for covers that are not 4-distance-transitive have no "
    "constructible instance; they are reported, not verified.",
]

THEOREM2_NOTES = [
    "The list is verified in one direction: each listed graph is strongly regular with the stated "
    "girth and is 2-arc-transitive. Completeness of the list is not checked.",
    "aut_order claims compare group orders only; the isomorphism type of the group is not checked.",
]


# ------------------------------------------------------------------- driver

def _run_one(task: tuple[str, Any]) -> CensusItem:
    kind, key = task
    fn = (lambda: theorem2_item(key)) if kind == "theorem2" else TABLE1_ITEMS[key]
    t0 = time.perf_counter()
    try:
        item = fn()
    except (BudgetExceeded, TupleBudgetExceeded) as exc:
        item = CensusItem(str(key))
        item.skip("all", f"budget: {exc}", budget=True)
    item.wall_time = time.perf_counter() - t0
    return item


def _run(tasks: list[tuple[str, Any]], jobs: int) -> list[CensusItem]:
    if jobs <= 1:
        items = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            items = list(pool.map(_run_one, tasks))
    return sorted(items, key=lambda it: it.id)


def verify_theorem2(jobs: int = 1) -> CensusReport:
    tasks = [("theorem2", i) for i in range(len(THEOREM2_ITEMS))]
    return CensusReport("verify-theorem2", _run(tasks, jobs), list(THEOREM2_NOTES))


def verify_table1(jobs: int = 1, only: list[str] | None = None) -> CensusReport:
    keys = list(TABLE1_ITEMS) if not only else only
    for k in keys:
        if k not in TABLE1_ITEMS:
            raise UnknownName(f"unknown table row {k!r}")
    return CensusReport("verify-table1", _run([("table1", k) for k in keys], jobs),
                        list(TABLE1_NOTES))


__all__ = [
    "SCHEMA_VERSION", "Verdict", "Claim", "CensusItem", "CensusReport", "build", "graph_params",
    "analyze", "srg_witness", "verify_theorem2", "verify_table1", "TABLE1_ITEMS", "THEOREM2_ITEMS",
]
