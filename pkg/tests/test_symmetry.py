import itertools

import pytest

from geodex import constructions as C
from geodex.autsearch import automorphism_group as aut_of
from geodex.errors import HypothesisNotMet, NotAutomorphisms, NotTransitive
from geodex.graph import diameter, girth
from geodex.perm import PermGroup, from_cycles
from geodex.symmetry import (Mode, is_geodesic_transitive, is_vertex_transitive, lifted_group,
                             local_action, orbit_size_by_stabilizers, remark_23_forcing,
                             transitivity, tuples)

from conftest import aut, circulant, named


def cyclic_on(n):
    return PermGroup([from_cycles([list(range(n))], n)], n)


# ---------------------------------------------------------------- transitivity reports

def test_cube_geodesic_versus_arc():
    g = named("hamming_2", d=3)
    G = aut("hamming_2", d=3).group
    geo = transitivity(g, G, Mode.GEODESIC, 3)
    assert geo.max_s == 3 and [r.count for r in geo.per_s] == [24, 48, 48]
    arc = transitivity(g, G, "arc", 3)
    assert arc.max_s == 2 and arc.per_s[2].count == 96
    w = arc.per_s[2].witness
    assert w is not None and w in set(tuples(g, Mode.ARC, 3))
    assert "witness" in arc.to_dict()["per_s"][2] and "witness" not in arc.to_dict()["per_s"][1]


def test_pentagon_is_two_arc_transitive():
    g = named("cycle", n=5)
    rep = transitivity(g, aut("cycle", n=5).group, Mode.ARC, 4)
    assert rep.max_s == 4 and rep.transitive_at(2)
    # the rotations alone are not arc-transitive
    assert transitivity(g, cyclic_on(5), Mode.ARC, 1).max_s == 0


def test_levels_beyond_diameter_are_empty():
    rep = transitivity(named("petersen"), aut("petersen").group, Mode.GEODESIC, 3)
    assert rep.max_s == 2 and rep.per_s[2].count == 0 and not rep.per_s[2].transitive


def test_transitivity_rejects_non_automorphisms():
    g = named("petersen")
    with pytest.raises(NotAutomorphisms):
        transitivity(g, PermGroup([from_cycles([[0, 1]], 10)], 10), Mode.ARC, 1)
    with pytest.raises(NotAutomorphisms):
        transitivity(g, cyclic_on(5), Mode.ARC, 1)


def test_vertex_transitivity():
    assert is_vertex_transitive(named("petersen"), aut("petersen").group)
    p3 = named("path", n=3)
    assert not is_vertex_transitive(p3, PermGroup([(2, 1, 0)], 3))
    assert is_vertex_transitive(named("hamming_2", d=5), aut("hamming_2", d=5).group)


@pytest.mark.parametrize("name,params,expected", [
    ("dodecahedron", {}, True), ("hos2", {}, True), ("cycle", {"n": 4}, True),
    ("petersen", {}, True), ("wells", {}, True), ("cycle", {"n": 7}, True),
])
def test_geodesic_transitive_examples(name, params, expected):
    assert is_geodesic_transitive(named(name, **params), aut(name, **params).group) == expected


def test_circulant_not_geodesic_transitive():
    # C13(1,5): Aut has order 52 and acts regularly on arcs
    g = circulant(13, [1, 5])
    G = aut_of(g)
    assert G.order() == 52 and transitivity(g, G, Mode.ARC, 1).max_s == 1
    assert not is_geodesic_transitive(g, G)


def test_orbit_count_matches_stabilizer_chain():
    for name in ("petersen", "dodecahedron", "hos2"):
        g, G = named(name), aut(name).group
        rep = transitivity(g, G, Mode.GEODESIC, diameter(g))
        for r in rep.per_s:
            if r.transitive:
                assert orbit_size_by_stabilizers(G, r.seed) == r.count


def test_geodesic_transitivity_implies_distance_transitivity():
    for name in ("petersen", "dodecahedron", "wells", "hos2"):
        g, G = named(name), aut(name).group
        geo = transitivity(g, G, Mode.GEODESIC, diameter(g))
        dist = transitivity(g, G, Mode.DISTANCE, diameter(g))
        for a, b in zip(geo.per_s, dist.per_s):
            if a.transitive:
                assert b.transitive


def test_arcs_are_geodesics_below_half_girth():
    for name in ("petersen", "hoffman_singleton", "dodecahedron"):
        g, G = named(name), aut(name).group
        s = (girth(g) - 1) // 2
        assert list(tuples(g, Mode.ARC, s)) == list(tuples(g, Mode.GEODESIC, s))
        assert transitivity(g, G, Mode.ARC, s).max_s == transitivity(g, G, Mode.GEODESIC, s).max_s


# ---------------------------------------------------------------- local action

def test_local_action_petersen():
    la = local_action(named("petersen"), aut("petersen").group, 0)
    assert (la.degree, la.order, la.kernel_order) == (3, 6, 2)
    assert not la.faithful and la.two_transitive and la.two_primitive
    assert "induced" not in la.to_dict()


def test_local_action_hoffman_singleton():
    la = local_action(named("hoffman_singleton"), aut("hoffman_singleton").group, 0)
    assert la.order == 5040 and la.faithful and la.transitivity_degree == 7


def test_local_action_second_sphere_and_wells():
    assert local_action(named("hos2"), aut("hos2").group, 0).order == 120
    assert local_action(named("wells"), aut("wells").group, 0).order == 60


def test_local_action_needs_vertex_transitivity():
    with pytest.raises(NotTransitive):
        local_action(named("path", n=3), PermGroup([(2, 1, 0)], 3), 1)


# ---------------------------------------------------------------- forcing from b_2 / b_3

@pytest.mark.parametrize("name,route", [
    ("hos2", "b2"), ("dodecahedron", "b2"), ("wells", "b2"), ("petersen", "b2"),
])
def test_forcing_routes(name, route):
    rep = remark_23_forcing(named(name), aut(name).group)
    assert rep.route == route and rep.geodesic_transitive
    assert rep.b2 <= 1


def test_forcing_through_b3():
    # the order-4 Hadamard graph has b_2 = 2 and b_3 = 1
    g = C.hadamard_graph(C.hadamard_matrix(4))
    G = aut_of(g)
    rep = remark_23_forcing(g, G)
    assert (rep.b2, rep.b3, rep.route) == (2, 1, "b3") and rep.geodesic_transitive


def test_forcing_hypothesis_not_met():
    g = named("hamming_2", d=5)
    with pytest.raises(HypothesisNotMet):
        remark_23_forcing(g, aut("hamming_2", d=5).group)
    with pytest.raises(HypothesisNotMet):
        remark_23_forcing(named("cycle", n=5), cyclic_on(5))


# ---------------------------------------------------------------- lifted group

def test_lifted_group_acts_on_double_cover():
    g = named("petersen")
    G = aut("petersen").group
    h = C.sdc(g)
    L = lifted_group(G)
    assert L.order() == 2 * G.order()
    assert is_vertex_transitive(h, L)
    for x, y in itertools.islice(g.edges(), 5):
        assert h.has_edge(x, y + g.n)
