import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from geodex.errors import DegreeMismatch, NotTransitive, SeedNotInUniverse, SetNotInvariant, TupleBudgetExceeded
from geodex.perm import (PermGroup, action_on_set, format_cycles, from_cycles, identity, inverse,
                         is_primitive, is_two_primitive, is_two_transitive, minimal_block_system,
                         mul, orbit_partition, schreier_sims, stabilizer, to_cycles,
                         transitivity_degree, tuple_orbit, tuple_orbit_covers, tuple_orbit_gap)

from oracles import brute_closure


def sym(n):
    if n < 2:
        return PermGroup([], n)
    return PermGroup([from_cycles([[0, 1]], n), from_cycles([list(range(n))], n)], n)


def alt(n):
    return PermGroup([from_cycles([[0, 1, i]], n) for i in range(2, n)], n)


def cyclic(n):
    return PermGroup([from_cycles([list(range(n))], n)], n)


def dihedral(n):
    return PermGroup([from_cycles([list(range(n))], n), tuple((-i) % n for i in range(n))], n)


def agl15():
    # x -> x+1, x -> 2x on GF(5); the point stabiliser is C4 acting regularly
    return PermGroup([tuple((x + 1) % 5 for x in range(5)), tuple(2 * x % 5 for x in range(5))], 5)


perms = st.integers(2, 8).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))).map(tuple), min_size=1, max_size=3))


# ---------------------------------------------------------------- elements

def test_mul_applies_left_first():
    p, q = (1, 2, 0), (0, 2, 1)
    r = mul(p, q)
    assert all(r[i] == q[p[i]] for i in range(3))
    assert mul(p, inverse(p)) == identity(3)


def test_cycles_roundtrip():
    p = from_cycles([[0, 3, 5], [1, 2]], 7)
    assert to_cycles(p) == [[0, 3, 5], [1, 2]]
    assert format_cycles(p) == "(0 3 5)(1 2)"
    with pytest.raises(ValueError):
        from_cycles([[0, 1], [1, 2]], 3)


# ---------------------------------------------------------------- orders

@pytest.mark.parametrize("group,order", [
    (sym(5), 120), (alt(5), 60), (cyclic(7), 7), (dihedral(6), 12), (sym(1), 1), (sym(8), 40320),
    (alt(9), 181440),
])
def test_known_orders(group, order):
    assert group.order() == order


def test_mathieu_m11_order():
    # M11 from two standard generators on 11 points
    a = from_cycles([[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]], 11)
    b = from_cycles([[2, 6, 10, 7], [3, 9, 4, 5]], 11)
    assert PermGroup([a, b], 11).order() == 7920


@given(perms)
@settings(max_examples=80, deadline=None)
def test_schreier_sims_matches_closure(gens):
    n = len(gens[0])
    elements = brute_closure(gens, n)
    g = PermGroup(gens, n)
    assert g.order() == len(elements)
    for x in list(elements)[:50]:
        assert x in g


@given(perms, st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_membership_rejects_outsiders(gens, rnd):
    n = len(gens[0])
    elements = brute_closure(gens, n)
    g = PermGroup(gens, n)
    for _ in range(20):
        p = list(range(n))
        rnd.shuffle(p)
        assert (tuple(p) in g) == (tuple(p) in elements)


def test_random_groups_degree_8_against_closure():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(3, 8)
        gens = []
        for _ in range(rng.randint(1, 3)):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        assert PermGroup(gens, n).order() == len(brute_closure(gens, n))


def test_forced_base_prefix():
    chain = schreier_sims(sym(6).gens, 6, base=(4, 2))
    assert chain.base[:2] == (4, 2) and chain.order == 720
    assert chain.basic_orbit_sizes()[:2] == [6, 5]


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        PermGroup([(0, 1), (0, 1, 2)])


def test_pointwise_stabilizer_orders():
    g = sym(7)
    assert g.pointwise_stabilizer([3]).order() == 720
    assert g.pointwise_stabilizer([3, 0, 6]).order() == 24
    h = stabilizer(dihedral(8), 0)
    assert h.order() == 2 and h.orbit(1) == frozenset({1, 7})


# ---------------------------------------------------------------- orbits

def test_orbits():
    g = PermGroup([from_cycles([[0, 1], [2, 3, 4]], 6)], 6)
    assert orbit_partition(g) == [[0, 1], [2, 3, 4], [5]]
    assert not g.is_transitive() and cyclic(5).is_transitive()


def test_tuple_orbit_of_pairs():
    g = sym(5)
    orb = tuple_orbit(g, (0, 1))
    assert orb.size == 20
    distinct = [(a, b) for a, b in itertools.product(range(5), repeat=2) if a != b]
    assert tuple_orbit_covers(g, (0, 1), distinct)
    assert not tuple_orbit_covers(cyclic(5), (0, 1), distinct)


def test_tuple_orbit_gap_gives_witness():
    distinct = [(a, b) for a, b in itertools.product(range(5), repeat=2) if a != b]
    gap = tuple_orbit_gap(cyclic(5), (0, 1), distinct)
    assert gap is not None and gap in distinct
    assert (gap[1] - gap[0]) % 5 != 1
    with pytest.raises(SeedNotInUniverse):
        tuple_orbit_covers(cyclic(5), (0, 0), distinct)


def test_tuple_orbit_cap():
    with pytest.raises(TupleBudgetExceeded):
        tuple_orbit(sym(8), (0, 1, 2, 3), cap=100)


@given(perms, st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_tuple_orbit_matches_closure(gens, k):
    n = len(gens[0])
    seed = tuple(range(k)) if k <= n else (0,) * k
    elements = brute_closure(gens, n)
    expect = {tuple(g[x] for x in seed) for g in elements}
    codes = tuple_orbit(PermGroup(gens, n), seed).tolist()
    decoded = {tuple((c // n ** (k - 1 - j)) % n for j in range(k)) for c in codes}
    assert decoded == expect


# ---------------------------------------------------------------- blocks and primitivity

def test_block_system_of_dihedral():
    blocks = minimal_block_system(dihedral(6), (0, 3))
    assert sorted(map(sorted, blocks)) == [[0, 3], [1, 4], [2, 5]]
    assert not is_primitive(dihedral(6))
    assert is_primitive(dihedral(7))


def test_primitivity_requires_transitivity():
    with pytest.raises(NotTransitive):
        is_primitive(PermGroup([(1, 0, 2)], 3))


@pytest.mark.parametrize("group,two_t,two_p,degree", [
    (sym(5), True, True, 5), (alt(5), True, True, 3), (cyclic(5), False, False, 1),
    (dihedral(5), False, False, 1), (sym(3), True, True, 3), (alt(4), True, True, 2), (agl15(), True, False, 2),
])
def test_transitivity_degrees(group, two_t, two_p, degree):
    assert is_two_transitive(group) == two_t
    assert is_two_primitive(group) == two_p
    assert transitivity_degree(group) == degree


def test_transitivity_degree_by_tuple_counts():
    # agrees with a direct count of orbits on distinct k-tuples
    g = PermGroup([from_cycles([[0, 1, 2, 3, 4, 5, 6]], 7), from_cycles([[1, 2, 4], [3, 6, 5]], 7)], 7)
    assert g.order() == 21
    k = transitivity_degree(g)
    for j in range(1, 4):
        tuples = [t for t in itertools.permutations(range(7), j)]
        covers = tuple_orbit_covers(g, tuples[0], tuples)
        assert covers == (j <= k)


def test_action_on_set():
    g = PermGroup([from_cycles([[0, 1, 2]], 6), from_cycles([[3, 4]], 6)], 6)
    act = action_on_set(g, [0, 1, 2])
    assert act.labels == (0, 1, 2) and act.group.order() == 3
    assert act.kernel_order == 2 and not act.faithful
    with pytest.raises(SetNotInvariant):
        action_on_set(g, [0, 3])


def test_orders_are_exact_products():
    g = sym(6)
    assert g.order() == math.prod(g.bsgs.basic_orbit_sizes())
