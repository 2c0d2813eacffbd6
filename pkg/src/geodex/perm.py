"""Permutations, permutation groups and orbit machinery.

Permutations are plain tuples of images: ``p[i]`` is the image of ``i``.
Products are read left to right, ``mul(p, q)`` applies ``p`` first.
"""
from __future__ import annotations

import math
import os
from array import array
from dataclasses import dataclass
from operator import itemgetter
from typing import Iterable, Sequence

import numpy as np

from .errors import (DegreeMismatch, NotTransitive, SeedNotInUniverse, SetNotInvariant,
                     TupleBudgetExceeded)

Perm = tuple[int, ...]

DEFAULT_TUPLE_CAP = 1 << 27


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p: Perm, q: Perm) -> Perm:
    """``p`` then ``q``."""
    if len(p) == 1:
        return (q[p[0]],)
    return itemgetter(*p)(q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p}")
    return p


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Perm:
    img = list(range(n))
    for cyc in cycles:
        for j, x in enumerate(cyc):
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range for degree {n}")
            img[x] = cyc[(j + 1) % len(cyc)]
    return check_perm(img)


def to_cycles(p: Perm) -> list[list[int]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(cyc)
    return out


def format_cycles(p: Perm) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in to_cycles(p)) or "()"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())


def _orbit(gens: Sequence[Perm], point: int) -> list[int]:
    orb = [point]
    seen = {point}
    for x in orb:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                orb.append(y)
    return orb


def _orbit_classes(gens: Sequence[Perm], n: int) -> list[list[int]]:
    uf = _UnionFind(n)
    for g in gens:
        for i, x in enumerate(g):
            uf.union(i, x)
    return uf.classes()


@dataclass
class _Level:
    point: int
    gens: list[Perm]
    # point -> (u, u^-1) with base point ^ u == point
    transversal: dict[int, tuple[Perm, Perm]]
    order: list[int]
    checked: set[tuple[int, int]]

    def extend(self) -> None:
        """Grow the orbit under the current generators, keeping old entries."""
        trans = self.transversal
        queue = list(self.order)
        k = 0
        while k < len(queue):
            x = queue[k]
            k += 1
            u = trans[x][0]
            for s in self.gens:
                y = s[x]
                if y not in trans:
                    v = mul(u, s)
                    trans[y] = (v, inverse(v))
                    self.order.append(y)
                    queue.append(y)


@dataclass(frozen=True)
class BSGS:
    base: tuple[int, ...]
    strong_gens: tuple[Perm, ...]
    levels: tuple[_Level, ...]

    @property
    def order(self) -> int:
        return math.prod(len(lv.order) for lv in self.levels)

    def basic_orbit_sizes(self) -> list[int]:
        return [len(lv.order) for lv in self.levels]

    def sift(self, p: Perm, start: int = 0) -> tuple[Perm, int]:
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            x = p[lv.point]
            entry = lv.transversal.get(x)
            if entry is None:
                return p, j
            p = mul(p, entry[1])
        return p, len(self.levels)

    def contains(self, p: Perm) -> bool:
        h, j = self.sift(p)
        return j == len(self.levels) and is_identity(h)


def _pick_base_point(gens: Sequence[Perm], moved: Iterable[int], n: int) -> int:
    # greedy: the moved point lying in the largest orbit (ties: smallest point)
    size = {}
    for cls in _orbit_classes(gens, n):
        for x in cls:
            size[x] = len(cls)
    return min(moved, key=lambda x: (-size[x], x))


def _sift_levels(levels: list[_Level], p: Perm, start: int) -> tuple[Perm, int]:
    for j in range(start, len(levels)):
        lv = levels[j]
        entry = lv.transversal.get(p[lv.point])
        if entry is None:
            return p, j
        p = mul(p, entry[1])
    return p, len(levels)


def schreier_sims(gens: Sequence[Sequence[int]], degree: int | None = None,
                  base: Sequence[int] = ()) -> BSGS:
    """Deterministic Schreier-Sims.

    ``base`` is an optional prefix that the computed base must start with;
    further base points are chosen greedily by largest orbit.
    """
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise DegreeMismatch("generators of unequal degree")
    n = degree
    strong = []
    for g in gens:
        if not is_identity(g) and g not in strong:
            strong.append(g)

    levels: list[_Level] = []

    def add_level(point: int) -> None:
        fixed = [lv.point for lv in levels] + [point]
        lv_gens = [s for s in strong if all(s[b] == b for b in fixed[:-1])]
        lv = _Level(point, lv_gens, {point: (identity(n), identity(n))}, [point], set())
        lv.extend()
        levels.append(lv)

    for b in base:
        add_level(b)
    for s in strong:
        if all(s[lv.point] == lv.point for lv in levels):
            moved = [x for x in range(n) if s[x] != x]
            add_level(_pick_base_point(strong, moved, n))

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        found = None
        for bi, beta in enumerate(lv.order):
            u = lv.transversal[beta][0]
            for si, s in enumerate(lv.gens):
                if (beta, si) in lv.checked:
                    continue
                h = mul(mul(u, s), lv.transversal[s[beta]][1])
                if not is_identity(h):
                    residue, j = _sift_levels(levels, h, i + 1)
                    if j < len(levels) or not is_identity(residue):
                        found = (residue, j)
                        break
                lv.checked.add((beta, si))
            if found:
                break
        if found is None:
            i -= 1
            continue
        residue, j = found
        strong.append(residue)
        if j == len(levels):
            moved = [x for x in range(n) if residue[x] != x]
            pick = _pick_base_point(levels[i].gens + [residue], moved, n)
            levels.append(_Level(pick, [], {pick: (identity(n), identity(n))}, [pick], set()))
        for l in range(i + 1, j + 1):
            levels[l].gens.append(residue)
            levels[l].extend()
        i = j
    return BSGS(tuple(lv.point for lv in levels), tuple(strong), tuple(levels))


class PermGroup:
    """Finitely generated permutation group on ``0..degree-1``."""

    def __init__(self, gens: Iterable[Sequence[int]], degree: int | None = None,
                 bsgs: BSGS | None = None):
        gens = [check_perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise DegreeMismatch("generators of unequal degree")
        self.degree = degree
        self.gens = tuple(g for g in gens if not is_identity(g))
        self._bsgs = bsgs

    @property
    def bsgs(self) -> BSGS:
        if self._bsgs is None:
            self._bsgs = schreier_sims(self.gens, self.degree)
        return self._bsgs

    def order(self) -> int:
        return self.bsgs.order

    def __contains__(self, p: Sequence[int]) -> bool:
        return self.bsgs.contains(tuple(p))

    def orbit(self, point: int) -> frozenset[int]:
        return frozenset(_orbit(self.gens, point))

    def orbits(self) -> list[list[int]]:
        return _orbit_classes(self.gens, self.degree)

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(_orbit(self.gens, 0)) == self.degree

    def with_base(self, base: Sequence[int]) -> BSGS:
        """A BSGS whose base starts with ``base``."""
        if tuple(self.bsgs.base[:len(base)]) == tuple(base):
            return self.bsgs
        return schreier_sims(self.bsgs.strong_gens or self.gens, self.degree, base)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(points)
        if not points:
            return self
        chain = self.with_base(points)
        k = len(points)
        gens = [s for s in chain.strong_gens if all(s[p] == p for p in points)]
        sub = BSGS(chain.base[k:], tuple(gens), chain.levels[k:]) if len(chain.levels) > k else None
        return PermGroup(gens, self.degree, bsgs=sub)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.gens)})"


def orbit(group: PermGroup, point: int) -> frozenset[int]:
    return group.orbit(point)


def orbit_partition(group: PermGroup) -> list[list[int]]:
    return group.orbits()


def stabilizer(group: PermGroup, v: int) -> PermGroup:
    return group.pointwise_stabilizer([v])


# ---------------------------------------------------------------- tuple orbits

def _budget(default: int) -> int:
    env = os.environ.get("GEODEX_BUDGET")
    return int(float(env)) if env else default


class TupleCodec:
    """Dense integer codes for fixed-length tuples over ``0..n-1``."""

    def __init__(self, n: int, length: int):
        if n ** length >= 1 << 62:
            raise OverflowError(f"tuples of length {length} over {n} points do not fit in int64")
        self.n = n
        self.length = length
        self.weights = np.array([n ** (length - 1 - j) for j in range(length)], dtype=np.int64)

    def encode(self, tuples: np.ndarray) -> np.ndarray:
        return tuples.astype(np.int64) @ self.weights

    def encode_one(self, t: Sequence[int]) -> int:
        code = 0
        for x in t:
            code = code * self.n + x
        return code

    def decode(self, codes: np.ndarray) -> np.ndarray:
        out = np.empty((codes.size, self.length), dtype=np.int64)
        rest = codes.copy()
        for j in range(self.length - 1, -1, -1):
            out[:, j] = rest % self.n
            rest //= self.n
        return out


def tuple_orbit(group: PermGroup, seed: Sequence[int], cap: int | None = None) -> np.ndarray:
    """Sorted codes of the orbit of ``seed`` under coordinatewise action."""
    cap = _budget(DEFAULT_TUPLE_CAP) if cap is None else cap
    codec = TupleCodec(group.degree, len(seed))
    gens = [np.asarray(g, dtype=np.int64) for g in group.gens]
    seen = np.array([codec.encode_one(seed)], dtype=np.int64)
    frontier = seen
    while frontier.size and gens:
        coords = codec.decode(frontier)
        images = np.unique(np.concatenate([codec.encode(g[coords]) for g in gens]))
        fresh = images[~np.isin(images, seen, assume_unique=True)]
        seen = np.union1d(seen, fresh)
        if seen.size > cap:
            raise TupleBudgetExceeded(f"tuple orbit exceeds cap of {cap}")
        frontier = fresh
    return seen


def tuple_orbit_gap(group: PermGroup, seed: Sequence[int], universe: Iterable[Sequence[int]],
                    cap: int | None = None) -> tuple[int, ...] | None:
    """A tuple in exactly one of orbit(seed) and ``universe`` (least first), or None if they agree."""
    seed = tuple(seed)
    codec = TupleCodec(group.degree, len(seed))
    buf = array("q")
    n = group.degree
    for t in universe:
        code = 0
        for x in t:
            code = code * n + x
        buf.append(code)
    codes = np.unique(np.frombuffer(buf, dtype=np.int64)) if buf else np.zeros(0, dtype=np.int64)
    if not np.isin(codec.encode_one(seed), codes):
        raise SeedNotInUniverse(f"seed {seed} is not in the universe")
    orb = tuple_orbit(group, seed, cap)
    if orb.size == codes.size and np.array_equal(orb, codes):
        return None
    odd = np.setxor1d(orb, codes, assume_unique=True)
    return tuple(codec.decode(odd[:1])[0].tolist())


def tuple_orbit_covers(group: PermGroup, seed: Sequence[int], universe: Iterable[Sequence[int]],
                       cap: int | None = None) -> bool:
    """True iff the orbit of ``seed`` is exactly ``universe``."""
    return tuple_orbit_gap(group, seed, universe, cap) is None


# ------------------------------------------------------------- blocks, actions

def minimal_block_system(group: PermGroup, pair: tuple[int, int]) -> list[list[int]]:
    """Finest block system with ``pair[0]`` and ``pair[1]`` in one block."""
    if not group.is_transitive():
        raise NotTransitive("block systems need a transitive group")
    a, b = pair
    uf = _UnionFind(group.degree)
    queue = [(a, b)] if uf.union(a, b) else []
    while queue:
        x, y = queue.pop()
        for g in group.gens:
            gx, gy = g[x], g[y]
            if uf.union(gx, gy):
                queue.append((gx, gy))
    return uf.classes()


def is_primitive(group: PermGroup) -> bool:
    if not group.is_transitive():
        raise NotTransitive("primitivity needs a transitive group")
    n = group.degree
    if n <= 2:
        return True
    # blocks through 0 meeting x depend only on the G_0-orbit of x
    reps = [min(o) for o in stabilizer(group, 0).orbits() if 0 not in o]
    return all(len(minimal_block_system(group, (0, x))) == 1 for x in reps)


def _rest_action(group: PermGroup) -> "InducedAction":
    stab = stabilizer(group, 0)
    return action_on_set(stab, range(1, group.degree))


def is_two_transitive(group: PermGroup) -> bool:
    if not group.is_transitive():
        raise NotTransitive("2-transitivity needs a transitive group")
    if group.degree <= 2:
        return group.degree == 2 or group.degree == 1
    return _rest_action(group).group.is_transitive()


def is_two_primitive(group: PermGroup) -> bool:
    if not is_two_transitive(group):
        return False
    if group.degree <= 2:
        return True
    return is_primitive(_rest_action(group).group)


def transitivity_degree(group: PermGroup) -> int:
    """Largest k such that the group is transitive on ordered k-tuples of distinct points."""
    n = group.degree
    chain = group.with_base(range(n)) if n else None
    k = 0
    for i in range(n):
        # stabiliser of 0..i-1 must be transitive on i..n-1
        if i < len(chain.levels) and chain.levels[i].point == i:
            size = len(chain.levels[i].order)
        else:
            size = 1
        if size != n - i:
            break
        k += 1
    return k


@dataclass(frozen=True)
class InducedAction:
    group: PermGroup
    labels: tuple[int, ...]
    kernel_order: int
    faithful: bool


def action_on_set(group: PermGroup, points: Iterable[int]) -> InducedAction:
    labels = tuple(sorted(set(points)))
    index = {x: i for i, x in enumerate(labels)}
    induced = []
    for g in group.gens:
        try:
            induced.append(tuple(index[g[x]] for x in labels))
        except KeyError:
            raise SetNotInvariant("generator does not preserve the point set") from None
    image = PermGroup(induced, len(labels))
    kernel = group.order() // image.order()
    return InducedAction(image, labels, kernel, kernel == 1)
