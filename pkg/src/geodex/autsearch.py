"""Automorphism groups and canonical forms by individualization-refinement.

The search state is an ordered partition stored nauty-style: ``lab`` lists
the vertices cell by cell and ``start[p]`` is the first position of the cell
holding position ``p``.  Refinement computes the coarsest equitable
refinement (1-dimensional Weisfeiler-Leman) and returns a trace that is
invariant under relabelling, which is what lets two search nodes be compared.
"""
from __future__ import annotations

import heapq
import math
import os
import zlib
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, InternalVerificationFailed, NotAutomorphisms
from .graph import Graph
from .perm import PermGroup, _orbit, schreier_sims

DEFAULT_NODE_BUDGET = 10 ** 7


def default_budget() -> int:
    env = os.environ.get("GEODEX_BUDGET")
    return int(float(env)) if env else DEFAULT_NODE_BUDGET


@dataclass
class OrderedPartition:
    lab: np.ndarray
    start: np.ndarray
    length: dict[int, int]

    @classmethod
    def unit(cls, n: int) -> "OrderedPartition":
        return cls(np.arange(n, dtype=np.int64), np.zeros(n, dtype=np.int64), {0: n} if n else {})

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]]) -> "OrderedPartition":
        lab, start, length = [], [], {}
        for cell in cells:
            s = len(lab)
            lab.extend(cell)
            start.extend([s] * len(cell))
            length[s] = len(cell)
        return cls(np.array(lab, dtype=np.int64), np.array(start, dtype=np.int64), length)

    def copy(self) -> "OrderedPartition":
        return OrderedPartition(self.lab.copy(), self.start.copy(), dict(self.length))

    @property
    def cells(self) -> list[list[int]]:
        return [self.lab[s:s + self.length[s]].tolist() for s in sorted(self.length)]

    @property
    def discrete(self) -> bool:
        return len(self.length) == len(self.lab)

    def target_cell(self) -> int | None:
        """Start of the first smallest non-singleton cell."""
        best = None
        for s in sorted(self.length):
            size = self.length[s]
            if size > 1 and (best is None or size < self.length[best]):
                best = s
        return best

    def cell_vertices(self, s: int) -> list[int]:
        return sorted(self.lab[s:s + self.length[s]].tolist())


def refine(g: Graph, p: OrderedPartition, active: Sequence[int] | None = None,
           expect: list | None = None) -> tuple[OrderedPartition, list] | None:
    """Coarsest equitable refinement of ``p``.

    Returns the refined partition and its trace.  With ``expect`` the
    refinement stops early (returning None) as soon as the trace deviates.
    """
    a = g.matrix
    n = g.n
    q = p.copy()
    lab, start, length = q.lab, q.start, q.length
    heap = list(sorted(length) if active is None else active)
    heapq.heapify(heap)
    queued = set(heap)
    trace: list = []
    positions = np.arange(n, dtype=np.int64)
    while heap and len(length) < n:
        s = heapq.heappop(heap)
        queued.discard(s)
        w = lab[s:s + length[s]]
        counts = a[:, w].sum(axis=1)[lab]
        order = np.lexsort((counts, start))
        counts = counts[order]
        boundary = np.empty(n, dtype=bool)
        boundary[0] = True
        boundary[1:] = (start[1:] != start[:-1]) | (counts[1:] != counts[:-1])
        cell_starts = np.flatnonzero(boundary)
        digest = zlib.crc32(counts[cell_starts].tobytes())
        if cell_starts.size == len(length):
            entry = (s, len(w), (), digest)
        else:
            lab[:] = lab[order]
            fresh = cell_starts[start[cell_starts] != cell_starts]
            entry = (s, len(w), tuple(fresh.tolist()), digest)
            new_start = np.maximum.accumulate(np.where(boundary, positions, 0))
            split_cells = sorted(set(start[fresh].tolist()))
            start[:] = new_start
            for old in split_cells:
                end = old + length[old]
                frags = [old] + [f for f in fresh.tolist() if old < f < end]
                sizes = [(frags[k + 1] if k + 1 < len(frags) else end) - frags[k] for k in range(len(frags))]
                for f, size in zip(frags, sizes):
                    length[f] = size
                if old in queued:
                    add = frags[1:]
                else:
                    big = max(range(len(frags)), key=lambda k: (sizes[k], -k))
                    add = [f for k, f in enumerate(frags) if k != big]
                for f in add:
                    if f not in queued:
                        queued.add(f)
                        heapq.heappush(heap, f)
        trace.append(entry)
        if expect is not None and (len(trace) > len(expect) or expect[len(trace) - 1] != entry):
            return None
    trace.append((-1, len(length), (), 0))
    if expect is not None and trace != expect:
        return None
    return q, trace


def individualize(p: OrderedPartition, v: int) -> tuple[OrderedPartition, int]:
    """Split ``v`` off the front of its cell; returns the new partition and the singleton's start."""
    q = p.copy()
    pos = int(np.flatnonzero(q.lab == v)[0])
    s = int(q.start[pos])
    size = q.length[s]
    if size == 1:
        return q, s
    q.lab[pos], q.lab[s] = q.lab[s], q.lab[pos]
    q.start[s + 1:s + size] = s + 1
    q.length[s] = 1
    q.length[s + 1] = size - 1
    return q, s


def _descend(g: Graph, p: OrderedPartition, v: int, expect: list | None = None):
    q, s = individualize(p, v)
    return refine(g, q, [s], expect)


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    a = g.matrix
    idx = np.asarray(perm, dtype=np.int64)
    return bool(np.array_equal(a[np.ix_(idx, idx)], a))


@dataclass
class SearchResult:
    group: PermGroup
    base: list[int]
    orbit_sizes: list[int]
    nodes: int
    first_leaf: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes)


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} nodes")


def search_automorphisms(g: Graph, budget: int | None = None,
                         witnesses: Sequence[Sequence[int]] = ()) -> SearchResult:
    """Generators and order of Aut(g).

    ``witnesses`` are optional known automorphisms; they are verified and
    only used to prune the first level of the search.
    """
    counter = _Counter(default_budget() if budget is None else budget)
    n = g.n
    witnesses = [tuple(int(x) for x in w) for w in witnesses]
    for w in witnesses:
        if not is_automorphism(g, w):
            raise NotAutomorphisms("witness generator is not an automorphism")
    root, root_trace = refine(g, OrderedPartition.unit(n))
    nodes, traces, base = [root], [root_trace], []
    node = root
    while not node.discrete:
        s = node.target_cell()
        v = node.cell_vertices(s)[0]
        node, tr = _descend(g, node, v)
        counter.tick()
        base.append(v)
        nodes.append(node)
        traces.append(tr)
    leaf0 = node.lab.copy()
    depth = len(base)

    def leaf_perm(lab: np.ndarray) -> tuple[int, ...]:
        gamma = np.empty(n, dtype=np.int64)
        gamma[leaf0] = lab
        return tuple(gamma.tolist())

    def dive(p: OrderedPartition, level: int, v: int):
        res = _descend(g, p, v, traces[level + 1])
        counter.tick()
        if res is None:
            return None
        child, _ = res
        if level + 1 == depth:
            gamma = leaf_perm(child.lab)
            return gamma if is_automorphism(g, gamma) else None
        for x in child.cell_vertices(child.target_cell()):
            found = dive(child, level + 1, x)
            if found is not None:
                return found
        return None

    gens: list[tuple[int, ...]] = []
    orbit_sizes = [1] * depth
    for level in reversed(range(depth)):
        p = nodes[level]
        v = base[level]
        known = gens + witnesses if level == 0 else gens
        orb = set(_orbit(known, v))
        for w in p.cell_vertices(p.target_cell()):
            if w in orb:
                continue
            gamma = dive(p, level, w)
            if gamma is not None:
                gens.append(gamma)
                known = gens + witnesses if level == 0 else gens
                orb = set(_orbit(known, v))
        orbit_sizes[level] = len(orb)
    all_gens = gens + [w for w in witnesses if w not in gens]
    chain = schreier_sims(all_gens, n, base)
    if chain.order != math.prod(orbit_sizes):
        raise InternalVerificationFailed(
            f"search order {math.prod(orbit_sizes)} disagrees with Schreier-Sims {chain.order}")
    group = PermGroup(all_gens, n, bsgs=chain)
    return SearchResult(group, base, orbit_sizes, counter.nodes, leaf0)


def automorphism_group(g: Graph, budget: int | None = None,
                       witnesses: Sequence[Sequence[int]] = ()) -> PermGroup:
    return search_automorphisms(g, budget, witnesses).group


@dataclass(frozen=True)
class Certificate:
    n: int
    edges: tuple[tuple[int, int], ...]
    invariant_hash: int

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Certificate) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def canonical_labeling(g: Graph, budget: int | None = None) -> tuple[Certificate, list[int]]:
    """Canonical certificate and labelling ``labels[k]`` = vertex placed at position k."""
    n = g.n
    if n == 0:
        return Certificate(0, (), 0), []
    res = search_automorphisms(g, budget)
    counter = _Counter(default_budget() if budget is None else budget)
    root, _ = refine(g, OrderedPartition.unit(n))
    stabs: dict[tuple[int, ...], PermGroup] = {(): res.group}
    level = [((), root)]
    while not level[0][1].discrete:
        children = []
        for prefix, node in level:
            stab = stabs[prefix]
            cell = node.cell_vertices(node.target_cell())
            seen: set[int] = set()
            for x in cell:
                if x in seen:
                    continue
                seen.update(stab.orbit(x))
                child, tr = _descend(g, node, x)
                counter.tick()
                children.append((tr, prefix + (x,), child, stab))
        best = max(c[0] for c in children)
        level = []
        for tr, prefix, child, parent_stab in children:
            if tr == best:
                stabs[prefix] = parent_stab.pointwise_stabilizer([prefix[-1]])
                level.append((prefix, child))
    a = g.matrix
    best_key, best_lab = None, None
    for _, leaf in level:
        lab = leaf.lab
        key = np.packbits(a[np.ix_(lab, lab)] != 0).tobytes()
        if best_key is None or key > best_key:
            best_key, best_lab = key, lab
    labels = best_lab.tolist()
    pos = {v: k for k, v in enumerate(labels)}
    edges = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges()))
    inv = zlib.crc32(repr((n, sorted(g.degrees()))).encode())
    return Certificate(n, edges, inv), labels


def canonical_certificate(g: Graph, budget: int | None = None) -> Certificate:
    return canonical_labeling(g, budget)[0]


def are_isomorphic(g1: Graph, g2: Graph, budget: int | None = None) -> tuple[bool, list[int] | None]:
    """Isomorphism test; on success also returns a map ``g1 vertex -> g2 vertex``."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count or sorted(g1.degrees()) != sorted(g2.degrees()):
        return False, None
    c1, lab1 = canonical_labeling(g1, budget)
    c2, lab2 = canonical_labeling(g2, budget)
    if c1 != c2:
        return False, None
    iso = [0] * g1.n
    for k in range(g1.n):
        iso[lab1[k]] = lab2[k]
    if any(not g2.has_edge(iso[u], iso[v]) for u, v in g1.edges()):
        raise InternalVerificationFailed("equal certificates but the induced map is not an isomorphism")
    return True, iso
