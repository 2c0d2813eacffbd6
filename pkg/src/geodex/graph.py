"""Simple undirected graphs on dense integer vertices.

Adjacency is a Python ``int`` bitset per vertex, so common-neighbour counts
reduce to ``(adj[u] & adj[v]).bit_count()``.  Graphs are immutable; the
distance matrix and the numpy adjacency matrix are computed lazily and cached.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import Disconnected, EmptySet, EndpointOutOfRange, LevelOutOfRange, LoopEdge

UNREACHABLE = -1
INFINITE = math.inf


class Status(enum.Enum):
    """Negative outcomes that are ordinary results, not errors."""

    NOT_WELL_DEFINED = "not well-defined"
    NOT_SRG = "not strongly regular"
    NOT_DISTANCE_REGULAR = "not distance-regular"
    NOT_BIPARTITE = "not bipartite"
    NOT_ANTIPODAL = "not antipodal"

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return self.name


NOT_WELL_DEFINED = Status.NOT_WELL_DEFINED
NOT_SRG = Status.NOT_SRG
NOT_DISTANCE_REGULAR = Status.NOT_DISTANCE_REGULAR
NOT_BIPARTITE = Status.NOT_BIPARTITE
NOT_ANTIPODAL = Status.NOT_ANTIPODAL


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Finite simple undirected graph with vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "edge_count", "labels", "_nbrs", "_matrix", "_dist")

    def __init__(self, n: int, adj: Sequence[int], labels: Sequence[str] | None = None):
        # trusted constructor: callers guarantee symmetry and no loops
        self.n = n
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None
        self._nbrs = tuple(tuple(bits(m)) for m in self.adj)
        self.edge_count = sum(len(nb) for nb in self._nbrs) // 2
        self._matrix = None
        self._dist = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise EndpointOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self._nbrs]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self._nbrs):
            for v in nb:
                if u < v:
                    yield u, v

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def valency(self) -> int | None:
        """Common degree, or None for an irregular graph."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            a = np.zeros((self.n, self.n), dtype=np.int32)
            for u, nb in enumerate(self._nbrs):
                a[u, list(nb)] = 1
            a.setflags(write=False)
            self._matrix = a
        return self._matrix

    def distance_matrix(self) -> np.ndarray:
        """All-pairs distances, ``UNREACHABLE`` between components."""
        if self._dist is None:
            d = np.full((self.n, self.n), UNREACHABLE, dtype=np.int32)
            for s in range(self.n):
                for level, layer in enumerate(_bfs_layers(self, s)):
                    d[s, list(bits(layer))] = level
            d.setflags(write=False)
            self._dist = d
        return self._dist

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for u, v in self.edges():
            adj[perm[u]] |= 1 << perm[v]
            adj[perm[v]] |= 1 << perm[u]
        return Graph(self.n, adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


def _bfs_layers(g: Graph, source: int) -> Iterator[int]:
    seen = frontier = 1 << source
    while frontier:
        yield frontier
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier


@dataclass(frozen=True)
class DistanceTable:
    source: int
    dist: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.dist[v]


def distances_from(g: Graph, v: int) -> DistanceTable:
    if not 0 <= v < g.n:
        raise EndpointOutOfRange(f"vertex {v} not in graph")
    return DistanceTable(v, tuple(int(x) for x in g.distance_matrix()[v]))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return bool((g.distance_matrix()[0] != UNREACHABLE).all())


def diameter(g: Graph) -> int:
    d = g.distance_matrix()
    if g.n and (d == UNREACHABLE).any():
        raise Disconnected("diameter of a disconnected graph")
    return int(d.max()) if g.n else 0


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, ``INFINITE`` for forests."""
    best = INFINITE
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            # a cycle found at this depth is at most 2*depth+1 long
            if 2 * dist[frontier[0]] + 1 >= best:
                break
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        nxt.append(y)
                    elif y != parent[x]:
                        best = min(best, dist[x] + dist[y] + 1)
            frontier = nxt
        if best == 3:
            break
    return best


def sphere(g: Graph, v: int, i: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise EndpointOutOfRange(f"vertex {v} not in graph")
    return frozenset(int(x) for x in np.flatnonzero(g.distance_matrix()[v] == i))


def sphere_masks(g: Graph, v: int) -> list[int]:
    """Bitsets of the distance layers around ``v``."""
    return list(_bfs_layers(g, v))


def enumerate_s_arcs(g: Graph, s: int) -> Iterator[tuple[int, ...]]:
    """Lazily yield every s-arc, in lexicographic order."""
    if s < 1:
        raise LevelOutOfRange("s must be at least 1")

    def extend(path: list[int]) -> Iterator[tuple[int, ...]]:
        if len(path) == s + 1:
            yield tuple(path)
            return
        back = path[-2] if len(path) > 1 else -1
        for y in g.neighbors(path[-1]):
            if y != back:
                path.append(y)
                yield from extend(path)
                path.pop()

    for v in range(g.n):
        yield from extend([v])


def enumerate_s_geodesics(g: Graph, s: int) -> Iterator[tuple[int, ...]]:
    """Lazily yield every s-geodesic, in lexicographic order."""
    if s < 1:
        raise LevelOutOfRange("s must be at least 1")
    dm = g.distance_matrix()

    def extend(row: np.ndarray, path: list[int]) -> Iterator[tuple[int, ...]]:
        j = len(path)
        if j == s + 1:
            yield tuple(path)
            return
        for y in g.neighbors(path[-1]):
            if row[y] == j:
                path.append(y)
                yield from extend(row, path)
                path.pop()

    for v in range(g.n):
        row = dm[v].tolist()
        if max(row) >= s:
            yield from extend(row, [v])


@dataclass(frozen=True)
class IntersectionNumbers:
    i: int
    c: int | None
    a: int
    b: int


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.c)

    @property
    def valency(self) -> int:
        return self.b[0] if self.b else 0

    def as_list(self) -> list[int]:
        return list(self.b) + list(self.c)

    @classmethod
    def parse(cls, text: str) -> "IntersectionArray":
        left, right = text.strip().strip("(){}[]").split(";")
        return cls(tuple(int(x) for x in left.split(",")), tuple(int(x) for x in right.split(",")))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + ")"


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    a: int
    c: int

    def feasible(self) -> bool:
        return self.k * (self.k - self.a - 1) == (self.n - self.k - 1) * self.c

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.a, self.c)


def _layer_table(g: Graph) -> list[list[int]]:
    return [sphere_masks(g, u) for u in range(g.n)]


def _numbers_at(g: Graph, layers: list[list[int]], i: int) -> set[tuple[int, int, int]]:
    seen = set()
    for u in range(g.n):
        lu = layers[u]
        if i >= len(lu):
            continue
        below = lu[i - 1]
        here = lu[i]
        above = lu[i + 1] if i + 1 < len(lu) else 0
        for v in bits(here):
            nv = g.adj[v]
            seen.add(((nv & below).bit_count(), (nv & here).bit_count(), (nv & above).bit_count()))
            if len(seen) > 1:
                return seen
    return seen


def intersection_numbers(g: Graph, i: int) -> IntersectionNumbers | Status:
    d = diameter(g)
    if i == 0:
        k = g.valency()
        return IntersectionNumbers(0, None, 0, k) if k is not None else NOT_WELL_DEFINED
    if not 1 <= i <= d:
        raise LevelOutOfRange(f"level {i} outside 1..{d}")
    seen = _numbers_at(g, _layer_table(g), i)
    if len(seen) != 1:
        return NOT_WELL_DEFINED
    c, a, b = seen.pop()
    return IntersectionNumbers(i, c, a, b)


def intersection_array(g: Graph) -> IntersectionArray | Status:
    if not is_connected(g):
        return NOT_DISTANCE_REGULAR
    k = g.valency()
    if k is None:
        return NOT_DISTANCE_REGULAR
    d = diameter(g)
    layers = _layer_table(g)
    bs, cs = [k], []
    for i in range(1, d + 1):
        seen = _numbers_at(g, layers, i)
        if len(seen) != 1:
            return NOT_DISTANCE_REGULAR
        c, _, b = seen.pop()
        cs.append(c)
        bs.append(b)
    return IntersectionArray(tuple(bs[:d]), tuple(cs))


def srg_params(g: Graph) -> SrgParams | Status:
    k = g.valency()
    if k is None or g.n < 2 or not is_connected(g) or diameter(g) != 2:
        return NOT_SRG
    on, off = set(), set()
    for u in range(g.n):
        au = g.adj[u]
        for v in range(u + 1, g.n):
            common = (au & g.adj[v]).bit_count()
            (on if au >> v & 1 else off).add(common)
            if len(on) > 1 or len(off) > 1:
                return NOT_SRG
    return SrgParams(g.n, k, on.pop(), off.pop())


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices``; ``labels[new] = old``."""
    labels = sorted(set(vertices))
    if not labels:
        raise EmptySet("induced subgraph of an empty vertex set")
    index = {v: i for i, v in enumerate(labels)}
    keep = mask_of(labels)
    adj = []
    for v in labels:
        adj.append(mask_of(index[w] for w in bits(g.adj[v] & keep)))
    names = [g.label(v) for v in labels] if g.labels is not None else None
    return Graph(len(labels), adj, names), labels


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | Status:
    colour = [-1] * g.n
    for start in range(g.n):
        if colour[start] != -1:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if colour[y] == -1:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return NOT_BIPARTITE
    return (frozenset(v for v in range(g.n) if colour[v] == 0),
            frozenset(v for v in range(g.n) if colour[v] == 1))
