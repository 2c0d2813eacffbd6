"""Quotients by vertex partitions, covers, antipodal classes, double-cover recognition."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidPartition
from .graph import (NOT_ANTIPODAL, Graph, Status, bipartition, diameter, is_connected,
                    mask_of)


def _block_map(g: Graph, cells: Sequence[Sequence[int]]) -> list[int]:
    block = [-1] * g.n
    for i, cell in enumerate(cells):
        if not cell:
            raise InvalidPartition("empty cell")
        for v in cell:
            if not 0 <= v < g.n or block[v] != -1:
                raise InvalidPartition(f"vertex {v} is out of range or repeated")
            block[v] = i
    if -1 in block:
        raise InvalidPartition(f"vertex {block.index(-1)} is not covered")
    return block


@dataclass(frozen=True)
class Quotient:
    graph: Graph
    block_of: tuple[int, ...]
    cells_with_internal_edges: tuple[int, ...] = field(default=())


def quotient_graph(g: Graph, cells: Sequence[Sequence[int]]) -> Quotient:
    """Cells adjacent iff some edge joins them; edges inside a cell are reported, not kept."""
    block = _block_map(g, cells)
    edges, internal = set(), set()
    for u, v in g.edges():
        bu, bv = block[u], block[v]
        if bu == bv:
            internal.add(bu)
        else:
            edges.add((min(bu, bv), max(bu, bv)))
    labels = None
    if g.labels is not None:
        labels = ["{" + ",".join(g.label(v) for v in cell) + "}" for cell in cells]
    q = Graph.from_edges(len(cells), sorted(edges), labels)
    return Quotient(q, tuple(block), tuple(sorted(internal)))


def is_cover(g: Graph, cells: Sequence[Sequence[int]]) -> bool:
    """Each vertex has exactly one neighbour in every cell adjacent to its own.

    A cell containing an edge is never part of a cover.
    """
    return cover_witness(g, cells) is None


def cover_witness(g: Graph, cells: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    """First (vertex, cell, neighbour count) violating the cover property, or None."""
    block = _block_map(g, cells)
    masks = [mask_of(c) for c in cells]
    q = quotient_graph(g, cells)
    for v in range(g.n):
        bv = block[v]
        for bw in q.graph.neighbors(bv):
            hits = (g.adj[v] & masks[bw]).bit_count()
            if hits != 1:
                return v, bw, hits
    if q.cells_with_internal_edges:
        c = q.cells_with_internal_edges[0]
        v = cells[c][0]
        return v, c, (g.adj[v] & masks[c]).bit_count()
    return None


def antipodal_partition(g: Graph) -> list[list[int]] | Status:
    """Classes of "equal or at distance diam", if that relation is an equivalence."""
    if not is_connected(g):
        return NOT_ANTIPODAL
    d = diameter(g)
    if d < 2:
        return NOT_ANTIPODAL
    dm = g.distance_matrix()
    classes = [frozenset([u, *map(int, (dm[u] == d).nonzero()[0])]) for u in range(g.n)]
    for u in range(g.n):
        if any(classes[v] != classes[u] for v in classes[u]):
            return NOT_ANTIPODAL
    return sorted(sorted(c) for c in set(classes))


@dataclass(frozen=True)
class NotSdc:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class SdcRecognition:
    quotient: Graph
    cells: tuple[tuple[int, ...], ...]
    phi: tuple[tuple[int, int], ...]

    def as_vertex_map(self) -> list[int]:
        """phi as a map into the vertices of ``sdc(quotient)``: (B, i) -> B + n*(i-1)."""
        m = self.quotient.n
        return [b + m * (i - 1) for b, i in self.phi]


def recognize_sdc(g: Graph) -> SdcRecognition | NotSdc:
    """Check the double-cover hypotheses and verify the block/side map as an isomorphism."""
    if not is_connected(g):
        return NotSdc("disconnected")
    sides = bipartition(g)
    if not sides:
        return NotSdc("not bipartite")
    d = diameter(g)
    if d % 2 == 0:
        return NotSdc(f"diameter {d} is even")
    cells = antipodal_partition(g)
    if not cells:
        return NotSdc("not antipodal")
    if any(len(c) != 2 for c in cells):
        return NotSdc("antipodal blocks are not of size 2")
    q = quotient_graph(g, cells)
    side = [1 if v in sides[0] else 2 for v in range(g.n)]
    phi = tuple((q.block_of[v], side[v]) for v in range(g.n))
    rec = SdcRecognition(q.graph, tuple(tuple(c) for c in cells), phi)
    image = rec.as_vertex_map()
    if len(set(image)) != g.n:
        return NotSdc("phi is not a bijection")
    # phi must send edges to edges of sdc(quotient); equal edge counts make it onto
    if g.edge_count != 2 * q.graph.edge_count:
        return NotSdc("edge counts differ from the double cover of the quotient")
    for u, v in g.edges():
        (bu, iu), (bv, iv) = phi[u], phi[v]
        if iu == iv or not q.graph.has_edge(bu, bv):
            return NotSdc(f"edge ({u},{v}) does not map to an edge")
    return rec
