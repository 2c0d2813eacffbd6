"""Named graphs and designs, each checked against its known parameters on build."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable

import numpy as np

from ._data import GOLAY_POLY, WELLS_EDGES
from .errors import (CrossClassIntersectionNotConstant, DesignInvariantViolated,
                     InternalVerificationFailed, InvalidOrder, ParameterOutOfRange)
from .graph import (Graph, IntersectionArray, bipartition, induced_subgraph, intersection_array,
                    sphere, srg_params)


def _expect_srg(g: Graph, params: tuple[int, int, int, int], name: str) -> Graph:
    got = srg_params(g)
    if not got or got.as_tuple() != params:
        raise InternalVerificationFailed(f"{name}: expected SRG{params}, got {got!r}")
    return g


def _expect_array(g: Graph, array: str, name: str) -> Graph:
    got = intersection_array(g)
    want = IntersectionArray.parse(array)
    if got != want:
        raise InternalVerificationFailed(f"{name}: expected array {want}, got {got}")
    return g


# ----------------------------------------------------------------- small families

def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterOutOfRange("complete graph needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterOutOfRange("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise ParameterOutOfRange("complete bipartite graph needs m, n >= 1")
    labels = [f"L{i}" for i in range(m)] + [f"R{j}" for j in range(n)]
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)], labels)


def complete_multipartite(m: int, b: int) -> Graph:
    """K_{m[b]}: m parts of size b."""
    if m < 1 or b < 1:
        raise ParameterOutOfRange("complete multipartite graph needs m, b >= 1")
    part = [v // b for v in range(m * b)]
    edges = [(u, v) for u, v in itertools.combinations(range(m * b), 2) if part[u] != part[v]]
    return Graph.from_edges(m * b, edges, [f"P{v // b}.{v % b}" for v in range(m * b)])


def path(n: int) -> Graph:
    if n < 1:
        raise ParameterOutOfRange("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def krr_minus_matching(r: int) -> Graph:
    """K_{r,r} minus a perfect matching."""
    if r < 3:
        raise ParameterOutOfRange("K_{r,r} - rK_2 needs r >= 3")
    edges = [(i, r + j) for i in range(r) for j in range(r) if i != j]
    g = Graph.from_edges(2 * r, edges, [f"a{i}" for i in range(r)] + [f"b{j}" for j in range(r)])
    return _expect_array(g, f"({r - 1},{r - 2},1;1,{r - 2},{r - 1})", "K_{r,r}-rK_2")


def hamming_2(d: int) -> Graph:
    if d < 2:
        raise ParameterOutOfRange("H(d,2) needs d >= 2")
    n = 1 << d
    edges = [(x, x ^ (1 << i)) for x in range(n) for i in range(d) if x < x ^ (1 << i)]
    return Graph.from_edges(n, edges, [format(x, f"0{d}b")[::-1] for x in range(n)])


def folded_cube(d: int) -> Graph:
    """H(d,2) with antipodal vertices identified: H(d-1,2) plus its antipodal matching."""
    if d < 3:
        raise ParameterOutOfRange("folded cube needs d >= 3")
    n = 1 << (d - 1)
    full = n - 1
    edges = set()
    for x in range(n):
        for i in range(d - 1):
            edges.add(tuple(sorted((x, x ^ (1 << i)))))
        edges.add(tuple(sorted((x, x ^ full))))
    labels = ["{" + format(x, f"0{d - 1}b")[::-1] + "0," + format(x ^ full, f"0{d - 1}b")[::-1] + "1}"
              for x in range(n)]
    return Graph.from_edges(n, sorted(edges), labels)


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    g = Graph.from_edges(10, edges, ["".join(map(str, p)) for p in pairs])
    return _expect_srg(g, (10, 3, 0, 1), "Petersen")


def dodecahedron() -> Graph:
    """Generalized Petersen graph GP(10,2): outer 10-cycle, spokes, inner step-2 cycles."""
    edges = []
    for i in range(10):
        edges += [(i, (i + 1) % 10), (i, 10 + i), (10 + i, 10 + (i + 2) % 10)]
    g = Graph.from_edges(20, edges, [f"o{i}" for i in range(10)] + [f"i{i}" for i in range(10)])
    return _expect_array(g, "(3,2,1,1,1;1,1,1,2,3)", "dodecahedron")


def hoffman_singleton() -> Graph:
    """Pentagons P_h and pentagrams Q_i; vertex j of P_h ~ vertex h*i+j of Q_i."""
    def p(h, j):
        return 5 * h + j

    def q(i, j):
        return 25 + 5 * i + j

    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((p(h, j), p(h, (j + 1) % 5)))
            edges.append((q(h, j), q(h, (j + 2) % 5)))
            for i in range(5):
                edges.append((p(h, j), q(i, (h * i + j) % 5)))
    labels = [f"P{h}.{j}" for h in range(5) for j in range(5)] + [f"Q{i}.{j}" for i in range(5) for j in range(5)]
    g = Graph.from_edges(50, edges, labels)
    return _expect_srg(g, (50, 7, 0, 1), "Hoffman-Singleton")


def hos2() -> Graph:
    """Subgraph of Hoffman-Singleton induced on the vertices at distance 2 from vertex 0."""
    hs = hoffman_singleton()
    g, _ = induced_subgraph(hs, sphere(hs, 0, 2))
    return _expect_array(g, "(6,5,1;1,1,6)", "[HoS]_2")


def wells() -> Graph:
    g = Graph.from_edges(32, WELLS_EDGES, [f"{v % 16}.{v // 16}" for v in range(32)])
    return _expect_array(g, "(5,4,1,1;1,1,4,5)", "Wells")


# -------------------------------------------------------- Golay code and S(3,6,22)

@dataclass(frozen=True)
class SteinerSystem:
    t: int
    k: int
    points: int
    blocks: tuple[tuple[int, ...], ...]

    def verify(self) -> None:
        count: dict[tuple[int, ...], int] = {}
        for b in self.blocks:
            for sub in itertools.combinations(b, self.t):
                count[sub] = count.get(sub, 0) + 1
        expected = len(list(itertools.combinations(range(self.points), self.t)))
        if len(count) != expected or any(c != 1 for c in count.values()):
            raise InternalVerificationFailed(f"not an S({self.t},{self.k},{self.points})")


@lru_cache(maxsize=None)
def golay_codewords() -> tuple[int, ...]:
    """All 4096 words of the extended binary Golay code as 24-bit integers."""
    g = sum(bit << i for i, bit in enumerate(GOLAY_POLY))
    rows = []
    for shift in range(12):
        w = g << shift
        parity = bin(w).count("1") & 1
        rows.append(w | parity << 23)
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    weights = sorted(bin(w).count("1") for w in words)
    dist = {wt: weights.count(wt) for wt in set(weights)}
    if dist != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}:
        raise InternalVerificationFailed(f"Golay weight distribution wrong: {dist}")
    return tuple(words)


@lru_cache(maxsize=None)
def witt_22() -> SteinerSystem:
    """S(3,6,22): octads through coordinates 22 and 23, with those two deleted."""
    both = 3 << 22
    blocks = []
    for w in golay_codewords():
        if bin(w).count("1") == 8 and w & both == both:
            blocks.append(tuple(i for i in range(22) if w >> i & 1))
    s = SteinerSystem(3, 6, 22, tuple(sorted(blocks)))
    if len(s.blocks) != 77:
        raise InternalVerificationFailed(f"expected 77 blocks, found {len(s.blocks)}")
    s.verify()
    return s


def _disjointness_graph(blocks, labels) -> Graph:
    masks = [sum(1 << x for x in b) for b in blocks]
    edges = [(i, j) for i, j in itertools.combinations(range(len(blocks)), 2) if not masks[i] & masks[j]]
    return Graph.from_edges(len(blocks), edges, labels)


def m22_graph() -> Graph:
    blocks = witt_22().blocks
    g = _disjointness_graph(blocks, [f"B{i}" for i in range(len(blocks))])
    return _expect_srg(g, (77, 16, 0, 4), "M22-graph")


def gewirtz() -> Graph:
    """Blocks of S(3,6,22) avoiding point 0, adjacent when disjoint."""
    blocks = [(i, b) for i, b in enumerate(witt_22().blocks) if 0 not in b]
    g = _disjointness_graph([b for _, b in blocks], [f"B{i}" for i, _ in blocks])
    return _expect_srg(g, (56, 10, 0, 2), "Gewirtz")


def higman_sims() -> Graph:
    """Vertex *, the 22 points and the 77 blocks of S(3,6,22)."""
    blocks = witt_22().blocks
    star, pt, blk = 0, 1, 23
    edges = [(star, pt + x) for x in range(22)]
    for i, b in enumerate(blocks):
        edges += [(pt + x, blk + i) for x in b]
    masks = [sum(1 << x for x in b) for b in blocks]
    for i, j in itertools.combinations(range(77), 2):
        if not masks[i] & masks[j]:
            edges.append((blk + i, blk + j))
    labels = ["*"] + [f"p{x}" for x in range(22)] + [f"B{i}" for i in range(77)]
    g = Graph.from_edges(100, edges, labels)
    return _expect_srg(g, (100, 22, 0, 6), "Higman-Sims")


# ------------------------------------------------------------------ Hadamard

@dataclass(frozen=True)
class HadamardMatrix:
    entries: np.ndarray

    def __post_init__(self):
        h = self.entries
        n = h.shape[0]
        if h.shape != (n, n) or not np.isin(h, (1, -1)).all():
            raise InvalidOrder("Hadamard matrix must be square with entries +-1")
        if not np.array_equal(h @ h.T, n * np.eye(n, dtype=h.dtype)):
            raise InternalVerificationFailed("H H^T != nI")

    @property
    def order(self) -> int:
        return self.entries.shape[0]


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def hadamard_matrix(order: int, method: str = "sylvester") -> HadamardMatrix:
    method = method.lower()
    if method == "sylvester":
        if order < 1 or order & (order - 1):
            raise InvalidOrder(f"Sylvester construction needs a power of 2, got {order}")
        h = np.ones((1, 1), dtype=np.int64)
        while h.shape[0] < order:
            h = np.block([[h, h], [h, -h]])
        return HadamardMatrix(h)
    if method == "paley":
        q = order - 1
        if not (_is_prime(q) and q % 4 == 3):
            raise InvalidOrder(f"Paley construction needs order q+1 with prime q = 3 mod 4, got {order}")
        residues = {(x * x) % q for x in range(1, q)}
        chi = [0] + [1 if x in residues else -1 for x in range(1, q)]
        s = np.zeros((order, order), dtype=np.int64)
        s[0, 1:] = 1
        s[1:, 0] = -1
        for i in range(q):
            for j in range(q):
                s[1 + i, 1 + j] = chi[(j - i) % q]
        return HadamardMatrix(np.eye(order, dtype=np.int64) + s)
    raise InvalidOrder(f"unknown method {method!r}")


def hadamard_graph(h: HadamardMatrix) -> Graph:
    """Vertices row_i^+, row_i^-, col_j^+, col_j^-; row_i^e ~ col_j^f iff H[i,j] = e*f."""
    n = h.order
    sign = (1, -1)
    def row(i, e): return i + n * e
    def col(j, f): return 2 * n + j + n * f
    edges = [(row(i, e), col(j, f)) for i in range(n) for j in range(n)
             for e in (0, 1) for f in (0, 1) if h.entries[i, j] == sign[e] * sign[f]]
    labels = ([f"r{i}+" for i in range(n)] + [f"r{i}-" for i in range(n)]
              + [f"c{j}+" for j in range(n)] + [f"c{j}-" for j in range(n)])
    g = Graph.from_edges(4 * n, edges, labels)
    if not bipartition(g) or g.valency() != n:
        raise InternalVerificationFailed("Hadamard graph is not bipartite of valency n")
    return g


# --------------------------------------------------------- double covers, RGDs

def sdc(g: Graph) -> Graph:
    """Standard double cover: (x,1) = x, (x,2) = n + x; (x,1) ~ (y,2) iff x ~ y."""
    n = g.n
    edges = []
    for x, y in g.edges():
        edges += [(x, n + y), (y, n + x)]
    labels = [f"({g.label(x)},1)" for x in range(n)] + [f"({g.label(x)},2)" for x in range(n)]
    return Graph.from_edges(2 * n, edges, labels)


@dataclass(frozen=True)
class RgdDesign:
    """Resolvable group-divisible design RGD(r, lambda, m) on r*m points."""

    points: int
    classes: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]
    parallel_classes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_json(cls, text: str | dict) -> "RgdDesign":
        data = json.loads(text) if isinstance(text, str) else text
        return cls(int(data["points"]),
                   tuple(tuple(c) for c in data["classes"]),
                   tuple(tuple(b) for b in data["blocks"]),
                   tuple(tuple(p) for p in data["parallel_classes"]))

    def to_json(self) -> str:
        return json.dumps({"points": self.points, "classes": [list(c) for c in self.classes],
                           "blocks": [list(b) for b in self.blocks],
                           "parallel_classes": [list(p) for p in self.parallel_classes]})

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def m(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    def check(self) -> int:
        """Verify the design axioms and return lambda."""
        everything = set(range(self.points))
        flat = [x for c in self.classes for x in c]
        if sorted(flat) != sorted(everything) or len({len(c) for c in self.classes}) != 1:
            raise DesignInvariantViolated("classes must partition the points into equal sizes")
        cls_of = {x: i for i, c in enumerate(self.classes) for x in c}
        for b in self.blocks:
            if sorted(cls_of[x] for x in b) != list(range(self.r)):
                raise DesignInvariantViolated(f"block {b} does not meet every class exactly once")
        together: dict[tuple[int, int], int] = {}
        for b in self.blocks:
            for x, y in itertools.combinations(sorted(b), 2):
                together[x, y] = together.get((x, y), 0) + 1
        lams = {together.get((x, y), 0) for x, y in itertools.combinations(range(self.points), 2)
                if cls_of[x] != cls_of[y]}
        if len(lams) != 1:
            raise DesignInvariantViolated(f"cross-class pair counts not constant: {sorted(lams)}")
        used = sorted(i for p in self.parallel_classes for i in p)
        if used != list(range(len(self.blocks))):
            raise DesignInvariantViolated("parallel classes must partition the blocks")
        for p in self.parallel_classes:
            pts = [x for i in p for x in self.blocks[i]]
            if sorted(pts) != sorted(everything):
                raise DesignInvariantViolated(f"parallel class {p} is not a partition of the points")
        return lams.pop()


def rgd_from_hadamard(h: HadamardMatrix) -> RgdDesign:
    """RGD(n, n/2, 2): points (i,e), blocks {(i, f*H[i,j])} for column j and sign f."""
    n = h.order
    sign = (1, -1)
    def point(i, e): return 2 * i + e
    blocks = []
    for j in range(n):
        for f in (0, 1):
            blocks.append(tuple(sorted(point(i, 0 if sign[f] * h.entries[i, j] == 1 else 1)
                                       for i in range(n))))
    return RgdDesign(2 * n, tuple((2 * i, 2 * i + 1) for i in range(n)), tuple(blocks),
                     tuple((2 * j, 2 * j + 1) for j in range(n)))


def rgd_incidence_graph(d: RgdDesign) -> Graph:
    """Point/block incidence graph; points first, then blocks."""
    lam = d.check()
    r, m = d.r, d.m
    if r != lam * m:
        raise DesignInvariantViolated(f"need r = lambda*m, got r={r}, lambda={lam}, m={m}")
    sets = [set(b) for b in d.blocks]
    which = {i: k for k, p in enumerate(d.parallel_classes) for i in p}
    for i, j in itertools.combinations(range(len(sets)), 2):
        if which[i] != which[j] and len(sets[i] & sets[j]) != lam:
            raise CrossClassIntersectionNotConstant(
                f"blocks {i} and {j} from different parallel classes meet in {len(sets[i] & sets[j])} points")
    v = d.points
    edges = [(x, v + i) for i, b in enumerate(d.blocks) for x in b]
    labels = [f"x{x}" for x in range(v)] + [f"B{i}" for i in range(len(d.blocks))]
    g = Graph.from_edges(v + len(d.blocks), edges, labels)
    return _expect_array(g, f"({r},{r - 1},{r - lam},1;1,{lam},{r - 1},{r})", "Inc(D)")


# ------------------------------------------------------------------ registry

@dataclass(frozen=True)
class Entry:
    build: Callable[..., Graph]
    params: dict[str, Any]


def _hadamard_by_params(order: int = 4, method: str = "sylvester") -> Graph:
    return hadamard_graph(hadamard_matrix(order, method))


def _sdc_of(base: str = "petersen") -> Graph:
    entry = REGISTRY.get(base)
    if entry is None or base == "sdc":
        raise ParameterOutOfRange(f"unknown base graph {base!r}")
    return sdc(entry.build())


REGISTRY: dict[str, Entry] = {
    "complete": Entry(complete, {"n": int}),
    "cycle": Entry(cycle, {"n": int}),
    "path": Entry(path, {"n": int}),
    "complete_bipartite": Entry(complete_bipartite, {"m": int, "n": int}),
    "complete_multipartite": Entry(complete_multipartite, {"m": int, "b": int}),
    "krr_minus_matching": Entry(krr_minus_matching, {"r": int}),
    "hamming_2": Entry(hamming_2, {"d": int}),
    "folded_cube": Entry(folded_cube, {"d": int}),
    "petersen": Entry(petersen, {}),
    "dodecahedron": Entry(dodecahedron, {}),
    "hoffman_singleton": Entry(hoffman_singleton, {}),
    "hos2": Entry(hos2, {}),
    "wells": Entry(wells, {}),
    "m22_graph": Entry(m22_graph, {}),
    "gewirtz": Entry(gewirtz, {}),
    "higman_sims": Entry(higman_sims, {}),
    "hadamard_graph": Entry(_hadamard_by_params, {"order": int, "method": str}),
    "sdc": Entry(_sdc_of, {"base": str}),
}
