from __future__ import annotations

import functools
import itertools
import random

import pytest

from geodex import constructions as C
from geodex.autsearch import search_automorphisms
from geodex.graph import Graph


@functools.lru_cache(maxsize=None)
def named(name: str, **params) -> Graph:
    return C.REGISTRY[name].build(**params)


@functools.lru_cache(maxsize=None)
def aut(name: str, **params):
    return search_automorphisms(named(name, **params))


def circulant(n: int, jumps) -> Graph:
    conn = {s % n for j in jumps for s in (j, -j)}
    edges = {(min(x, (x + s) % n), max(x, (x + s) % n)) for x in range(n) for s in conn}
    return Graph.from_edges(n, sorted(edges))


def random_relabel(g: Graph, seed: int) -> tuple[Graph, list[int]]:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()]), perm


@pytest.fixture(scope="session")
def small_connected_graphs():
    nx = pytest.importorskip("networkx")
    out = []
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() and nx.is_connected(h):
            out.append(Graph.from_edges(h.number_of_nodes(), list(h.edges())))
    return out


def all_pairs(n):
    return itertools.combinations(range(n), 2)
