"""Edge-list, label, generator and partition files."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .errors import GeodexError, ParseError
from .graph import Graph
from .perm import PermGroup, check_perm, from_cycles


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [(k + 1, r) for k, r in enumerate(rows) if r]
    if not rows:
        raise ParseError("empty edge list")
    line, head = rows[0]
    try:
        n, m = map(int, head)
    except ValueError:
        raise ParseError(f"line {line}: header must be 'n m'") from None
    if n < 0 or m < 0:
        raise ParseError(f"line {line}: negative count")
    if len(rows) - 1 != m:
        raise ParseError(f"header declares {m} edges, found {len(rows) - 1}")
    edges = []
    for line, r in rows[1:]:
        try:
            u, v = map(int, r)
        except ValueError:
            raise ParseError(f"line {line}: expected 'u v', got {' '.join(r)!r}") from None
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges)
    except GeodexError as exc:
        raise ParseError(str(exc)) from exc


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path, labels: str | Path | None = None) -> Graph:
    g = parse_edge_list(Path(path).read_text())
    if labels is not None:
        names = read_labels(labels)
        if len(names) != g.n:
            raise ParseError(f"label file has {len(names)} names for {g.n} vertices")
        g = Graph(g.n, g.adj, names)
    return g


def write_edge_list(g: Graph, path: str | Path, labels: str | Path | None = None) -> None:
    Path(path).write_text(format_edge_list(g))
    if labels is not None:
        Path(labels).write_text("".join(f"{v} {g.label(v)}\n" for v in range(g.n)))


def read_labels(path: str | Path) -> list[str]:
    """Label file: one ``index name`` line per vertex, in order."""
    names = []
    for k, ln in enumerate(Path(path).read_text().splitlines()):
        if not ln.strip():
            continue
        idx, _, name = ln.strip().partition(" ")
        if idx != str(len(names)):
            raise ParseError(f"label line {k + 1}: expected index {len(names)}")
        names.append(name.strip())
    return names


def parse_generators(data: object) -> PermGroup:
    """``{"degree": n, "generators": [...]}``; each generator is an image array or a cycle list."""
    if not isinstance(data, dict) or "degree" not in data or "generators" not in data:
        raise ParseError("generator JSON needs 'degree' and 'generators'")
    n = data["degree"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("degree must be a non-negative integer")
    gens = []
    for k, gen in enumerate(data["generators"]):
        try:
            if gen and all(isinstance(c, list) for c in gen):
                p = from_cycles(gen, n)
            else:
                p = tuple(gen)
                if len(p) != n:
                    raise ParseError(f"generator {k} has length {len(p)}, degree is {n}")
                check_perm(p)
        except (GeodexError, TypeError, ValueError) as exc:
            raise ParseError(f"generator {k}: {exc}") from exc
        gens.append(p)
    return PermGroup(gens, n)


def read_generators(path: str | Path) -> PermGroup:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_generators(data)


def generators_to_json(group: PermGroup) -> dict:
    return {"degree": group.degree, "generators": [list(p) for p in group.gens]}


def read_partition(path: str | Path) -> list[list[int]]:
    try:
        cells = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(cells, list) or not all(
            isinstance(c, list) and all(isinstance(x, int) for x in c) for c in cells):
        raise ParseError("partition JSON must be a list of integer lists")
    return cells


def write_partition(cells: Sequence[Sequence[int]], path: str | Path) -> None:
    Path(path).write_text(json.dumps([list(c) for c in cells]) + "\n")
