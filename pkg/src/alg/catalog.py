"""Canonical labelling and exhaustive enumeration of small graphs.

Canonical forms use individualisation-refinement: colour refinement to an
equitable ordered partition, then branching on the first non-singleton cell.
The canonical graph is the relabelling with the smallest adjacency key over
all leaves.  Cells whose members are pairwise twins are branched on once,
since swapping twins is an automorphism preserving the partition.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Iterator

from .graph import SimpleGraph, is_connected
from .graph6 import from_graph6, to_graph6

SHIPPED_N_MAX = 7
_SHIPPED_FILE = "graphs_upto7.g6"


def _refine(adj: tuple[frozenset[int], ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for idx, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = idx
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(sorted(cell_of[w] for w in adj[v]))
                groups.setdefault(sig, []).append(v)
            out.extend(groups[k] for k in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _twin_cell(adj: tuple[frozenset[int], ...], cell: list[int]) -> bool:
    members = set(cell)
    outside = adj[cell[0]] - members
    inside = adj[cell[0]] & members
    clique = len(inside) == len(cell) - 1
    if not clique and inside:
        return False
    for v in cell[1:]:
        if adj[v] - members != outside:
            return False
        k = len(adj[v] & members)
        if (clique and k != len(cell) - 1) or (not clique and k != 0):
            return False
    return True


def _leaf_key(g: SimpleGraph, order: list[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    key = 0
    for u, v in g.edges:
        a, b = sorted((pos[u], pos[v]))
        key |= 1 << (b * (b - 1) // 2 + a)
    return key


def canonical_labeling(g: SimpleGraph) -> list[int]:
    """Vertex order (position -> original vertex) of the canonical form."""
    if g.n == 0:
        return []
    adj = g.adjacency
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(g.degrees[v], []).append(v)
    start = [by_degree[d] for d in sorted(by_degree)]
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        if len(cells) == g.n:
            order = [c[0] for c in cells]
            key = _leaf_key(g, order)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, order
            return
        i = next(k for k, c in enumerate(cells) if len(c) > 1)
        cell = cells[i]
        choices = cell[:1] if _twin_cell(adj, cell) else cell
        for v in choices:
            rest = [w for w in cell if w != v]
            search(cells[:i] + [[v], rest] + cells[i + 1:])

    search(start)
    return best[1]


def canonical_form(g: SimpleGraph) -> SimpleGraph:
    order = canonical_labeling(g)
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges)
    return SimpleGraph(g.n, tuple(edges))


def certificate(g: SimpleGraph) -> str:
    """graph6 string of the canonical form; equal iff the graphs are isomorphic."""
    return to_graph6(canonical_form(g))


def are_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return certificate(g) == certificate(h)


@lru_cache(maxsize=None)
def _graphs_on(n: int) -> tuple[SimpleGraph, ...]:
    if n == 0:
        return (SimpleGraph(0, ()),)
    seen: dict[str, SimpleGraph] = {}
    for h in _graphs_on(n - 1):
        new = n - 1
        for k in range(n):
            for nbrs in combinations(range(n - 1), k):
                g = SimpleGraph(n, tuple(sorted(h.edges + tuple((u, new) for u in nbrs))))
                c = canonical_form(g)
                seen.setdefault(to_graph6(c), c)
    return tuple(sorted(seen.values(), key=lambda c: (c.m, to_graph6(c))))


def enumerate_graphs(n: int) -> tuple[SimpleGraph, ...]:
    """All graphs on exactly ``n`` vertices up to isomorphism, canonical forms,
    ordered by edge count then graph6 string."""
    return _graphs_on(n)


@lru_cache(maxsize=1)
def _shipped() -> tuple[SimpleGraph, ...]:
    text = resources.files("alg").joinpath("data", _SHIPPED_FILE).read_text()
    return tuple(from_graph6(line) for line in text.split() if line)


def graph_catalog(n_max: int, *, connected: bool = False, n_min: int = 1) -> Iterator[SimpleGraph]:
    """Every graph with ``n_min <= n <= n_max`` up to isomorphism.

    Uses the shipped enumeration file for ``n_max <= 7`` and enumerates
    otherwise.
    """
    if n_max <= SHIPPED_N_MAX:
        pool: tuple[SimpleGraph, ...] = _shipped()
    else:
        pool = tuple(g for n in range(1, n_max + 1) for g in enumerate_graphs(n))
    for g in pool:
        if n_min <= g.n <= n_max and (not connected or is_connected(g)):
            yield g


def write_shipped_catalog(path) -> int:
    """Regenerate the shipped enumeration file; returns the number of graphs."""
    graphs = [g for n in range(1, SHIPPED_N_MAX + 1) for g in enumerate_graphs(n)]
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
    return len(graphs)


CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85}
_CUBIC_FILE = "cubic_upto12.g6"


def sample_cubic_classes(n: int, rng, target: int, max_samples: int = 2_000_000) -> list[SimpleGraph]:
    """Connected cubic graphs on ``n`` vertices collected from the pairing model
    until ``target`` isomorphism classes have been seen."""
    from .families import random_cubic_graph

    seen: dict[str, SimpleGraph] = {}
    for _ in range(max_samples):
        g = random_cubic_graph(n, rng)
        if not is_connected(g):
            continue
        c = canonical_form(g)
        seen.setdefault(to_graph6(c), c)
        if len(seen) == target:
            break
    return sorted(seen.values(), key=to_graph6)


@lru_cache(maxsize=1)
def cubic_catalog() -> tuple[SimpleGraph, ...]:
    """Every connected cubic graph with at most 12 vertices (shipped file)."""
    text = resources.files("alg").joinpath("data", _CUBIC_FILE).read_text()
    return tuple(from_graph6(line) for line in text.split() if line)
