"""Standard graph families with documented labelings."""

from __future__ import annotations

import random
from typing import Sequence

from .errors import GraphError
from .graph import SimpleGraph, from_edge_list


def _need(k: int, least: int, name: str) -> None:
    if k < least:
        raise GraphError(f"{name} needs size >= {least}, got {k}")


def path(k: int) -> SimpleGraph:
    """Path on ``k`` vertices ``0-1-...-(k-1)``."""
    _need(k, 1, "path")
    return from_edge_list([(i, i + 1) for i in range(k - 1)], n=k)


def cycle(k: int) -> SimpleGraph:
    _need(k, 3, "cycle")
    return from_edge_list([(i, (i + 1) % k) for i in range(k)], n=k)


def star(k: int) -> SimpleGraph:
    """``K_{1,k}`` with centre 0 and leaves ``1..k``."""
    _need(k, 1, "star")
    return from_edge_list([(0, i) for i in range(1, k + 1)], n=k + 1)


def complete(k: int) -> SimpleGraph:
    _need(k, 1, "complete")
    return from_edge_list([(i, j) for i in range(k) for j in range(i + 1, k)], n=k)


def complete_multipartite(parts: Sequence[int]) -> SimpleGraph:
    """Parts are numbered in input order and occupy consecutive vertex ranges."""
    if not parts:
        raise GraphError("complete_multipartite needs at least one part")
    for p in parts:
        _need(p, 1, "part")
    label = []
    for idx, p in enumerate(parts):
        label.extend([idx] * p)
    n = len(label)
    return from_edge_list(
        [(i, j) for i in range(n) for j in range(i + 1, n) if label[i] != label[j]], n=n)


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return complete_multipartite([a, b])


def prism(k: int) -> SimpleGraph:
    """``C_k x K_2``: outer cycle ``0..k-1``, inner cycle ``k..2k-1``, spokes ``i ~ i+k``."""
    _need(k, 3, "prism")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, i + k) for i in range(k)]
    return from_edge_list(edges, n=2 * k)


def mobius_ladder(k: int) -> SimpleGraph:
    """Cycle on ``2k`` vertices plus the ``k`` long diagonals ``i ~ i+k``."""
    _need(k, 2, "mobius_ladder")
    n = 2 * k
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, i + k) for i in range(k)]
    return from_edge_list(edges, n=n)


def generalized_petersen(k: int, j: int) -> SimpleGraph:
    """Outer ``i ~ i+1``, spokes ``i ~ k+i``, inner ``k+i ~ k+(i+j)``."""
    _need(k, 3, "generalized_petersen")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    edges += [(k + i, k + (i + j) % k) for i in range(k)]
    return from_edge_list(edges, n=2 * k)


def petersen() -> SimpleGraph:
    return generalized_petersen(5, 2)


def hypercube(d: int) -> SimpleGraph:
    _need(d, 1, "hypercube")
    n = 1 << d
    return from_edge_list([(v, v ^ (1 << b)) for v in range(n) for b in range(d)], n=n)


def lcf(n: int, shifts: Sequence[int]) -> SimpleGraph:
    """Hamiltonian cycle ``0..n-1`` plus chords ``i ~ i + shifts[i mod len]``."""
    _need(n, 3, "lcf")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, (i + shifts[i % len(shifts)]) % n) for i in range(n)]
    return from_edge_list(edges, n=n)


def frucht() -> SimpleGraph:
    """12-vertex cubic graph with trivial automorphism group."""
    return lcf(12, [-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2])


def franklin() -> SimpleGraph:
    return lcf(12, [5, -5])


def truncated_tetrahedron() -> SimpleGraph:
    return lcf(12, [2, 6, -2])


def durer() -> SimpleGraph:
    return generalized_petersen(6, 2)


def tietze() -> SimpleGraph:
    """Petersen graph with one vertex replaced by a triangle."""
    p = petersen()
    # replace vertex 0 (neighbours 1, 4, 5) by the triangle 0, 10, 11
    edges = [(u, v) for u, v in p.edges if 0 not in (u, v)]
    edges += [(0, 1), (10, 4), (11, 5), (0, 10), (0, 11), (10, 11)]
    return from_edge_list(edges, n=12)


def random_graph(n: int, p: float, rng: random.Random) -> SimpleGraph:
    return from_edge_list(
        [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p], n=n)


def random_connected_graph(n: int, p: float, rng: random.Random) -> SimpleGraph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return from_edge_list(edges, n=n)


def random_cubic_graph(n: int, rng: random.Random, max_tries: int = 10_000) -> SimpleGraph:
    """Uniform-ish simple cubic graph by rejection from the pairing model."""
    if n % 2 or n < 4:
        raise GraphError(f"cubic graphs need even n >= 4, got {n}")
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = [tuple(sorted(points[i:i + 2])) for i in range(0, len(points), 2)]
        if any(u == v for u, v in pairs) or len(set(pairs)) != len(pairs):
            continue
        return from_edge_list(pairs, n=n)
    raise RuntimeError(f"no simple cubic graph on {n} vertices after {max_tries} tries")
