"""Finite simple graphs, orientations, incidence and Laplacian matrices.

Edges are stored in canonical order: pairs ``(u, v)`` with ``u < v`` sorted
lexicographically.  Edge ``i`` of a graph is ``g.edges[i]`` everywhere in the
package, including as vertex ``i`` of the line graph and of the signed line
graph built from it.

An orientation is a tuple of ``+1``/``-1`` signs indexed by edge.  Sign ``+1``
keeps the reference direction ``u -> v``; ``-1`` reverses it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError, ParseError

Edge = tuple[int, int]
Orientation = tuple[int, ...]


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        prev = None
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not 0 <= u < v:
                raise GraphError(f"edge {e} is not in canonical (u < v) form")
            if v >= self.n:
                raise GraphError(f"edge {e} has endpoint >= n={self.n}")
            if prev is not None and e <= prev:
                raise GraphError("edges must be strictly increasing")
            prev = e

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adjacency)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices at each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"


def from_edge_list(pairs: Iterable[Sequence[int]], n: int | None = None) -> SimpleGraph:
    """Build a canonical graph from vertex pairs; repeated pairs collapse."""
    canon: set[Edge] = set()
    top = -1
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex in pair ({u}, {v})")
        canon.add((u, v) if u < v else (v, u))
        top = max(top, u, v)
    if n is None:
        n = top + 1
    elif top >= n:
        raise GraphError(f"endpoint {top} >= n={n}")
    return SimpleGraph(n, tuple(sorted(canon)))


def edge_subgraph(g: SimpleGraph, keep: Iterable[int]) -> SimpleGraph:
    """Spanning subgraph on the same vertex set keeping the given edge indices."""
    return SimpleGraph(g.n, tuple(g.edges[i] for i in sorted(set(keep))))


def induced_subgraph(g: SimpleGraph, vertices: Iterable[int]) -> SimpleGraph:
    """Induced subgraph, relabelled to ``0..k-1`` in ascending vertex order."""
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return SimpleGraph(len(vs), tuple(sorted(edges)))


def relabel(g: SimpleGraph, perm: Sequence[int]) -> SimpleGraph:
    """Apply the vertex map ``v -> perm[v]``."""
    return from_edge_list(((perm[u], perm[v]) for u, v in g.edges), n=g.n)


# -- orientations ------------------------------------------------------------

def reference_orientation(g: SimpleGraph) -> Orientation:
    return (1,) * g.m


def orientation_from_mask(g: SimpleGraph, mask: int) -> Orientation:
    """Bit ``i`` of ``mask`` set means edge ``i`` is reversed."""
    return tuple(-1 if (mask >> i) & 1 else 1 for i in range(g.m))


def orientation_mask(o: Sequence[int]) -> int:
    return sum(1 << i for i, s in enumerate(o) if s == -1)


def check_orientation(g: SimpleGraph, o: Sequence[int]) -> Orientation:
    if len(o) != g.m:
        raise GraphError(f"orientation has {len(o)} signs, graph has {g.m} edges")
    if any(s not in (1, -1) for s in o):
        raise GraphError("orientation signs must be +1 or -1")
    return tuple(int(s) for s in o)


def reverse_edges(o: Sequence[int], edges: Iterable[int]) -> Orientation:
    out = list(o)
    for i in edges:
        out[i] = -out[i]
    return tuple(out)


def head_tail(g: SimpleGraph, o: Sequence[int], i: int) -> tuple[int, int]:
    u, v = g.edges[i]
    return (v, u) if o[i] == 1 else (u, v)


def out_in_degrees(g: SimpleGraph, o: Sequence[int]) -> tuple[list[int], list[int]]:
    dout = [0] * g.n
    din = [0] * g.n
    for i in range(g.m):
        head, tail = head_tail(g, o, i)
        dout[tail] += 1
        din[head] += 1
    return dout, din


# -- matrices -----------------------------------------------------------------

def incidence_matrix(g: SimpleGraph, o: Sequence[int] | None = None) -> np.ndarray:
    """Oriented ``n x m`` incidence matrix: ``+1`` at the head, ``-1`` at the tail."""
    o = reference_orientation(g) if o is None else check_orientation(g, o)
    D = np.zeros((g.n, g.m), dtype=np.int64)
    for i in range(g.m):
        head, tail = head_tail(g, o, i)
        D[head, i] = 1
        D[tail, i] = -1
    return D


def adjacency_matrix(g: SimpleGraph) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        A[u, v] = A[v, u] = 1
    return A


def laplacian(g: SimpleGraph) -> np.ndarray:
    """``diag(degrees) - adjacency``; equals ``D @ D.T`` for every orientation."""
    return np.diag(np.array(g.degrees, dtype=np.int64)) - adjacency_matrix(g)


def line_graph(g: SimpleGraph) -> SimpleGraph:
    pairs = []
    for inc in g.incident_edges:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                pairs.append((inc[a], inc[b]))
    # simple graph: two distinct edges meet in at most one vertex
    return SimpleGraph(g.m, tuple(sorted(pairs)))


# -- structure ----------------------------------------------------------------

def connected_components(g: SimpleGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adjacency[x]):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: SimpleGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def line_graph_component_count(g: SimpleGraph) -> int:
    """Components of ``L(g)``: components of ``g`` that carry at least one edge."""
    return sum(1 for c in connected_components(g) if len(c) > 1)


def two_coloring(g: SimpleGraph, removed: frozenset[int] = frozenset()) -> list[int] | None:
    """BFS 2-colouring of ``g`` minus ``removed``; ``None`` if not bipartite.

    Removed vertices get colour ``-1``.
    """
    color = [-1] * g.n
    for s in range(g.n):
        if s in removed or color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y in removed:
                    continue
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def is_bipartite(g: SimpleGraph) -> bool:
    return two_coloring(g) is not None


def shortest_parity_cycle(
    neighbors: Sequence[Sequence[tuple[int, int]]],
    allowed: Sequence[bool] | None = None,
) -> list[int] | None:
    """Shortest closed walk with odd total parity, as a vertex list.

    ``neighbors[v]`` holds ``(w, bit)`` pairs; traversing the edge adds ``bit``
    to the parity.  A shortest odd-parity closed walk never repeats a vertex
    (otherwise it splits into two shorter walks, one of them odd), so the
    result is a simple cycle.  Used for odd cycles (all bits 1) and for
    negative cycles of signed graphs (bit 1 on negative edges).
    """
    n = len(neighbors)
    best: list[int] | None = None
    for s in range(n):
        if allowed is not None and not allowed[s]:
            continue
        parent: dict[tuple[int, int], tuple[int, int] | None] = {(s, 0): None}
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        hit = False
        while queue and not hit:
            state = queue.popleft()
            d = dist[state]
            if best is not None and d + 1 >= len(best):
                break
            x, p = state
            for y, bit in neighbors[x]:
                if allowed is not None and not allowed[y]:
                    continue
                nxt = (y, p ^ bit)
                if nxt in parent:
                    continue
                parent[nxt] = state
                dist[nxt] = d + 1
                if nxt == (s, 1):
                    walk = []
                    cur: tuple[int, int] | None = parent[nxt]
                    while cur is not None:
                        walk.append(cur[0])
                        cur = parent[cur]
                    best = walk[::-1]
                    hit = True
                    break
                queue.append(nxt)
    return best


def shortest_odd_cycle(g: SimpleGraph, removed: frozenset[int] = frozenset()) -> list[int] | None:
    nbrs = [[(y, 1) for y in sorted(g.adjacency[x])] for x in range(g.n)]
    allowed = [v not in removed for v in range(g.n)]
    return shortest_parity_cycle(nbrs, allowed)


def triangle_count(g: SimpleGraph) -> int:
    """Triangles via sorted adjacency intersection over edges ``u < v < w``."""
    total = 0
    for u, v in g.edges:
        total += sum(1 for w in g.adjacency[u] & g.adjacency[v] if w > v)
    return total


@dataclass(frozen=True)
class GraphStats:
    degrees: tuple[int, ...]
    triangles: int
    bipartite: bool
    components: int
    line_graph_components: int


def basic_stats(g: SimpleGraph) -> GraphStats:
    return GraphStats(
        degrees=g.degrees,
        triangles=triangle_count(g),
        bipartite=is_bipartite(g),
        components=len(connected_components(g)),
        line_graph_components=line_graph_component_count(g),
    )


def simple_cycles(g: SimpleGraph, max_len: int, min_len: int = 3) -> list[list[int]]:
    """Every simple cycle of length ``min_len..max_len`` exactly once.

    Each cycle starts at its smallest vertex and its second vertex is smaller
    than its last, which fixes one of the two traversal directions.
    """
    out: list[list[int]] = []
    adj = [sorted(a) for a in g.adjacency]

    def extend(path: list[int], on_path: set[int]) -> None:
        start, last = path[0], path[-1]
        for w in adj[last]:
            if w == start and len(path) >= min_len and len(path) >= 3 and path[1] < last:
                out.append(list(path))
            elif w > start and w not in on_path and len(path) < max_len:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                path.pop()
                on_path.discard(w)

    for s in range(g.n):
        extend([s], {s})
    return out


# -- edge-list text format -------------------------------------------------------

def parse_edge_list(text: str) -> SimpleGraph:
    """Parse ``u v`` lines with ``#`` comments and an optional ``n=<count>`` line."""
    n = None
    pairs = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if first and line.startswith("n="):
            try:
                n = int(line[2:])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad vertex count {line!r}") from exc
            first = False
            continue
        first = False
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer vertex in {line!r}") from exc
    try:
        return from_edge_list(pairs, n)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def format_edge_list(g: SimpleGraph) -> str:
    lines = [f"n={g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
