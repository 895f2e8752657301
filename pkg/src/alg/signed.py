"""Signed graphs, switching, and the antisymmetric line graph ``A(G)``.

``A(G)`` lives on the edge set of ``G``: vertex ``i`` of the signed graph is
edge ``i`` of ``G`` and its underlying graph is ``line_graph(G)``.  Two edges
meeting at ``v`` get sign ``+1`` when both enter or both leave ``v`` and
``-1`` when one enters and the other leaves, which is the off-diagonal part
of ``D.T @ D``.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError, ParseError, ResourceLimitError
from .graph import (
    SimpleGraph,
    check_orientation,
    from_edge_list,
    head_tail,
    line_graph,
    line_graph_component_count,
    reference_orientation,
    reverse_edges,
    shortest_parity_cycle,
    simple_cycles,
)


@dataclass(frozen=True)
class SignedGraph:
    underlying: SimpleGraph
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != self.underlying.m:
            raise GraphError(
                f"{len(self.signs)} signs for {self.underlying.m} underlying edges")
        if any(s not in (1, -1) for s in self.signs):
            raise GraphError("edge signs must be +1 or -1")

    @property
    def n(self) -> int:
        return self.underlying.n

    @cached_property
    def sign_of(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.underlying.edges, self.signs))

    def sign(self, x: int, y: int) -> int:
        return self.sign_of[(x, y) if x < y else (y, x)]

    @property
    def negative_edges(self) -> int:
        return sum(1 for s in self.signs if s < 0)


def all_positive(g: SimpleGraph) -> SignedGraph:
    return SignedGraph(g, (1,) * g.m)


def build_alg(g: SimpleGraph, o: Sequence[int] | None = None) -> SignedGraph:
    """Antisymmetric line graph of ``g`` under orientation ``o``."""
    o = reference_orientation(g) if o is None else check_orientation(g, o)
    lg = line_graph(g)
    # incidence sign of edge i at vertex v: +1 at the head, -1 at the tail
    inc_sign = {}
    for i in range(g.m):
        head, tail = head_tail(g, o, i)
        inc_sign[(head, i)] = 1
        inc_sign[(tail, i)] = -1
    signs = []
    for e, f in lg.edges:
        (v,) = set(g.edges[e]) & set(g.edges[f])
        signs.append(inc_sign[(v, e)] * inc_sign[(v, f)])
    return SignedGraph(lg, tuple(signs))


def signed_adjacency_matrix(s: SignedGraph) -> np.ndarray:
    S = np.zeros((s.n, s.n), dtype=np.int64)
    for (x, y), sg in zip(s.underlying.edges, s.signs):
        S[x, y] = S[y, x] = sg
    return S


def switch(s: SignedGraph, F: Iterable[int]) -> SignedGraph:
    """Negate every edge with exactly one endpoint in ``F``."""
    F = frozenset(F)
    if any(not 0 <= v < s.n for v in F):
        raise GraphError("switching set outside the vertex range")
    signs = tuple(-sg if ((x in F) != (y in F)) else sg
                  for (x, y), sg in zip(s.underlying.edges, s.signs))
    return SignedGraph(s.underlying, signs)


def orientation_switch_consistency(g: SimpleGraph, o: Sequence[int], F_edges: Iterable[int]) -> bool:
    """Reversing edges ``F`` of ``g`` equals switching ``A(g)`` at ``F``."""
    F_edges = frozenset(F_edges)
    if any(not 0 <= i < g.m for i in F_edges):
        raise GraphError("F_edges must be edge indices of g")
    return build_alg(g, reverse_edges(o, F_edges)) == switch(build_alg(g, o), F_edges)


def switching_class_size(g: SimpleGraph) -> int:
    return 2 ** (g.m - line_graph_component_count(g))


def cycle_sign(s: SignedGraph, cycle: Sequence[int]) -> int:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise GraphError(f"not a cycle: {list(cycle)}")
    prod = 1
    for i in range(k):
        x, y = cycle[i], cycle[(i + 1) % k]
        key = (x, y) if x < y else (y, x)
        if key not in s.sign_of:
            raise GraphError(f"{x}-{y} is not an edge; {list(cycle)} is not a cycle")
        prod *= s.sign_of[key]
    return prod


def lifted_cycle(g: SimpleGraph, cycle: Sequence[int]) -> list[int]:
    """Edge indices ``e_i = v_i v_{i+1}``: the image of a cycle of ``g`` in ``L(g)``."""
    k = len(cycle)
    return [g.edge_id(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def lifted_cycle_violations(g: SimpleGraph, max_len: int = 8,
                            o: Sequence[int] | None = None) -> list[tuple[list[int], int]]:
    """Cycles of ``g`` (length <= max_len) whose lift has sign other than ``(-1)^k``."""
    s = build_alg(g, o)
    bad = []
    for c in simple_cycles(g, max_len):
        sg = cycle_sign(s, lifted_cycle(g, c))
        if sg != (-1) ** len(c):
            bad.append((c, sg))
    return bad


def lifted_cycle_parity_check(g: SimpleGraph, max_len: int = 8) -> bool:
    return not lifted_cycle_violations(g, max_len)


def switching_normal_form(s: SignedGraph) -> tuple[SignedGraph, frozenset[int]]:
    """Switch so that a BFS spanning forest is all positive.

    The forest is rooted at the smallest vertex of each component and
    neighbours are visited in ascending order.  Returns the switched graph
    and the switching set that produced it.
    """
    adj = s.underlying.adjacency
    pot = [0] * s.n
    for root in range(s.n):
        if pot[root]:
            continue
        pot[root] = 1
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if not pot[y]:
                    pot[y] = pot[x] * s.sign(x, y)
                    queue.append(y)
    F = frozenset(v for v in range(s.n) if pot[v] == -1)
    return switch(s, F), F


def is_balanced(s: SignedGraph) -> bool:
    nf, _ = switching_normal_form(s)
    return nf.negative_edges == 0


def switching_equivalent(s1: SignedGraph, s2: SignedGraph) -> bool:
    if s1.underlying != s2.underlying:
        raise GraphError("switching equivalence needs the same labelled underlying graph")
    return switching_normal_form(s1)[0].signs == switching_normal_form(s2)[0].signs


def induced_signed_subgraph(s: SignedGraph, removed: Iterable[int]) -> SignedGraph:
    """Delete vertices; survivors keep their relative order and are relabelled."""
    removed = frozenset(removed)
    keep = [v for v in range(s.n) if v not in removed]
    pos = {v: i for i, v in enumerate(keep)}
    pairs, signs = [], []
    for (x, y), sg in zip(s.underlying.edges, s.signs):
        if x in pos and y in pos:
            pairs.append((pos[x], pos[y]))
            signs.append(sg)
    return SignedGraph(SimpleGraph(len(keep), tuple(pairs)), tuple(signs))


def shortest_negative_cycle(s: SignedGraph, removed: Iterable[int] = ()) -> list[int] | None:
    removed = frozenset(removed)
    nbrs = [[(y, 1 if s.sign(x, y) < 0 else 0) for y in sorted(s.underlying.adjacency[x])]
            for x in range(s.n)]
    return shortest_parity_cycle(nbrs, [v not in removed for v in range(s.n)])


class RootType(enum.Enum):
    TRIANGLE_ROOT = "K3"
    STAR_ROOT = "K1,3"


def whitney_disambiguate(s: SignedGraph) -> RootType:
    """Root of a signed triangle in the switching class of ``A(K3)`` or ``A(K1,3)``."""
    if s.underlying != SimpleGraph(3, ((0, 1), (0, 2), (1, 2))):
        raise GraphError("whitney_disambiguate needs underlying graph K3")
    return RootType.TRIANGLE_ROOT if cycle_sign(s, (0, 1, 2)) < 0 else RootType.STAR_ROOT


def induced_cycles(g: SimpleGraph, max_len: int, min_len: int = 3) -> list[list[int]]:
    """Chordless cycles of length ``min_len..max_len``, each listed once.

    Anchored at the smallest vertex; the second vertex is smaller than the
    last.
    """
    adj = g.adjacency
    out: list[list[int]] = []

    def extend(path: list[int]) -> None:
        start, last = path[0], path[-1]
        interior = path[1:-1]
        for w in sorted(adj[last]):
            if w <= start or w in path:
                continue
            if any(x in adj[w] for x in interior):
                continue
            if len(path) >= 2 and start in adj[w]:
                k = len(path) + 1
                if min_len <= k <= max_len and path[1] < w:
                    out.append(path + [w])
                continue
            if len(path) + 1 < max_len:
                extend(path + [w])

    for s in range(g.n):
        extend([s])
    return out


@dataclass(frozen=True)
class CycleViolation:
    cycle: tuple[int, ...]
    sign: int
    expected: int


def audit_induced_cycle_signs(s: SignedGraph, max_len: int) -> list[CycleViolation]:
    """Induced cycles of length 4..max_len whose sign is not ``(-1)^k``."""
    if max_len < 4:
        raise GraphError("max_len must be at least 4")
    out = []
    for c in induced_cycles(s.underlying, max_len, min_len=4):
        sg = cycle_sign(s, c)
        expected = (-1) ** len(c)
        if sg != expected:
            out.append(CycleViolation(tuple(c), sg, expected))
    return out


def frustration_index_bruteforce(s: SignedGraph, limit: int = 22) -> int:
    """Minimum negative-edge count over all ``2^n`` switchings (Gray-code walk)."""
    if s.n > limit:
        raise ResourceLimitError("frustration_index_bruteforce", "n", limit, s.n)
    adj = [sorted(a) for a in s.underlying.adjacency]
    cur = {e: sg for e, sg in s.sign_of.items()}
    neg = s.negative_edges
    best = neg
    gray = 0
    for i in range(1, 1 << s.n):
        nxt = i ^ (i >> 1)
        v = (nxt ^ gray).bit_length() - 1
        gray = nxt
        for w in adj[v]:
            key = (v, w) if v < w else (w, v)
            cur[key] = -cur[key]
            neg += 1 if cur[key] < 0 else -1
        best = min(best, neg)
    return best


def distinct_orientation_signings(g: SimpleGraph, limit: int = 16) -> set[tuple[int, ...]]:
    """Sign vectors of ``A(g)`` over all ``2^m`` orientations."""
    if g.m > limit:
        raise ResourceLimitError("distinct_orientation_signings", "m", limit, g.m)
    out = set()
    for mask in range(1 << g.m):
        o = tuple(-1 if (mask >> i) & 1 else 1 for i in range(g.m))
        out.add(build_alg(g, o).signs)
    return out


# -- text and JSON formats ---------------------------------------------------

def parse_signed_edge_list(text: str) -> SignedGraph:
    """``u v s`` lines with ``s`` in ``{+1, -1}``; optional ``n=<count>`` first line."""
    n = None
    rows: dict[tuple[int, int], int] = {}
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if first and line.startswith("n="):
            n = int(line[2:])
            first = False
            continue
        first = False
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("+1", "-1", "1"):
            raise ParseError(f"line {lineno}: expected 'u v +1|-1', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        key = (min(u, v), max(u, v))
        sg = -1 if parts[2] == "-1" else 1
        if rows.get(key, sg) != sg:
            raise ParseError(f"line {lineno}: conflicting sign for edge {key}")
        rows[key] = sg
    try:
        g = from_edge_list(rows, n)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    return SignedGraph(g, tuple(rows[e] for e in g.edges))


def format_signed_edge_list(s: SignedGraph) -> str:
    lines = [f"n={s.n}"]
    lines += [f"{x} {y} {'+1' if sg > 0 else '-1'}" for (x, y), sg in zip(s.underlying.edges, s.signs)]
    return "\n".join(lines) + "\n"


def signs_to_json(s: SignedGraph) -> str:
    return json.dumps({
        "n": s.n,
        "edges": [list(e) for e in s.underlying.edges],
        "signs": {str(i): sg for i, sg in enumerate(s.signs)},
    }, sort_keys=True)


def signs_from_json(text: str) -> SignedGraph:
    data = json.loads(text)
    g = SimpleGraph(int(data["n"]), tuple(tuple(e) for e in data["edges"]))
    signs = tuple(int(data["signs"][str(i)]) for i in range(g.m))
    return SignedGraph(g, signs)
