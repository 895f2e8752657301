"""Exact frustration, imbalance energy, Max-Cut, odd cycle transversal.

Every search here is exact and exponential; inputs are guarded by size
limits that raise :class:`ResourceLimitError` instead of truncating.  Each
search also accepts an optional ``deadline`` (a ``time.monotonic`` value)
and raises :class:`SearchTimeout` once past it.

Witness tie-breaking is lexicographic throughout: sign/partition vectors
compare position by position in index order with ``0`` (unreversed / side
0) before ``1``; vertex and edge sets compare as ascending index tuples.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .errors import GraphError, ResourceLimitError, SearchTimeout
from .graph import (
    Orientation,
    SimpleGraph,
    check_orientation,
    out_in_degrees,
    shortest_odd_cycle,
    simple_cycles,
    two_coloring,
)
from .signed import build_alg, shortest_negative_cycle


@dataclass(frozen=True)
class SearchLimits:
    max_edges_frustration: int = 26
    max_vertices_maxcut: int = 28
    max_vertices_oct: int = 24
    max_vertices_packing: int = 10


LIMITS = SearchLimits()

_CHECK_EVERY = 4096


def _check_deadline(deadline: float | None, stage: str) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise SearchTimeout(stage)


@dataclass(frozen=True)
class OrientationSearchResult:
    best_value: int
    witness: Orientation
    nodes_explored: int


@dataclass(frozen=True)
class CutResult:
    maxcut_value: int
    defect: int
    partition: frozenset[int]
    defect_edges: tuple[int, ...]


@dataclass(frozen=True)
class OctResult:
    oct_value: int
    transversal: frozenset[int]


def directed_two_path_count(g: SimpleGraph, o: Sequence[int]) -> int:
    """Number of directed 2-paths, i.e. negative edges of ``A(g)`` under ``o``."""
    dout, din = out_in_degrees(g, check_orientation(g, o))
    return sum(a * b for a, b in zip(dout, din))


def _component_anchor_edges(g: SimpleGraph) -> frozenset[int]:
    """Lowest-index edge of every component of ``L(g)``."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        parent[find(u)] = find(v)
    seen, anchors = set(), set()
    for i, (u, _) in enumerate(g.edges):
        r = find(u)
        if r not in seen:
            seen.add(r)
            anchors.add(i)
    return frozenset(anchors)


def frustration_index_exact(g: SimpleGraph, *, max_edges: int | None = None,
                            deadline: float | None = None) -> OrientationSearchResult:
    """Minimum of ``sum_v d+(v) d-(v)`` over orientations, by branch and bound.

    Edges are decided in canonical order, keeping direction before reversing.
    The lowest edge of each component of ``L(g)`` stays unreversed: reversing a
    whole component gives the same signed graph.  A partial orientation is
    pruned when the sum over vertices of the smallest product still reachable
    at that vertex is no better than the incumbent.
    """
    limit = LIMITS.max_edges_frustration if max_edges is None else max_edges
    if g.m > limit:
        raise ResourceLimitError("frustration", "m", limit, g.m)
    m, edges = g.m, g.edges
    fixed = _component_anchor_edges(g)
    dout = [0] * g.n
    din = [0] * g.n
    rem = list(g.degrees)
    lb = [0] * g.n
    choice = [1] * m
    state = {"total": 0, "best": None, "witness": None, "nodes": 0}

    def vertex_lb(v: int) -> int:
        a, b, r = dout[v], din[v], rem[v]
        return min(a * (b + r), (a + r) * b)

    def rec(i: int) -> None:
        state["nodes"] += 1
        if state["nodes"] % _CHECK_EVERY == 0:
            _check_deadline(deadline, "frustration")
        if i == m:
            state["best"] = state["total"]
            state["witness"] = tuple(choice)
            return
        u, v = edges[i]
        for sgn in (1,) if i in fixed else (1, -1):
            tail, head = (u, v) if sgn == 1 else (v, u)
            dout[tail] += 1
            din[head] += 1
            rem[u] -= 1
            rem[v] -= 1
            old_u, old_v = lb[u], lb[v]
            lb[u], lb[v] = vertex_lb(u), vertex_lb(v)
            state["total"] += lb[u] + lb[v] - old_u - old_v
            if state["best"] is None or state["total"] < state["best"]:
                choice[i] = sgn
                rec(i + 1)
            state["total"] -= lb[u] + lb[v] - old_u - old_v
            lb[u], lb[v] = old_u, old_v
            dout[tail] -= 1
            din[head] -= 1
            rem[u] += 1
            rem[v] += 1
        choice[i] = 1

    rec(0)
    return OrientationSearchResult(state["best"], state["witness"], state["nodes"])


def max_imbalance_energy(g: SimpleGraph, *, max_edges: int | None = None,
                         deadline: float | None = None) -> int:
    """``max ||D x||^2`` over sign vectors ``x``, by a Gray-code walk.

    Each step reverses one edge and updates the two endpoint imbalances and
    the energy in O(1).  Anchor edges (one per component of ``L(g)``) stay
    fixed since reversing a whole component negates its imbalances.
    """
    limit = LIMITS.max_edges_frustration if max_edges is None else max_edges
    if g.m > limit:
        raise ResourceLimitError("imbalance_energy", "m", limit, g.m)
    fixed = _component_anchor_edges(g)
    free = [i for i in range(g.m) if i not in fixed]
    # imbalance = in-degree minus out-degree; reference orientation u -> v
    bal = [0] * g.n
    for u, v in g.edges:
        bal[v] += 1
        bal[u] -= 1
    sign = [1] * g.m
    energy = sum(b * b for b in bal)
    best = energy
    gray = 0
    edges = g.edges
    for step in range(1, 1 << len(free)):
        if step % _CHECK_EVERY == 0:
            _check_deadline(deadline, "imbalance_energy")
        nxt = step ^ (step >> 1)
        e = free[(nxt ^ gray).bit_length() - 1]
        gray = nxt
        u, v = edges[e]
        s = sign[e]
        bu, bv = bal[u], bal[v]
        # reversing u->v (s=+1) moves one unit of in-degree from v to u
        nbu, nbv = bu + 2 * s, bv - 2 * s
        energy += nbu * nbu + nbv * nbv - bu * bu - bv * bv
        bal[u], bal[v] = nbu, nbv
        sign[e] = -s
        if energy > best:
            best = energy
    return best


def imbalance_identity_check(g: SimpleGraph) -> bool:
    ell = frustration_index_exact(g).best_value
    energy = max_imbalance_energy(g)
    return 4 * ell + energy == sum(d * d for d in g.degrees)


def _lex_key(mask: int, width: int) -> int:
    # position 0 most significant
    return int(format(mask, f"0{width}b")[::-1], 2) if width else 0


def maxcut_exact(g: SimpleGraph, *, max_vertices: int | None = None,
                 deadline: float | None = None) -> CutResult:
    """Exact maximum cut over the ``2^(n-1)`` bipartitions with vertex 0 on side 0.

    Gray-code order; flipping vertex ``v`` changes the cut by
    ``same(v) - other(v)``.
    """
    limit = LIMITS.max_vertices_maxcut if max_vertices is None else max_vertices
    if g.n > limit:
        raise ResourceLimitError("maxcut", "n", limit, g.n)
    n = g.n
    adj = [tuple(a) for a in g.adjacency]
    side = [0] * n
    cut = 0
    best, best_mask = 0, 0
    mask = 0
    gray = 0
    for step in range(1, 1 << max(n - 1, 0)):
        if step % _CHECK_EVERY == 0:
            _check_deadline(deadline, "maxcut")
        nxt = step ^ (step >> 1)
        v = (nxt ^ gray).bit_length()  # bit b of the code is vertex b+1
        gray = nxt
        s = side[v]
        same = sum(1 for w in adj[v] if side[w] == s)
        cut += 2 * same - len(adj[v])
        side[v] = 1 - s
        mask ^= 1 << v
        if cut > best or (cut == best and _lex_key(mask, n) < _lex_key(best_mask, n)):
            best, best_mask = cut, mask
    part = frozenset(v for v in range(n) if (best_mask >> v) & 1)
    defect_edges = tuple(i for i, (u, v) in enumerate(g.edges) if (u in part) == (v in part))
    return CutResult(best, g.m - best, part, defect_edges)


def _min_vertex_deletion(
    n: int,
    find_cycle: Callable[[frozenset[int]], list[int] | None],
    stage: str,
    deadline: float | None,
) -> frozenset[int]:
    """Smallest vertex set meeting every cycle that ``find_cycle`` can report.

    Iterative deepening; at each node branch on the vertices of one
    remaining bad cycle, forbidding earlier siblings to avoid revisiting
    sets.  Vertex-disjoint bad cycles found greedily give a lower bound.
    The lexicographically smallest optimum is then fixed vertex by vertex.
    """
    nodes = [0]

    def packing_bound(removed: frozenset[int]) -> int:
        count, gone = 0, removed
        while True:
            c = find_cycle(gone)
            if c is None:
                return count
            count += 1
            gone = gone | frozenset(c)

    def feasible(removed: frozenset[int], forbidden: frozenset[int], budget: int) -> bool:
        nodes[0] += 1
        if nodes[0] % 256 == 0:
            _check_deadline(deadline, stage)
        c = find_cycle(removed)
        if c is None:
            return True
        if budget == 0:
            return False
        if packing_bound(removed) > budget:
            return False
        cands = [x for x in c if x not in forbidden]
        for i, x in enumerate(cands):
            if feasible(removed | {x}, forbidden | frozenset(cands[:i]), budget - 1):
                return True
        return False

    empty: frozenset[int] = frozenset()
    k = packing_bound(empty)
    while not feasible(empty, empty, k):
        k += 1
    chosen: set[int] = set()
    rejected: set[int] = set()
    for v in range(n):
        if len(chosen) == k:
            break
        trial = frozenset(chosen | {v})
        if feasible(trial, frozenset(rejected), k - len(trial)):
            chosen.add(v)
        else:
            rejected.add(v)
    return frozenset(chosen)


def oct_exact(g: SimpleGraph, *, max_vertices: int | None = None,
              deadline: float | None = None) -> OctResult:
    """Minimum odd cycle transversal, certified by 2-colouring the remainder."""
    limit = LIMITS.max_vertices_oct if max_vertices is None else max_vertices
    if g.n > limit:
        raise ResourceLimitError("oct", "n", limit, g.n)
    S = _min_vertex_deletion(g.n, lambda removed: shortest_odd_cycle(g, removed), "oct", deadline)
    if two_coloring(g, S) is None:
        raise AssertionError("oct witness does not leave a bipartite graph")
    return OctResult(len(S), S)


def vertex_frustration_set(g: SimpleGraph, *, max_edges: int | None = None,
                           deadline: float | None = None) -> frozenset[int]:
    """Smallest vertex set of ``A(g)`` (edge set of ``g``) whose deletion balances it.

    Works on the signed graph itself: branches on shortest negative cycles.
    """
    limit = LIMITS.max_edges_frustration if max_edges is None else max_edges
    if g.m > limit:
        raise ResourceLimitError("vertex_frustration", "m", limit, g.m)
    s = build_alg(g)
    return _min_vertex_deletion(
        s.n, lambda removed: shortest_negative_cycle(s, removed), "vertex_frustration", deadline)


def vertex_frustration(g: SimpleGraph, *, cross_check: bool = False, **kw) -> int:
    """Vertex frustration of ``A(g)``; ``cross_check`` also compares it with the
    Max-Cut defect and raises ``AssertionError`` if they differ."""
    vf = len(vertex_frustration_set(g, **kw))
    if cross_check:
        dfc = maxcut_exact(g).defect
        if vf != dfc:
            raise AssertionError(f"vertex frustration {vf} != Max-Cut defect {dfc}")
    return vf


def defect_amplification_upper(g: SimpleGraph, cut: CutResult) -> int:
    """``sum over defect edges of min(d(u)-1, d(v)-1)`` for a maximum cut."""
    part = cut.partition
    value = sum(1 for u, v in g.edges if (u in part) != (v in part))
    if value != cut.maxcut_value or cut.defect != g.m - value:
        raise GraphError("cut record is inconsistent with its partition")
    if value != maxcut_exact(g).maxcut_value:
        raise GraphError("cut is not a maximum cut")
    d = g.degrees
    return sum(min(d[g.edges[i][0]] - 1, d[g.edges[i][1]] - 1) for i in cut.defect_edges)


def amplified_orientation(g: SimpleGraph, cut: CutResult) -> Orientation:
    """Cut edges go from side 0 to side 1; a defect edge on side 0 points at its
    lower-degree end and one on side 1 points away from it."""
    part, d = cut.partition, g.degrees
    o = []
    for u, v in g.edges:
        if (u in part) != (v in part):
            tail = u if u not in part else v
        else:
            low, high = (u, v) if d[u] <= d[v] else (v, u)
            tail = high if u not in part else low
        o.append(1 if tail == u else -1)
    return tuple(o)


def odd_cycle_packing(g: SimpleGraph, *, max_len: int | None = None,
                      max_vertices: int | None = None,
                      deadline: float | None = None) -> int:
    """Maximum number of pairwise edge-disjoint odd cycles (length <= max_len)."""
    limit = LIMITS.max_vertices_packing if max_vertices is None else max_vertices
    if g.n > limit:
        raise ResourceLimitError("odd_cycle_packing", "n", limit, g.n)
    max_len = g.n if max_len is None else max_len
    by_low: dict[int, list[int]] = {}
    for c in simple_cycles(g, max_len):
        if len(c) % 2 == 0:
            continue
        mask = 0
        for i in range(len(c)):
            mask |= 1 << g.edge_id(c[i], c[(i + 1) % len(c)])
        low = (mask & -mask).bit_length() - 1
        by_low.setdefault(low, []).append(mask)
    best = [0]
    nodes = [0]

    def rec(avail: int, count: int) -> None:
        nodes[0] += 1
        if nodes[0] % _CHECK_EVERY == 0:
            _check_deadline(deadline, "odd_cycle_packing")
        best[0] = max(best[0], count)
        if avail == 0 or count + bin(avail).count("1") // 3 <= best[0]:
            return
        e = (avail & -avail).bit_length() - 1
        # every cycle still inside avail that uses e has e as its lowest edge
        for c in by_low.get(e, ()):
            if c & avail == c:
                rec(avail & ~c, count + 1)
        rec(avail & ~(1 << e), count)

    rec((1 << g.m) - 1, 0)
    return best[0]


def triangle_packing(g: SimpleGraph, **kw) -> int:
    return odd_cycle_packing(g, max_len=3, **kw)


def mixed_vertices(g: SimpleGraph, o: Sequence[int]) -> frozenset[int]:
    dout, din = out_in_degrees(g, o)
    return frozenset(v for v in range(g.n) if dout[v] and din[v])


def orientation_from_transversal(g: SimpleGraph, S: frozenset[int]) -> Orientation:
    """Orientation whose mixed vertices lie inside the odd cycle transversal ``S``.

    With a 2-colouring of ``g - S``, colour-0 vertices become sources and
    colour-1 vertices sinks; edges inside ``S`` keep the reference direction.
    """
    color = two_coloring(g, S)
    if color is None:
        raise GraphError("S is not an odd cycle transversal")
    o = []
    for u, v in g.edges:
        if u not in S:
            o.append(1 if color[u] == 0 else -1)
        elif v not in S:
            o.append(-1 if color[v] == 0 else 1)
        else:
            o.append(1)
    return tuple(o)


def cubic_exactness_check(g: SimpleGraph, **kw) -> bool:
    """``l(A(g)) == 2 oct(g)`` by independent searches, plus the mechanism:
    the optimal orientation's mixed vertices form a minimum transversal."""
    if set(g.degrees) != {3}:
        raise GraphError("cubic_exactness_check needs a 3-regular graph")
    fr = frustration_index_exact(g, **kw)
    oc = oct_exact(g)
    mix = mixed_vertices(g, fr.witness)
    back = orientation_from_transversal(g, oc.transversal)
    return (fr.best_value == 2 * oc.oct_value
            and len(mix) == oc.oct_value
            and two_coloring(g, mix) is not None
            and directed_two_path_count(g, back) == fr.best_value)


def complete_multipartite_closed_form(parts: Sequence[int]) -> int:
    """Elementary symmetric sum ``e3`` of the part sizes."""
    if not parts:
        raise GraphError("parts must be nonempty")
    return sum(a * b * c for a, b, c in combinations(parts, 3))


def e3_power_sum(parts: Sequence[int]) -> int:
    """``e3`` via power sums, ``(p1^3 - 3 p1 p2 + 2 p3) / 6``."""
    p1 = sum(parts)
    p2 = sum(x * x for x in parts)
    p3 = sum(x ** 3 for x in parts)
    return (p1 ** 3 - 3 * p1 * p2 + 2 * p3) // 6


def defect_bound_chain(g: SimpleGraph) -> tuple[int, int, int, int]:
    """``(def, l, amplified bound, (Delta-1) def)``; nondecreasing for every graph."""
    cut = maxcut_exact(g)
    ell = frustration_index_exact(g).best_value
    return cut.defect, ell, defect_amplification_upper(g, cut), (g.max_degree - 1) * cut.defect


def min_mixed_vertices_bruteforce(g: SimpleGraph) -> int:
    """Reference value of ``min |Mix|`` over all ``2^m`` orientations."""
    best = g.n
    for mask in range(1 << g.m):
        o = tuple(-1 if (mask >> i) & 1 else 1 for i in range(g.m))
        best = min(best, len(mixed_vertices(g, o)))
    return best


__all__ = [
    "LIMITS", "SearchLimits", "OrientationSearchResult", "CutResult", "OctResult",
    "directed_two_path_count", "frustration_index_exact", "max_imbalance_energy",
    "imbalance_identity_check", "maxcut_exact", "oct_exact", "vertex_frustration",
    "vertex_frustration_set", "defect_amplification_upper", "amplified_orientation",
    "odd_cycle_packing", "triangle_packing", "mixed_vertices", "orientation_from_transversal",
    "cubic_exactness_check", "complete_multipartite_closed_form", "e3_power_sum",
    "defect_bound_chain",
]
