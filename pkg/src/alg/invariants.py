"""Signed triangle census of ``A(G)`` by two independent routes.

The combinatorial route counts tripods (three edges at a common vertex,
positive triangles) and triangles of ``G`` (negative triangles).  The trace
route reads the same numbers off ``tr(S^3)/6`` and ``tr(|S|^3)/6``.  All
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import GraphError, NumericError
from .graph import SimpleGraph, is_bipartite, line_graph, triangle_count
from .signed import SignedGraph, all_positive, build_alg, signed_adjacency_matrix, switching_equivalent


@dataclass(frozen=True)
class TriangleCensus:
    t_plus: int
    t_minus: int

    @property
    def total(self) -> int:
        return self.t_plus + self.t_minus

    @property
    def delta3(self) -> int:
        return self.t_plus - self.t_minus

    @property
    def tau3(self) -> Fraction | None:
        return Fraction(self.delta3, self.total) if self.total else None

    def to_dict(self) -> dict:
        tau = self.tau3
        return {
            "t_plus": self.t_plus,
            "t_minus": self.t_minus,
            "total": self.total,
            "delta3": self.delta3,
            "tau3_num": None if tau is None else tau.numerator,
            "tau3_den": None if tau is None else tau.denominator,
        }


def tripod_count(g: SimpleGraph) -> int:
    return sum(comb(d, 3) for d in g.degrees)


def triangle_census_combinatorial(g: SimpleGraph) -> TriangleCensus:
    return TriangleCensus(t_plus=tripod_count(g), t_minus=triangle_count(g))


def _exact_trace_power(M: np.ndarray, k: int) -> int:
    # int64 is exact here: entries of S^k are bounded by dim^(k-1)
    if M.shape[0] and M.shape[0] ** (k - 1) >= 2 ** 62:
        M = M.astype(object)
    P = M
    for _ in range(k - 1):
        P = P @ M
    return int(np.trace(P))


def _div6(value: int, what: str) -> int:
    q, r = divmod(value, 6)
    if r:
        raise NumericError(f"{what}={value} is not divisible by 6; adjacency matrix is corrupt")
    return q


def triangle_census_trace(s: SignedGraph) -> TriangleCensus:
    S = signed_adjacency_matrix(s)
    delta3 = _div6(_exact_trace_power(S, 3), "tr(S^3)")
    total = _div6(_exact_trace_power(np.abs(S), 3), "tr(|S|^3)")
    if (total + delta3) % 2:
        raise NumericError("triangle totals of inconsistent parity")
    return TriangleCensus(t_plus=(total + delta3) // 2, t_minus=(total - delta3) // 2)


def fourth_trace_invariant(s: SignedGraph, m: int) -> Fraction:
    """``tr(S^4) / m^2`` where ``m`` is the edge count of the root graph."""
    if m <= 0:
        raise GraphError("fourth trace invariant is undefined for m = 0")
    return Fraction(_exact_trace_power(signed_adjacency_matrix(s), 4), m * m)


def bipartite_collapse_check(g: SimpleGraph) -> bool:
    """For bipartite ``g``: ``A(g)`` is switching equivalent to the all-positive
    line graph and the census has no negative triangles."""
    if not is_bipartite(g):
        raise GraphError("bipartite_collapse_check needs a bipartite graph")
    s = build_alg(g)
    census = triangle_census_trace(s)
    return (switching_equivalent(s, all_positive(line_graph(g)))
            and census.delta3 == tripod_count(g)
            and census.t_minus == 0)
