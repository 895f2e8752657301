"""Independent reference computations used as test oracles.

Nothing here calls the package's search, sign or spectral code.  Signs of
A(G) are recomputed from head/tail incidences, optima by plain enumeration,
spectra by numpy.linalg, and graph facts by networkx.
"""

from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import numpy as np


def nx_graph(n, edges):
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from(edges)
    return h


def heads_tails(edges, signs):
    return [(v, u) if s == 1 else (u, v) for (u, v), s in zip(edges, signs)]


def alg_signs(edges, signs=None):
    """{(i, j): sign} for edge pairs i < j sharing a vertex, from the head/tail rule."""
    signs = signs or [1] * len(edges)
    ht = heads_tails(edges, signs)
    out = {}
    for i, j in combinations(range(len(edges)), 2):
        shared = set(edges[i]) & set(edges[j])
        if not shared:
            continue
        (x,) = shared
        i_in = ht[i][0] == x
        j_in = ht[j][0] == x
        out[(i, j)] = 1 if i_in == j_in else -1
    return out


def two_path_count(n, edges, signs):
    dout, din = [0] * n, [0] * n
    for head, tail in heads_tails(edges, signs):
        din[head] += 1
        dout[tail] += 1
    return sum(a * b for a, b in zip(dout, din))


def ell_bruteforce(n, edges):
    """Minimum directed 2-path count over all 2^m orientations."""
    return min(two_path_count(n, edges, s) for s in product((1, -1), repeat=len(edges)))


def ell_switching_bruteforce(n, edges):
    """Minimum number of negative edges of A(G) over all switchings."""
    m = len(edges)
    sg = alg_signs(edges)
    best = len(sg)
    for F in product((1, -1), repeat=m):
        best = min(best, sum(1 for (i, j), s in sg.items() if s * F[i] * F[j] < 0))
    return best


def energy_bruteforce(n, edges):
    best = 0
    for s in product((1, -1), repeat=len(edges)):
        bal = [0] * n
        for head, tail in heads_tails(edges, s):
            bal[head] += 1
            bal[tail] -= 1
        best = max(best, sum(b * b for b in bal))
    return best


def maxcut_bruteforce(n, edges):
    best = 0
    for side in product((0, 1), repeat=n):
        best = max(best, sum(1 for u, v in edges if side[u] != side[v]))
    return best


def oct_bruteforce(n, edges):
    h = nx_graph(n, edges)
    for k in range(n + 1):
        for S in combinations(range(n), k):
            if nx.is_bipartite(h.subgraph(set(range(n)) - set(S))):
                return k, frozenset(S)
    raise AssertionError("unreachable")


def signed_balanced(vertices, sign):
    """2-colour so that positive edges join equal colours, negative differ."""
    colour = {}
    adj = {v: [] for v in vertices}
    for (a, b), s in sign.items():
        if a in adj and b in adj:
            adj[a].append((b, s))
            adj[b].append((a, s))
    for r in vertices:
        if r in colour:
            continue
        colour[r] = 1
        stack = [r]
        while stack:
            x = stack.pop()
            for y, s in adj[x]:
                want = colour[x] * s
                if y not in colour:
                    colour[y] = want
                    stack.append(y)
                elif colour[y] != want:
                    return False
    return True


def vf_bruteforce(n, edges):
    m = len(edges)
    sg = alg_signs(edges)
    for k in range(m + 1):
        for S in combinations(range(m), k):
            keep = [i for i in range(m) if i not in S]
            if signed_balanced(keep, sg):
                return k
    raise AssertionError("unreachable")


def odd_cycle_packing_bruteforce(n, edges):
    h = nx_graph(n, edges)
    cycles = []
    for c in nx.simple_cycles(h):
        if len(c) % 2 == 1 and len(c) >= 3:
            cycles.append(frozenset(frozenset((c[i], c[(i + 1) % len(c)])) for i in range(len(c))))
    best = 0

    def rec(start, used, count):
        nonlocal best
        best = max(best, count)
        for k in range(start, len(cycles)):
            if not (cycles[k] & used):
                rec(k + 1, used | cycles[k], count + 1)

    rec(0, frozenset(), 0)
    return best


def laplacian_eigs(n, edges):
    return np.linalg.eigvalsh(nx.laplacian_matrix(nx_graph(n, edges), nodelist=range(n)).toarray().astype(float))


def signed_matrix(edges, signs=None):
    m = len(edges)
    S = np.zeros((m, m))
    for (i, j), s in alg_signs(edges, signs).items():
        S[i, j] = S[j, i] = s
    return S


def spanning_trees(n, edges):
    return round(nx.number_of_spanning_trees(nx_graph(n, edges)))


def tripods_and_triangles(n, edges):
    h = nx_graph(n, edges)
    tri = sum(nx.triangles(h).values()) // 3
    tripods = sum(d * (d - 1) * (d - 2) // 6 for _, d in h.degree())
    return tripods, tri
