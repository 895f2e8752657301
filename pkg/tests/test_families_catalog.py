import random

import networkx as nx
import pytest

from alg import families as F
from alg.catalog import (
    CUBIC_COUNTS,
    are_isomorphic,
    canonical_form,
    certificate,
    cubic_catalog,
    enumerate_graphs,
    graph_catalog,
)
from alg.errors import GraphError
from alg.graph import is_connected, relabel

from oracles import nx_graph


def as_nx(g):
    return nx_graph(g.n, g.edges)


def test_generator_examples():
    assert F.complete_multipartite([1, 1, 1]) == F.complete(3)
    c5 = F.cycle(5)
    assert c5.m == 5 and set(c5.degrees) == {2}
    p = F.petersen()
    assert (p.n, p.m, set(p.degrees)) == (10, 15, {3})
    assert nx.girth(as_nx(p)) == 5
    with pytest.raises(GraphError):
        F.complete_multipartite([])


@pytest.mark.parametrize("ours, ref", [
    (F.petersen(), nx.petersen_graph()),
    (F.frucht(), nx.frucht_graph()),
    (F.truncated_tetrahedron(), nx.truncated_tetrahedron_graph()),
    (F.hypercube(3), nx.hypercube_graph(3)),
    (F.prism(5), nx.circular_ladder_graph(5)),
    (F.complete_multipartite([2, 3]), nx.complete_bipartite_graph(2, 3)),
])
def test_named_graphs_match_networkx(ours, ref):
    assert nx.is_isomorphic(as_nx(ours), ref)


def test_other_cubic_graphs():
    for g in (F.franklin(), F.durer(), F.tietze(), F.mobius_ladder(4)):
        assert set(g.degrees) == {3} and is_connected(g)
    assert nx.is_bipartite(as_nx(F.franklin()))
    assert sum(nx.triangles(as_nx(F.tietze())).values()) // 3 == 1
    assert sum(nx.triangles(as_nx(F.durer())).values()) // 3 == 2


def test_random_cubic_is_cubic():
    g = F.random_cubic_graph(14, random.Random(5))
    assert set(g.degrees) == {3}


def test_canonical_form_is_invariant_under_relabelling():
    rng = random.Random(11)
    for _ in range(30):
        g = F.random_graph(8, 0.4, rng)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_form(relabel(g, perm)) == canonical_form(g)


def test_are_isomorphic_agrees_with_networkx():
    rng = random.Random(2)
    for _ in range(60):
        a, b = F.random_graph(7, 0.45, rng), F.random_graph(7, 0.45, rng)
        assert are_isomorphic(a, b) == nx.is_isomorphic(as_nx(a), as_nx(b))


def test_catalog_counts_match_the_atlas():
    total = [1, 2, 4, 11, 34, 156, 1044]
    connected = [1, 1, 2, 6, 21, 112, 853]
    shipped = list(graph_catalog(7))
    for n in range(1, 8):
        here = [g for g in shipped if g.n == n]
        assert len(here) == total[n - 1]
        assert sum(1 for g in here if is_connected(g)) == connected[n - 1]
    atlas = {certificate(canonical_form(_from_nx(h))) for h in nx.graph_atlas_g()[1:]}
    assert atlas == {certificate(g) for g in shipped}


def _from_nx(h):
    from alg.graph import from_edge_list
    return from_edge_list(h.edges, n=h.number_of_nodes())


def test_enumeration_reproduces_shipped_file():
    for n in range(1, 6):
        assert list(enumerate_graphs(n)) == [g for g in graph_catalog(5) if g.n == n]


def test_cubic_catalog_is_complete_and_distinct():
    cat = cubic_catalog()
    for n, k in CUBIC_COUNTS.items():
        here = [g for g in cat if g.n == n]
        assert len(here) == k
        assert all(set(g.degrees) == {3} and is_connected(g) for g in here)
    assert len({certificate(g) for g in cat}) == len(cat)
