import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alg import families as F
from alg.errors import GraphError, ParseError
from alg.graph import SimpleGraph, incidence_matrix, line_graph, orientation_from_mask
from alg.signed import (
    RootType,
    SignedGraph,
    all_positive,
    audit_induced_cycle_signs,
    build_alg,
    cycle_sign,
    distinct_orientation_signings,
    format_signed_edge_list,
    frustration_index_bruteforce,
    is_balanced,
    lifted_cycle,
    lifted_cycle_parity_check,
    orientation_switch_consistency,
    parse_signed_edge_list,
    signed_adjacency_matrix,
    signs_from_json,
    signs_to_json,
    switch,
    switching_class_size,
    switching_equivalent,
    switching_normal_form,
    whitney_disambiguate,
)

from oracles import alg_signs, ell_switching_bruteforce, signed_matrix
from test_graph import graphs

K3 = F.complete(3)
CYCLIC_K3 = (1, -1, 1)  # 0->1, 2->0, 1->2 under the reference u<v
STAR = F.star(3)


def test_cyclic_triangle_is_all_negative():
    assert build_alg(K3, CYCLIC_K3).signs == (-1, -1, -1)
    assert np.array_equal(signed_adjacency_matrix(build_alg(K3, CYCLIC_K3)),
                          -(np.ones((3, 3), int) - np.eye(3, dtype=int)))


def test_outward_star_is_all_positive():
    assert build_alg(STAR).signs == (1, 1, 1)


def test_bipartite_part_to_part_orientation_is_positive():
    g = F.complete_bipartite(3, 4)  # edges go from part {0,1,2} to {3..6}
    assert set(build_alg(g).signs) == {1}


def test_single_edge_matrix_is_zero():
    assert signed_adjacency_matrix(build_alg(F.complete(2))).tolist() == [[0]]


@given(graphs(), st.integers(0, 2 ** 28))
@settings(max_examples=60, deadline=None)
def test_S_plus_2I_is_DtD_and_matches_oracle(g, mask):
    o = orientation_from_mask(g, mask & ((1 << g.m) - 1))
    S = signed_adjacency_matrix(build_alg(g, o))
    D = incidence_matrix(g, o)
    assert np.array_equal(S + 2 * np.eye(g.m, dtype=int), D.T @ D)
    assert np.array_equal(S, signed_matrix(list(g.edges), list(o)))


def test_switching_examples():
    s = build_alg(K3, CYCLIC_K3)
    assert switch(s, []) == s
    assert switch(s, range(s.n)) == s
    t = switch(s, [0])
    assert sorted(t.signs) == [-1, 1, 1]
    assert cycle_sign(t, [0, 1, 2]) == -1


def test_orientation_reversal_equals_switching():
    rng = random.Random(7)
    for _ in range(100):
        g = F.random_graph(rng.randint(2, 8), 0.5, rng)
        if g.m == 0:
            continue
        o = orientation_from_mask(g, rng.getrandbits(g.m))
        F_edges = [i for i in range(g.m) if rng.random() < 0.5]
        assert orientation_switch_consistency(g, o, F_edges)
    g = F.petersen()
    o = (1,) * g.m
    assert orientation_switch_consistency(g, o, [])
    assert orientation_switch_consistency(g, o, range(g.m))


def test_switching_class_sizes():
    assert switching_class_size(K3) == 4
    two_edges = SimpleGraph(4, ((0, 1), (2, 3)))
    assert switching_class_size(two_edges) == 1
    assert switching_class_size(F.path(3)) == 2
    for g in (K3, two_edges, F.path(3), F.cycle(4), F.star(3)):
        assert len(distinct_orientation_signings(g)) == switching_class_size(g)


def test_cycle_signs():
    assert cycle_sign(build_alg(K3, CYCLIC_K3), [0, 1, 2]) == -1
    assert cycle_sign(build_alg(STAR), [0, 1, 2]) == 1
    c4 = F.cycle(4)
    assert cycle_sign(build_alg(c4), lifted_cycle(c4, [0, 1, 2, 3])) == 1
    with pytest.raises(GraphError):
        cycle_sign(build_alg(c4), [0, 1])


@pytest.mark.parametrize("g", [F.cycle(5), F.cycle(6), F.complete(4), F.petersen(), F.complete(5)])
def test_lifted_cycle_parity(g):
    assert lifted_cycle_parity_check(g, max_len=g.n)


def test_balance():
    assert is_balanced(build_alg(F.cycle(6)))
    assert not is_balanced(build_alg(F.cycle(5)))
    assert not is_balanced(build_alg(K3, CYCLIC_K3))


@given(graphs(max_n=7))
@settings(max_examples=60, deadline=None)
def test_balanced_iff_bipartite(g):
    import networkx as nx
    from oracles import nx_graph
    assert is_balanced(build_alg(g)) == nx.is_bipartite(nx_graph(g.n, g.edges))


def test_normal_form():
    p = all_positive(F.cycle(5))
    assert switching_normal_form(p) == (p, frozenset())
    nf, F_set = switching_normal_form(build_alg(K3, CYCLIC_K3))
    assert nf.negative_edges == 1
    assert switch(build_alg(K3, CYCLIC_K3), F_set) == nf


def test_switching_equivalence():
    rng = random.Random(4)
    s = build_alg(F.petersen())
    for _ in range(20):
        assert switching_equivalent(s, switch(s, [v for v in range(s.n) if rng.random() < .5]))
    assert not switching_equivalent(build_alg(K3, CYCLIC_K3), all_positive(K3))
    assert switching_equivalent(build_alg(STAR), all_positive(K3))
    with pytest.raises(GraphError):
        switching_equivalent(build_alg(K3), build_alg(F.cycle(4)))


def test_whitney():
    assert whitney_disambiguate(build_alg(K3, CYCLIC_K3)) is RootType.TRIANGLE_ROOT
    assert whitney_disambiguate(build_alg(STAR)) is RootType.STAR_ROOT
    for F_set in ([0], [1, 2], [0, 1, 2]):
        assert whitney_disambiguate(switch(build_alg(K3), F_set)) is RootType.TRIANGLE_ROOT
    with pytest.raises(GraphError):
        whitney_disambiguate(build_alg(F.cycle(4)))


def test_induced_cycle_audit():
    assert audit_induced_cycle_signs(build_alg(F.cycle(5)), 5) == []
    assert audit_induced_cycle_signs(build_alg(F.complete(4)), 6) == []
    c4 = F.cycle(4)
    bad = SignedGraph(c4, (1, 1, 1, -1))
    (v,) = audit_induced_cycle_signs(bad, 4)
    assert v.sign == -1 and v.expected == 1


@given(graphs(max_n=6))
@settings(max_examples=40, deadline=None)
def test_switching_frustration_against_oracle(g):
    if g.m > 12:
        return
    assert frustration_index_bruteforce(build_alg(g)) == ell_switching_bruteforce(g.n, list(g.edges))


def test_oracle_signs_agree_for_all_orientations_of_k4():
    g = F.complete(4)
    for o in product((1, -1), repeat=g.m):
        s = build_alg(g, o)
        ref = alg_signs(list(g.edges), list(o))
        assert dict(zip(line_graph(g).edges, s.signs)) == ref


def test_text_and_json_round_trip():
    s = build_alg(F.petersen(), orientation_from_mask(F.petersen(), 0b1011001))
    assert parse_signed_edge_list(format_signed_edge_list(s)) == s
    assert signs_from_json(signs_to_json(s)) == s
    with pytest.raises(ParseError):
        parse_signed_edge_list("0 1 +2\n")
    with pytest.raises(ParseError):
        parse_signed_edge_list("0 1 +1\n1 0 -1\n")
