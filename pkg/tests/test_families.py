import itertools
from collections import Counter

import pytest

from gridlock import families
from gridlock.engine import lo_polynomial
from gridlock.families import (FamilySpec, build, clique_blocks, clique_cycle,
                               clique_matching, random_connected_graph,
                               reduced_clique_lo_count)
from gridlock.graph import GraphError, is_connected
from gridlock.oracles import brute_force_lo_count
from gridlock.polynomial import IntPolynomial

G7_SG = IntPolynomial([0, 4, -10, 10, -5, 1])
G9_SG = IntPolynomial([0, 4, -5, 0, 0, 1])


def between(g, ci, cj):
    return sum(1 for u, w in g.voting_edges
               if (u in ci and w in cj) or (u in cj and w in ci))


def test_family_spec_validation():
    with pytest.raises(GraphError):
        FamilySpec("cycle", 2)
    with pytest.raises(GraphError):
        FamilySpec("complete")
    with pytest.raises(GraphError):
        FamilySpec("clique_cycle", 3)
    with pytest.raises(GraphError):
        FamilySpec("hypercube", 3)
    assert FamilySpec("star", 1).parameter == 1


def test_build_by_name_and_spec():
    assert build("complete", 4) == build(FamilySpec("complete", 4)) == families.complete(4)
    assert build("clique_matching") == clique_matching()


def test_simple_families():
    assert len(families.path(5).voting_edges) == 4
    assert len(families.cycle(5).voting_edges) == 5
    s = families.star(3)
    assert len(s.adjacency[0]) == 3 and all(len(s.adjacency[v]) == 1 for v in (1, 2, 3))


def test_triangle_chain_one_is_triangle():
    assert families.triangle_chain(1) == families.complete(3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_triangle_chain_shape(d):
    g = families.triangle_chain(d)
    assert len(g) == 3 * d
    assert len(g.voting_edges) == 4 * d - 1
    assert is_connected(g)


@pytest.mark.parametrize("make", [clique_cycle, clique_matching])
def test_clique_graph_shape(make):
    g = make()
    assert len(g) == 25 and len(g.voting_edges) == 90
    degrees = Counter(len(ns) for ns in g.adjacency.values())
    assert degrees == {4: 5, 8: 20}
    assert all(len(g.adjacency[5 * i]) == 4 for i in range(5))
    blocks = clique_blocks()
    for ci, cj in itertools.combinations(blocks, 2):
        assert between(g, ci, cj) == 4


def test_clique_matching_one_edge_to_each_clique():
    g = clique_matching()
    blocks = clique_blocks()
    for i, c in enumerate(blocks):
        for v in sorted(c)[1:]:
            for j, other in enumerate(blocks):
                if j != i:
                    assert len(g.adjacency[v] & other) == 1


def test_clique_cycle_pairs_share_neighbours():
    g = clique_cycle()
    for i in range(5):
        for a, b in ((5 * i + 1, 5 * i + 2), (5 * i + 3, 5 * i + 4)):
            assert g.adjacency[a] - {b} == g.adjacency[b] - {a}


def test_clique_cycle_out_edges_reach_adjacent_cliques():
    g = clique_cycle()
    blocks = clique_blocks()
    for i in range(5):
        for v in (5 * i + 1, 5 * i + 3):
            hit = sorted(j for j, c in enumerate(blocks) if j != i and g.adjacency[v] & c)
            assert len(hit) == 2
            # the two cliques reached are consecutive around the 5-cycle
            assert (hit[1] - hit[0]) % 5 in (1, 4)


def test_reduced_counts():
    assert reduced_clique_lo_count(clique_matching(), clique_blocks(), 3) == 213
    assert reduced_clique_lo_count(clique_cycle(), clique_blocks(), 3) == 33
    assert reduced_clique_lo_count(clique_cycle(), clique_blocks(), 2) == 2


@pytest.mark.parametrize("kk", range(2, 7))
def test_reduced_counts_match_closed_forms(kk):
    blocks = clique_blocks()
    assert reduced_clique_lo_count(clique_cycle(), blocks, kk) - kk == G7_SG(kk)
    assert reduced_clique_lo_count(clique_matching(), blocks, kk) - kk == G9_SG(kk)


def test_g7_gridlocks_are_proper_colorings_of_five_cycle():
    # chromatic polynomial of C_5
    for kk in range(2, 7):
        assert G7_SG(kk) == (kk - 1) ** 5 - (kk - 1)


def test_reduced_count_validates_cliques():
    g = clique_matching()
    with pytest.raises(GraphError):
        reduced_clique_lo_count(g, clique_blocks()[:4], 2)
    overlapping = clique_blocks()
    overlapping[1] = overlapping[1] | {0}
    with pytest.raises(GraphError):
        reduced_clique_lo_count(g, overlapping, 2)


def test_reduced_count_is_exact_on_small_clique_graph():
    # two K_4s joined by a perfect matching: every LO coloring is clique-constant
    g = families.Graph(range(8), list(itertools.combinations(range(4), 2))
                       + list(itertools.combinations(range(4, 8), 2))
                       + [(i, i + 4) for i in range(4)])
    cliques = [frozenset(range(4)), frozenset(range(4, 8))]
    for kk in range(1, 4):
        assert reduced_clique_lo_count(g, cliques, kk) == brute_force_lo_count(g, kk)


def test_random_graph_is_seeded_and_connected():
    a = random_connected_graph(7, 0.4, seed=3)
    assert a == random_connected_graph(7, 0.4, seed=3)
    assert is_connected(a)
    assert lo_polynomial(a)(1) == 1
