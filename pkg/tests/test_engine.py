import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import atlas_connected
from gridlock import engine, families
from gridlock.engine import (EngineError, Expansion, Term, TermBudgetExceeded,
                             base_case_value, expand_any_degree, expand_grouped,
                             expand_to_majority, lo_polynomial, normalize_graph,
                             normalize_term, sg_polynomial)
from gridlock.graph import (Graph, add_leaf, add_non_voting_edge, dense_at,
                            disjoint_union, subdivide_edge)
from gridlock.oracles import brute_force_lo_count
from gridlock.polynomial import IntPolynomial

k = IntPolynomial([0, 1])


def merged(exp: Expansion) -> dict:
    return {t.graph: t.coeff for t in exp.normalized()}


def subdivided(g, v, ws):
    for w in ws:
        g = subdivide_edge(g, v, w)
    return g


# -- Term / Expansion ------------------------------------------------------

def test_term_rejects_zero_coefficient():
    with pytest.raises(ValueError):
        Term(families.complete(3), 0)


# -- any-degree expansion --------------------------------------------------

def test_trivalent_expansion():
    g = families.complete(4)
    exp = expand_any_degree(g, 0)
    want = {subdivided(g, 0, S): 1 for S in itertools.combinations([1, 2, 3], 2)}
    want[subdivided(g, 0, [1, 2, 3])] = -2
    assert {t.graph: t.coeff for t in exp} == want


def test_four_valent_expansion_coefficients():
    exp = expand_any_degree(families.complete(5), 0)
    by_size = {}
    for t in exp:
        size = len(t.graph) - 5
        by_size.setdefault(size, set()).add(t.coeff)
    assert by_size == {2: {1}, 3: {-2}, 4: {3}}
    assert len(exp) == 6 + 4 + 1
    assert exp.coefficient_sum == 1


def test_any_degree_rejects_low_degree():
    with pytest.raises(EngineError):
        expand_any_degree(families.cycle(4), 0)


@pytest.mark.parametrize("n", range(4, 9))
def test_any_degree_counting_neutral(n):
    assert expand_any_degree(families.complete(n), 0).coefficient_sum == 1


def test_any_degree_identity_by_brute_force():
    g = families.complete(5)
    exp = expand_any_degree(g, 0)
    for kk in (2, 3):
        total = sum(t.coeff * brute_force_lo_count(t.graph, kk) for t in exp)
        assert total == brute_force_lo_count(g, kk)


def test_one_forced_neighbour_variant():
    # vertex 0 of K_5 with one edge subdivided has exactly one forced neighbour
    g = subdivide_edge(families.complete(5), 0, 1)
    exp = expand_any_degree(g, 0)
    assert exp.coefficient_sum == 1
    assert len(exp) == 7
    for kk in (2, 3):
        total = sum(t.coeff * brute_force_lo_count(t.graph, kk) for t in exp)
        assert total == brute_force_lo_count(g, kk)


# -- majority expansion ----------------------------------------------------

def g_ab():
    """K_5 on v=0, a..d=1..4 with va and vb subdivided."""
    return subdivided(families.complete(5), 0, [1, 2])


def test_degree_four_step_two_has_eleven_terms():
    exp = expand_to_majority(g_ab(), 0, 2)
    assert len(exp) == 11
    assert exp.coefficient_sum == 1


def test_degree_four_step_two_normalized():
    g = g_ab()
    g1 = add_leaf(g, 0)
    want = {normalize_graph(g1): 1,
            normalize_graph(add_non_voting_edge(g1, 3, 4)): -1,
            normalize_graph(subdivided(g, 0, [3, 4])): 1}
    assert merged(expand_to_majority(g, 0, 2)) == want


def test_degree_four_step_two_identity_by_brute_force():
    g = g_ab()
    exp = expand_to_majority(g, 0, 2)
    for kk in (2, 3):
        total = sum(t.coeff * brute_force_lo_count(t.graph, kk) for t in exp)
        assert total == brute_force_lo_count(g, kk)


def test_degree_five_outputs_are_dense_at_v():
    g = subdivided(families.complete(6), 0, [1, 2])
    exp = expand_to_majority(g, 0, 2)
    assert exp.coefficient_sum == 1
    assert all(dense_at(t.graph, 0) for t in exp)


@pytest.mark.parametrize("rule", engine.LEAF_RULES)
def test_majority_leaf_terms_dense_at_v(rule):
    # leafless terms with j extra subdivisions hold b + j forced neighbours,
    # which is a majority only once j is large enough; they get expanded again
    g = subdivided(families.complete(7), 0, [1, 2])
    exp = expand_to_majority(g, 0, 2, leaf_rule=rule)
    for t in exp:
        has_leaf = len(t.graph.adjacency[0]) > 6
        forced = sum(1 for w in t.graph.adjacency[0] if len(t.graph.adjacency[w]) <= 2)
        if has_leaf:
            assert dense_at(t.graph, 0)
        else:
            assert forced > 2


def test_majority_rejects_bad_b():
    g = g_ab()
    with pytest.raises(EngineError):
        expand_to_majority(g, 0, 3)
    with pytest.raises(EngineError):
        expand_to_majority(families.complete(5), 0)     # b = 0


def test_leaf_count_rules():
    assert engine.leaf_count(4, 2) == 1
    assert engine.leaf_count(4, 2, "proof") == 2
    with pytest.raises(ValueError):
        engine.leaf_count(4, 2, "other")


# -- normalization ---------------------------------------------------------

def test_extra_leaf_is_trimmed():
    g = subdivided(families.complete(5), 0, [1, 2, 3, 4])
    assert normalize_graph(add_leaf(g, 0)) == normalize_graph(g)


def test_tied_pair_becomes_subdivision():
    g = g_ab()
    g1_abc = add_leaf(subdivide_edge(g, 0, 3), 0)
    lhs = normalize_graph(add_non_voting_edge(g1_abc, 3, 4))
    assert lhs == normalize_graph(add_leaf(subdivided(g, 0, [3, 4]), 0))
    assert lhs == normalize_graph(subdivided(g, 0, [3, 4]))


def test_normalize_is_idempotent(small_graphs):
    for g in small_graphs[:200]:
        h = normalize_graph(g)
        assert normalize_graph(h) == h


def test_normalize_term_keeps_coefficient():
    g = add_leaf(subdivided(families.complete(5), 0, [1, 2, 3, 4]), 0)
    t = normalize_term(Term(g, -3))
    assert t.coeff == -3 and t.graph == normalize_graph(g)


def test_normalize_preserves_counts():
    rng = random.Random(5)
    checked = 0
    for _ in range(25):
        g = families.random_connected_graph(rng.randint(4, 5), 0.6, rng.randrange(10 ** 6))
        a = engine._analyze(g)
        if not a.nondense:
            continue
        for t in _one_step_literal(g, a.nondense[0]):
            h = normalize_graph(t.graph)
            kk = 3 if len(h) <= 12 else 2
            assert brute_force_lo_count(h, kk) == brute_force_lo_count(t.graph, kk)
            checked += 1
    assert checked > 15


def _one_step_literal(g, v, rule="minimal"):
    forced, groups = engine._free_groups(g, v, engine._analyze(g).root)
    if forced < 2:
        return expand_any_degree(g, v)
    return expand_to_majority(g, v, forced, leaf_rule=rule)


def _nontrivial(max_n):
    return [g for g in atlas_connected(max_n) if len(g) > 1]


def _intermediate_graphs(limit=60):
    """Non-dense terms reached after one engine step on small graphs."""
    out = []
    for g in _nontrivial(6):
        a = engine._analyze(g)
        if not a.nondense:
            continue
        for h, _ in expand_grouped(g, a.nondense[0]):
            if engine._analyze(h).nondense:
                out.append(h)
        if len(out) >= limit:
            break
    return out


@pytest.mark.parametrize("rule", engine.LEAF_RULES)
def test_grouped_matches_literal(rule):
    cases = _nontrivial(5) + _intermediate_graphs()
    checked = 0
    for g in cases:
        a = engine._analyze(g)
        if not a.nondense:
            continue
        v = a.nondense[0]
        if len(g.adjacency[v]) > 6:
            continue
        literal = {h: c for h, c in merged(_one_step_literal(g, v, rule)).items()}
        grouped = dict(expand_grouped(g, v, leaf_rule=rule))
        assert literal == grouped
        checked += 1
    assert checked > 20


def test_compact_states_match_graph_path():
    for g in _nontrivial(6):
        frame = engine._Frame(g)
        nondense, _ = frame.analyze(frame.root)
        if not nondense:
            continue
        assert frame.to_graph(frame.root) == normalize_graph(g)
        i = nondense[0]
        kids = {frame.to_graph(s): c for s, c in frame.children(frame.root, i, "minimal")}
        assert kids == dict(expand_grouped(normalize_graph(g), frame.core[i]))


def test_potential_strictly_decreases():
    for g in _nontrivial(6):
        frame = engine._Frame(g)
        stack = [frame.root]
        seen = set()
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            nd, nc = frame.analyze(s)
            if not nd:
                continue
            for kid, c in frame.children(s, nd[0], "minimal"):
                knd, knc = frame.analyze(kid)
                assert (len(knd), knc) < (len(nd), nc)
                stack.append(kid)


# -- base case -------------------------------------------------------------

def test_base_case_examples():
    assert base_case_value(families.cycle(7)) == k
    two_squares = disjoint_union(families.cycle(4), families.cycle(4))
    assert base_case_value(two_squares) == IntPolynomial.monomial(2)
    assert base_case_value(families.star(4)) == k
    assert base_case_value(Graph()) == IntPolynomial([1])


def test_base_case_rejects_non_dense():
    with pytest.raises(EngineError):
        base_case_value(families.complete(4))


# -- full pipeline ---------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graphs(n):
    g = families.complete(n)
    expected = IntPolynomial() if n == 1 else k
    assert lo_polynomial(g) == expected


def test_triangle_chain_two():
    assert lo_polynomial(families.triangle_chain(2)) == IntPolynomial.monomial(2)


def test_isolated_vertex_gives_zero():
    assert lo_polynomial(Graph(range(4), [(0, 1), (1, 2), (0, 2)])).is_zero()


def test_empty_graph_is_one():
    assert lo_polynomial(Graph()) == IntPolynomial([1])


def test_non_voting_edges_respected():
    # tying two vertices of K_4 leaves no room for a strict gridlock
    g = add_non_voting_edge(Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]), 2, 4)
    for kk in range(4):
        assert lo_polynomial(g)(kk) == brute_force_lo_count(g, kk)


def test_memo_and_leaf_rules_agree(small_graphs):
    for g in small_graphs[::7]:
        p = lo_polynomial(g)
        assert lo_polynomial(g, memo=True) == p
        assert lo_polynomial(g, leaf_rule="proof", trim_leaves=False) == p


def test_workers_give_same_answer():
    g = families.complete(7)
    assert lo_polynomial(g, workers=2) == lo_polynomial(g)


def test_term_budget():
    with pytest.raises(TermBudgetExceeded):
        lo_polynomial(families.complete(8), budget_terms=5)
    with pytest.raises(TermBudgetExceeded):
        lo_polynomial(families.complete(8), budget_terms=5, memo=True)


def test_stats_are_filled():
    stats = engine.EngineStats()
    lo_polynomial(families.complete(5), stats=stats)
    assert stats.expansions > 0 and stats.base_terms > 0


def test_sg_examples():
    assert sg_polynomial(families.complete(5)).is_zero()
    assert sg_polynomial(families.cycle(6)).is_zero()
    assert brute_force_lo_count(families.cycle(6), 3) == 3
    assert sg_polynomial(families.triangle_chain(2)) == IntPolynomial([0, -1, 1])


def test_sg_keeps_lo_with_isolated_vertex():
    g = Graph(range(3), [(0, 1)])
    assert sg_polynomial(g) == lo_polynomial(g)
    assert sg_polynomial(Graph()).is_zero()


@st.composite
def small_graphs_st(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    edges = [e for e in itertools.combinations(range(n), 2) if draw(st.booleans())]
    return Graph(range(n), edges)


@settings(max_examples=60, deadline=None)
@given(small_graphs_st())
def test_engine_matches_brute_force(g):
    p = lo_polynomial(g)
    for kk in range(4):
        assert p(kk) == brute_force_lo_count(g, kk)


@settings(max_examples=30, deadline=None)
@given(small_graphs_st(4), small_graphs_st(4))
def test_disjoint_union_multiplies(g1, g2):
    assert lo_polynomial(disjoint_union(g1, g2)) == lo_polynomial(g1) * lo_polynomial(g2)
