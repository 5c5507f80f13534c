import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from ekrlab.combinatorics import KSubset, colex_masks
from ekrlab.errors import ParameterError
from ekrlab.graph import ExplicitGraph
from ekrlab.indep import (
    caro_wei,
    deletion_lower_bound,
    degree_greedy_is,
    max_independent_set,
    shearer_bound,
    stability_distance,
    star_counts,
    triangle_free_greedy,
    triangle_free_reduce,
)
from ekrlab.kneser import kneser_params, materialize, principal_family
from ekrlab.verify import random_corpus

from oracles import adjacency, brute_alpha

PETERSEN = materialize(kneser_params(5, 2))


@st.composite
def graphs(draw, max_vertices=12):
    m = draw(st.integers(0, max_vertices))
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ExplicitGraph.from_edges(m, chosen)


def test_petersen_alpha_and_star_witness():
    res = max_independent_set(PETERSEN)
    assert res.size == 4 and res.optimal
    masks = list(colex_masks(5, 2))
    common = set.intersection(*[{i for i in range(5) if masks[v] >> i & 1} for v in res.witness])
    assert len(common) == 1


def test_edgeless():
    assert max_independent_set(ExplicitGraph.empty(7)).size == 7
    assert max_independent_set(ExplicitGraph.empty(0)).size == 0


@pytest.mark.parametrize("ratio", [True, False])
def test_agrees_with_brute_force_on_corpus(ratio):
    for g in random_corpus(150, seed=17, max_vertices=14):
        res = max_independent_set(g, use_ratio_bound=ratio)
        assert res.optimal and g.is_independent(res.witness)
        assert res.size == brute_alpha(adjacency(g.vertex_count, g.edges()))


def test_sixteen_vertex_graphs_against_brute_force():
    rng = random.Random(8)
    for _ in range(8):
        g = ExplicitGraph.random_gnm(16, rng.randint(10, 60), rng)
        assert max_independent_set(g).size == brute_alpha(adjacency(16, g.edges()))


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_exact_dominates_heuristics(g):
    exact = max_independent_set(g)
    for h in (degree_greedy_is(g), deletion_lower_bound(g), triangle_free_greedy(g)):
        assert g.is_independent(h.witness) and h.size == len(h.witness)
        assert h.size <= exact.size
    assert degree_greedy_is(g).size >= math.ceil(caro_wei(g) - 1e-9)


# K(9,4) takes about a minute without the spectral cut
@pytest.mark.parametrize("n,k", [(n, k) for n in range(4, 10) for k in range(2, n // 2 + 1) if (n, k) != (9, 4)])
def test_ekr_without_spectral_cut(n, k):
    res = max_independent_set(materialize(kneser_params(n, k)), use_ratio_bound=False)
    assert res.optimal and res.size == kneser_params(n, k).star_size


def test_budget_exhaustion_is_flagged():
    g = materialize(kneser_params(9, 3))
    res = max_independent_set(g, budget=5, use_ratio_bound=False)
    assert not res.optimal and g.is_independent(res.witness)


def test_initial_witness_checked():
    with pytest.raises(ParameterError):
        max_independent_set(ExplicitGraph.path(3), initial={0, 1})


def test_deletion_examples():
    g = ExplicitGraph.from_edges(10, [(0, 1), (2, 3), (4, 5)])
    assert deletion_lower_bound(g).size >= 7
    assert deletion_lower_bound(ExplicitGraph.empty(4)).size == 4
    r = deletion_lower_bound(PETERSEN)
    assert PETERSEN.is_independent(r.witness) and r.size >= max(1, 10 - 15)


@given(graphs())
def test_deletion_floor(g):
    r = deletion_lower_bound(g)
    assert g.is_independent(r.witness)
    assert r.size >= g.vertex_count - g.edge_count


def test_triangle_reduce_examples():
    h, removed = triangle_free_reduce(ExplicitGraph.complete(3))
    assert len(removed) == 1 and h.edge_count == 1
    h, removed = triangle_free_reduce(PETERSEN)
    assert removed == frozenset() and h == PETERSEN
    h, removed = triangle_free_reduce(ExplicitGraph.complete(4))
    assert removed == {0, 1}


@given(graphs())
def test_triangle_reduce_properties(g):
    before = g.triangle_count()
    h, removed = triangle_free_reduce(g)
    assert h.triangle_count() == 0
    assert len(removed) <= before


def test_greedy_examples():
    assert degree_greedy_is(ExplicitGraph.empty(5)).size == 5
    assert degree_greedy_is(ExplicitGraph.star(5)).witness == frozenset(range(1, 6))
    assert degree_greedy_is(PETERSEN).size == 4


def test_shearer():
    strong, weak = shearer_bound(100, 4)
    assert strong == pytest.approx(100 * (4 * math.log(4) - 3) / 9, rel=1e-12)
    assert abs(strong - 28.28) < 0.01
    assert shearer_bound(100, 1.001)[0] == pytest.approx(50, rel=0.01)
    assert shearer_bound(100, math.e)[1] == pytest.approx(0, abs=1e-12)
    with pytest.raises(ParameterError):
        shearer_bound(100, 1)


def test_stability_distance_examples():
    assert stability_distance(principal_family(3, 8, 3), 8) == (3, 0)
    F = list(principal_family(1, 5, 2)) + [KSubset((2, 3), 5)]
    assert stability_distance(F, 5) == (1, 1)
    everything = [KSubset(c, 5) for c in itertools.combinations(range(1, 6), 2)]
    assert stability_distance(everything, 5) == (1, 6)
    with pytest.raises(ParameterError):
        stability_distance([], 5)


def test_star_counts():
    masks = list(colex_masks(6, 2))
    assert star_counts(masks, 6) == [5] * 6
