import itertools
from fractions import Fraction

import pytest

from ekrlab.combinatorics import colex_rank
from ekrlab.errors import ParameterError
from ekrlab.graph import ExplicitGraph
from ekrlab.kneser import kneser_params, materialize, principal_family
from ekrlab.spectral import (
    SupersatParams,
    hoffman_lower_bound,
    kneser_supersat_params,
    min_edges_by_size,
    minimal_supersat_lambda,
    ratio_bound_fraction,
    verify_hoffman,
    verify_supersaturation,
)
from ekrlab.verify import random_corpus

from oracles import adjacency, brute_min_edges, petersen

PETERSEN = materialize(kneser_params(5, 2))


def test_hoffman_petersen_values():
    assert hoffman_lower_bound(10, 3, -2, 15, 4) == 0
    assert hoffman_lower_bound(10, 3, -2, 15, 5) == Fraction(5, 4)
    _, adj = petersen()
    assert brute_min_edges(adj, 5) == 2


@pytest.mark.parametrize("N,D,lam,e", [(10, 3, -2, 15), (4, 3, -1, 6), (220, 84, -28, 9240), (5, 2, -1.618, 5)])
def test_hoffman_at_full_set_is_edge_count(N, D, lam, e):
    assert hoffman_lower_bound(N, D, Fraction(lam), e, N) == e


def test_hoffman_rejects_empty_set():
    with pytest.raises(ParameterError):
        hoffman_lower_bound(10, 3, -2, 15, 0)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(4, 13) for k in range(2, n // 2 + 1)])
def test_hoffman_root_sits_at_ekr_size(n, k):
    kp = kneser_params(n, k)
    star = ratio_bound_fraction(kp.D, kp.lambda_min)
    assert star == Fraction(k, n)
    s0 = -(-star * kp.N // 1)
    assert hoffman_lower_bound(kp.N, kp.D, kp.lambda_min, kp.edge_count, s0) <= 0
    for s in range(s0 + 1, min(kp.N, s0 + 5) + 1):
        assert hoffman_lower_bound(kp.N, kp.D, kp.lambda_min, kp.edge_count, s) > 0


def test_kneser_supersat_params():
    p = kneser_supersat_params(5, 2, Fraction(1, 4))
    assert (p.lam, p.gamma) == (Fraction(1, 2), Fraction(1, 5))
    p = kneser_supersat_params(12, 3, Fraction(1, 2))
    assert (p.lam, p.gamma) == (Fraction(3, 8), Fraction(1, 3))
    with pytest.raises(ParameterError):
        kneser_supersat_params(5, 2, 2)
    with pytest.raises(ParameterError):
        kneser_supersat_params(5, 2, 0)


def test_min_edges_table_matches_brute_force():
    for g in random_corpus(40, seed=5, max_vertices=9) + [PETERSEN]:
        adj = adjacency(g.vertex_count, g.edges())
        min_e, masks = min_edges_by_size(g)
        for s in range(g.vertex_count + 1):
            assert min_e[s] == brute_min_edges(adj, s)
            assert bin(masks[s]).count("1") == s


def test_supersat_petersen_accepts_certificate():
    assert verify_supersaturation(PETERSEN, SupersatParams(Fraction(1, 2), Fraction(1, 5)))


def test_supersat_petersen_refutes_with_star():
    res = verify_supersaturation(PETERSEN, SupersatParams(Fraction(2, 5), Fraction(1, 100)))
    assert not res
    stars = [frozenset(colex_rank(s) for s in principal_family(i, 5, 2)) for i in range(1, 6)]
    assert res.witness in stars and res.witness_edges == 0


def test_supersat_edgeless_graph_holds():
    assert verify_supersaturation(ExplicitGraph.empty(6), SupersatParams(Fraction(1, 2), Fraction(1, 2)))


def test_supersat_exhaustive_agrees_with_brute_force():
    for g in random_corpus(60, seed=11, max_vertices=8):
        if not g.edge_count:
            continue
        adj = adjacency(g.vertex_count, g.edges())
        N, e = g.vertex_count, g.edge_count
        for lam, gamma in [(Fraction(1, 2), Fraction(1, 4)), (Fraction(1, 3), Fraction(1, 2))]:
            ref = all(
                brute_min_edges(adj, s) * N * N >= gamma * s * s * e
                for s in range(1, N + 1)
                if s >= lam * N
            )
            assert bool(verify_supersaturation(g, SupersatParams(lam, gamma))) == ref


def test_supersat_large_graph_needs_budget():
    g = materialize(kneser_params(7, 3))
    with pytest.raises(ParameterError):
        verify_supersaturation(g, kneser_supersat_params(7, 3, 1))
    res = verify_supersaturation(g, kneser_supersat_params(7, 3, 1), budget=300)
    assert res and res.mode == "randomized"


def test_supersat_randomized_mode_finds_star_violation():
    g = materialize(kneser_params(7, 3))
    res = verify_supersaturation(g, SupersatParams(Fraction(3, 7), Fraction(1, 10)), budget=10)
    assert not res and res.witness_edges == 0 and res.mode == "heuristic"


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 3)])
@pytest.mark.parametrize("tau", [Fraction(1, 4), Fraction(1, 2), Fraction(1)])
def test_kneser_certificates_hold(n, k, tau):
    g = materialize(kneser_params(n, k))
    budget = None if g.vertex_count <= 24 else 500
    assert verify_supersaturation(g, kneser_supersat_params(n, k, tau), budget=budget)


def test_minimal_lambda_is_tight():
    for g in random_corpus(30, seed=2, max_vertices=8):
        if not g.edge_count:
            continue
        gamma = Fraction(1, 4)
        lam = minimal_supersat_lambda(g, gamma)
        assert verify_supersaturation(g, SupersatParams(lam, gamma))
        smaller = lam - Fraction(1, g.vertex_count)
        if smaller > 0:
            assert not verify_supersaturation(g, SupersatParams(smaller, gamma))


@pytest.mark.parametrize(
    "g",
    [PETERSEN, ExplicitGraph.complete(4), ExplicitGraph.complete(2), ExplicitGraph.cycle(5),
     materialize(kneser_params(6, 3)), ExplicitGraph.cycle(8), ExplicitGraph.empty(3)],
)
def test_hoffman_holds_on_regular_graphs(g):
    assert verify_hoffman(g)


def test_hoffman_needs_regular_graph():
    with pytest.raises(ParameterError):
        verify_hoffman(ExplicitGraph.path(3))


def test_hoffman_all_regular_graphs_on_six_vertices():
    pairs = list(itertools.combinations(range(6), 2))
    seen = 0
    for pick in range(1 << len(pairs)):
        g = ExplicitGraph.from_edges(6, [pr for i, pr in enumerate(pairs) if pick >> i & 1])
        if g.is_regular():
            seen += 1
            assert verify_hoffman(g)
    assert seen > 50
