from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ekrlab.combinatorics import colex_rank
from ekrlab.containers import (
    SHRINK,
    SPARSE,
    ContainerCertificate,
    ContainerConfig,
    StabilityFamily,
    StabilityViolation,
    canonical_stability_ell,
    check_fingerprint_bullets,
    container_bound_nu,
    count_independent_sets_bound,
    fingerprint,
    kneser_stars,
    max_ordering,
    reconstruct,
    stability_container,
)
from ekrlab.errors import ContractViolation, InconsistentFingerprintError, ParameterError
from ekrlab.graph import ExplicitGraph
from ekrlab.kneser import kneser_params, materialize, principal_family
from ekrlab.spectral import SupersatParams
from ekrlab.verify import all_labelled_graphs, container_checks, maximal_independent_sets

from oracles import adjacency, count_independent

PETERSEN = materialize(kneser_params(5, 2))


def star_ranks(i, n, k):
    return frozenset(colex_rank(s) for s in principal_family(i, n, k))


def test_max_ordering_examples():
    assert max_ordering(ExplicitGraph.path(3), range(3))[0] == 1
    assert max_ordering(ExplicitGraph.empty(5), range(5)) == [0, 1, 2, 3, 4]
    assert max_ordering(PETERSEN, range(10))[0] == 0


@given(st.integers(1, 9), st.data())
def test_max_ordering_domination(m, data):
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = ExplicitGraph.from_edges(m, edges)
    X = data.draw(st.sets(st.integers(0, m - 1)))
    order = max_ordering(g, X)
    assert sorted(order) == sorted(X)
    for i, v in enumerate(order):
        rest = order[i + 1 :]
        d = sum(1 for u in rest if g.has_edge(v, u))
        for j in range(i + 1, len(order)):
            w = order[j]
            assert sum(1 for u in rest if u != w and g.has_edge(w, u)) <= d


def test_fingerprint_edgeless():
    g = ExplicitGraph.empty(6)
    cert = fingerprint(g, {2, 4}, ContainerConfig(Fraction(1, 2), 1))
    assert cert.fingerprint_L == [2]
    assert cert.container_P == {3, 4, 5}
    assert cert.branch == [SPARSE]
    assert reconstruct(g, [2], ContainerConfig(Fraction(1, 2), 1)) == {3, 4, 5}


def test_fingerprint_petersen_star():
    I = star_ranks(1, 5, 2)
    cfg = ContainerConfig(Fraction(1, 5), 1, 4)
    cert = fingerprint(PETERSEN, I, cfg)
    x = cert.fingerprint_L[0]
    assert x in I and x not in cert.container_P
    assert I - {x} <= cert.container_P
    assert check_fingerprint_bullets(PETERSEN, I, cert, cfg.gamma) == []


def test_fingerprint_c4():
    g = ExplicitGraph.cycle(4)
    cert = fingerprint(g, {0, 2}, ContainerConfig(Fraction(1, 2), 1, 2))
    assert cert.fingerprint_L[0] in {0, 2}
    assert check_fingerprint_bullets(g, {0, 2}, cert, Fraction(1, 2)) == []


def test_fingerprint_contract():
    with pytest.raises(ContractViolation):
        fingerprint(ExplicitGraph.path(3), {0, 1}, ContainerConfig(Fraction(1, 2), 1))
    with pytest.raises(ParameterError):
        fingerprint(ExplicitGraph.empty(3), {0}, ContainerConfig(Fraction(1, 2), 1))
    with pytest.raises(ParameterError):
        ContainerConfig(Fraction(1, 2), 3, 3)


def test_reconstruct_every_petersen_star():
    cfg = ContainerConfig(Fraction(1, 5), 1)
    mis = [I for I in maximal_independent_sets(PETERSEN) if len(I) == 4]
    assert len(mis) == 5
    for I in mis:
        cert = fingerprint(PETERSEN, I, cfg)
        assert reconstruct(PETERSEN, cert.fingerprint_L, cfg) == cert.container_P


def test_reconstruct_rejects_inconsistent_fingerprint():
    g = ExplicitGraph.path(3)
    with pytest.raises(InconsistentFingerprintError):
        reconstruct(g, [1, 0], ContainerConfig(Fraction(1, 2), 2))


def test_nu_examples():
    s = SupersatParams(Fraction(3, 8), Fraction(1, 3))
    assert container_bound_nu(220, 84, 20, s) == Fraction(3, 8)
    assert abs(float((1 - Fraction(84, 660)) ** 20) - 0.0662) < 1e-3
    assert container_bound_nu(10, 3, 0, SupersatParams(Fraction(1, 2), Fraction(1, 5))) == 1
    big = SupersatParams(Fraction(1, 10), Fraction(1))
    assert container_bound_nu(10, 20, 3, big) == Fraction(1, 10)


def test_count_bound_examples():
    assert count_independent_sets_bound(10, ContainerConfig(Fraction(1, 5), 1, 4), Fraction(1, 2)) == 100
    assert count_independent_sets_bound(10, ContainerConfig(Fraction(1, 5), 1, 4), Fraction(1, 10)) == 0
    assert count_independent_sets_bound(20, ContainerConfig(Fraction(1, 5), 3, 4), Fraction(1, 2)) == 1140 * 10


def test_petersen_count_is_dominated():
    adj = adjacency(10, PETERSEN.edges())
    assert count_independent(adj, 4) == 5 <= 100


def test_certificate_text_roundtrip():
    cfg = ContainerConfig(Fraction(1, 4), 2)
    cert = fingerprint(PETERSEN, star_ranks(2, 5, 2), cfg, SupersatParams(Fraction(1, 2), Fraction(1, 4)))
    text = cert.to_text()
    back = ContainerCertificate.from_text(text)
    assert back.fingerprint_L == cert.fingerprint_L
    assert back.container_P == cert.container_P
    assert back.branch == cert.branch and back.nu == cert.nu
    assert text.splitlines()[2].split()[1] in ("s", "k")


@pytest.mark.parametrize("text", ["L: 1\nP: 2\nbranch: s\n", "L: 1\nP: x\nbranch: s\nnu: -\n", "L: 1\nQ: 2\n"])
def test_certificate_text_errors(text):
    with pytest.raises(ParameterError):
        ContainerCertificate.from_text(text)


def test_container_properties_on_all_graphs_up_to_five_vertices():
    for m in range(1, 6):
        for g in all_labelled_graphs(m):
            assert container_checks(f"G{m}", g) == []


def test_container_properties_on_petersen_and_k63():
    assert container_checks("K(5,2)", PETERSEN) == []
    assert container_checks("K(6,3)", materialize(kneser_params(6, 3))) == []


def test_shrink_steps_shrink():
    g = materialize(kneser_params(7, 2))
    I = star_ranks(3, 7, 2)
    cfg = ContainerConfig(Fraction(1, 4), 3)
    cert = fingerprint(g, I, cfg)
    N, e = g.vertex_count, g.edge_count
    prev = N
    for size, b in zip(cert.chain_sizes, cert.branch):
        if b == SHRINK:
            assert size * N * N <= (N * N - 2 * Fraction(1, 4) * e) * prev
        prev = size


def test_canonical_ell_rounds_up():
    ell = canonical_stability_ell(56, 280, Fraction(3, 8), Fraction(1, 4))
    import math

    exact = math.log(1 / (0.75 * 0.375)) * 56 * 56 / (2 * 0.25 * 280)
    assert ell == math.ceil(exact)


def test_stability_container_on_k83_star():
    g = materialize(kneser_params(8, 3))
    stars = kneser_stars(g, 8, 3)
    assert stars[0] == star_ranks(1, 8, 3)
    fam = StabilityFamily(stars, Fraction(1, 10), Fraction(1, 4), Fraction(3, 8))
    ell = canonical_stability_ell(g.vertex_count, g.edge_count, fam.lam, fam.delta)
    assert ell > len(stars[0])
    cert = stability_container(g, stars[0], fam, ContainerConfig(Fraction(1, 4), ell))
    assert cert.tag == "near-B(0)"
    assert cert.branch[-1] == SPARSE and SPARSE not in cert.branch[:-1]
    assert len(cert.container_P - stars[0]) <= Fraction(1, 10) * Fraction(3, 8) * 56
    assert reconstruct(g, cert.fingerprint_L, ContainerConfig(fam.delta, len(cert.fingerprint_L))) == cert.container_P


def test_stability_container_short_ell_is_violation_on_k83():
    # one shrinking step leaves P far from every star and too large
    g = materialize(kneser_params(8, 3))
    stars = kneser_stars(g, 8, 3)
    fam = StabilityFamily(stars, Fraction(1, 10), Fraction(1, 4), Fraction(3, 8))
    with pytest.raises(StabilityViolation):
        stability_container(g, stars[0], fam, ContainerConfig(Fraction(1, 4), 1))


def test_stability_container_edgeless():
    g = ExplicitGraph.empty(5)
    fam = StabilityFamily([frozenset(range(5))], Fraction(1, 10), Fraction(1, 2), Fraction(1))
    cert = stability_container(g, {0, 3}, fam, ContainerConfig(Fraction(1, 2), 1))
    assert cert.tag == "near-B(0)" and cert.branch == [SPARSE]


def test_stability_container_reports_violation():
    g = ExplicitGraph.empty(8)
    fam = StabilityFamily([frozenset({0})], Fraction(1, 100), Fraction(1, 100), Fraction(1, 2))
    with pytest.raises(StabilityViolation) as info:
        stability_container(g, {0, 1, 2}, fam, ContainerConfig(Fraction(1, 2), 1))
    assert info.value.certificate.container_P == frozenset(range(1, 8))
