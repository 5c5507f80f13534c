"""Named verification suites run by ``ekrlab verify``.

Each suite returns a list of Check results; a suite passes when all of its
checks do.  Failing checks carry the instance that witnessed the failure.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .containers import (
    ContainerConfig,
    check_fingerprint_bullets,
    container_bound_nu,
    count_independent_sets_bound,
    fingerprint,
    reconstruct,
)
from .graph import ExplicitGraph, bits
from .indep import max_independent_set, shearer_bound
from .kneser import kneser_params, materialize, principal_family
from .combinatorics import colex_rank
from .sampling import chernoff_lower, chernoff_upper
from .spectral import (
    SupersatParams,
    kneser_supersat_params,
    minimal_supersat_lambda,
    smallest_eigenvalue,
    verify_hoffman,
    verify_supersaturation,
)

CORPUS_SEED = 20240601
CORPUS_RANDOM = 500
GAMMAS = (Fraction(1, 4), Fraction(1, 2))
ELLS = (1, 2, 3)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


# ---------------------------------------------------------------------------
# corpus


def named_graph(name: str) -> ExplicitGraph:
    if name.startswith("K(") and name.endswith(")"):
        n, k = (int(x) for x in name[2:-1].split(","))
        return materialize(kneser_params(n, k))
    kind, size = name[0], int(name[2:])
    return {"K": ExplicitGraph.complete, "C": ExplicitGraph.cycle, "P": ExplicitGraph.path, "E": ExplicitGraph.empty}[
        kind
    ](size)


def random_corpus(count: int = CORPUS_RANDOM, seed: int = CORPUS_SEED, max_vertices: int = 8) -> list[ExplicitGraph]:
    """Random graphs on 1..max_vertices vertices with a uniformly chosen edge count."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(1, max_vertices)
        e = rng.randint(0, m * (m - 1) // 2)
        out.append(ExplicitGraph.random_gnm(m, e, rng))
    return out


def container_corpus() -> list[tuple[str, ExplicitGraph]]:
    out = [(f"random#{i}", g) for i, g in enumerate(random_corpus())]
    out.append(("K(5,2)", named_graph("K(5,2)")))
    out.append(("K(6,3)", named_graph("K(6,3)")))
    return out


def maximal_independent_sets(g: ExplicitGraph) -> Iterator[frozenset[int]]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    full = g.full_mask
    non_adj = [full & ~a & ~(1 << v) for v, a in enumerate(g.adj)]

    def rec(R: int, P: int, X: int) -> Iterator[int]:
        if not P and not X:
            yield R
            return
        pivot = max(bits(P | X), key=lambda u: (non_adj[u] & P).bit_count())
        for v in list(bits(P & ~non_adj[pivot])):
            yield from rec(R | 1 << v, P & non_adj[v], X & non_adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    if g.vertex_count == 0:
        yield frozenset()
        return
    for R in rec(0, full, 0):
        yield frozenset(bits(R))


def independent_set_counts(g: ExplicitGraph) -> list[int]:
    """counts[t] = number of independent t-sets, by extension in increasing vertex order."""
    counts = [0] * (g.vertex_count + 1)

    def rec(last: int, allowed: int, size: int) -> None:
        counts[size] += 1
        cand = allowed & ~((1 << (last + 1)) - 1)
        for v in bits(cand):
            rec(v, allowed & ~g.adj[v] & ~(1 << v), size + 1)

    rec(-1, g.full_mask, 0)
    return counts


# ---------------------------------------------------------------------------
# suites


def suite_hoffman() -> list[Check]:
    checks = []
    for name in ("K(5,2)", "K(6,2)", "K(6,3)", "K_4", "C_5"):
        g = named_graph(name)
        res = verify_hoffman(g)
        detail = "" if res else f"S={sorted(res.witness)} spans {res.witness_edges} < {res.bound}"
        checks.append(Check(f"hoffman {name}", res.ok, detail))
        if name.startswith("K("):
            n, k = (int(x) for x in name[2:-1].split(","))
            expected = kneser_params(n, k).lambda_min
            got = smallest_eigenvalue(g)
            checks.append(
                Check(f"lambda_min {name}", abs(got - expected) <= 1e-9, f"computed {got:.12f}, closed form {expected}")
            )
    return checks


def suite_supersat(random_budget: int = 2000) -> list[Check]:
    checks = []
    for n, k in ((5, 2), (6, 2), (7, 3)):
        g = materialize(kneser_params(n, k))
        for tau in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
            params = kneser_supersat_params(n, k, tau)
            budget = None if g.vertex_count <= 24 else random_budget
            res = verify_supersaturation(g, params, budget=budget, seed=n * 100 + k)
            detail = f"mode={res.mode}, checked={res.checked}"
            if not res:
                detail += f", witness={sorted(res.witness)} e={res.witness_edges} < {res.bound}"
            checks.append(Check(f"supersat K({n},{k}) tau={tau}", res.ok, detail))
    g = materialize(kneser_params(5, 2))
    res = verify_supersaturation(g, SupersatParams(Fraction(2, 5), Fraction(1, 100)))
    stars = [frozenset(colex_rank(s) for s in principal_family(i, 5, 2)) for i in range(1, 6)]
    refuted = not res.ok and res.witness in stars
    checks.append(Check("refute K(5,2) lambda=2/5 gamma=1/100", refuted, f"witness={sorted(res.witness or ())}"))
    return checks


def container_checks(name: str, g: ExplicitGraph) -> list[str]:
    """Every container property on one graph; returns failure descriptions."""
    failures = []
    counts = independent_set_counts(g)
    alpha = max(t for t, c in enumerate(counts) if c)
    sets = list(maximal_independent_sets(g))
    N = g.vertex_count
    for gamma in GAMMAS:
        supersat = None
        if g.edge_count:
            supersat = SupersatParams(minimal_supersat_lambda(g, gamma), gamma)
        for ell in ELLS:
            cfg = ContainerConfig(gamma, ell)
            for I in sets:
                if len(I) <= ell:
                    continue
                cert = fingerprint(g, I, cfg)
                tag = f"{name} gamma={gamma} ell={ell} I={sorted(I)}"
                failures += [f"{tag}: {p}" for p in check_fingerprint_bullets(g, I, cert, gamma)]
                if reconstruct(g, cert.fingerprint_L, cfg) != cert.container_P:
                    failures.append(f"{tag}: reconstruct differs")
            if supersat is None:
                continue
            nu = container_bound_nu(N, Fraction(2 * g.edge_count, N), ell, supersat)
            for t in range(ell + 1, alpha + 1):
                bound = count_independent_sets_bound(N, ContainerConfig(gamma, ell, t), nu)
                if counts[t] > bound:
                    failures.append(f"{name} gamma={gamma} ell={ell} t={t}: {counts[t]} independent sets > bound {bound}")
    return failures


def suite_containers() -> list[Check]:
    failures = []
    cases = 0
    for name, g in container_corpus():
        failures += container_checks(name, g)
        cases += 1
    detail = f"{cases} graphs" if not failures else f"{len(failures)} violations, first: {failures[0]}"
    return [Check("container corpus", not failures, detail)]


def suite_ekr(max_n: int = 12) -> list[Check]:
    checks = []
    for n in range(4, max_n + 1):
        for k in range(2, n // 2 + 1):
            kp = kneser_params(n, k)
            g = materialize(kp)
            res = max_independent_set(g)
            star = frozenset(colex_rank(s) for s in principal_family(1, n, k))
            ok = res.optimal and res.size == kp.star_size and g.is_independent(star) and len(star) == res.size
            checks.append(Check(f"ekr K({n},{k})", ok, f"alpha={res.size}, (k/n)N={kp.star_size}, optimal={res.optimal}"))
    return checks


def suite_chernoff() -> list[Check]:
    checks = []

    def close(a: float, b: float, digits: int = 12) -> bool:
        return math.isclose(a, b, rel_tol=10.0**-digits, abs_tol=0.0)

    spots = [
        ("chernoff_upper(100,1/2,10)", chernoff_upper(100, 0.5, 10), math.exp(-100 / (2 * 50 + 10 / 3))),
        ("chernoff_lower(100,1/2,10)", chernoff_lower(100, 0.5, 10), math.exp(-1)),
        ("chernoff_upper(1000,0.1,30)", chernoff_upper(1000, 0.1, 30), math.exp(-900 / (200 + 10))),
        ("chernoff s=0", chernoff_upper(50, 0.3, 0) * chernoff_lower(50, 0.3, 0), 1.0),
        ("shearer(100,4)", shearer_bound(100, 4)[0], 100 * (4 * math.log(4) - 3) / 9),
    ]
    for name, got, want in spots:
        checks.append(Check(name, close(got, want), f"{got!r} vs {want!r}"))
    weak = shearer_bound(100, math.e)[1]
    checks.append(Check("shearer weak form at D=e", abs(weak) < 1e-12, repr(weak)))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "hoffman": suite_hoffman,
    "supersat": suite_supersat,
    "containers": suite_containers,
    "ekr": suite_ekr,
    "chernoff": suite_chernoff,
}


def run_suite(name: str) -> list[Check]:
    return SUITES[name]()


def all_labelled_graphs(m: int) -> Iterator[ExplicitGraph]:
    """Every labelled graph on m vertices (2^(m choose 2) of them)."""
    pairs = list(itertools.combinations(range(m), 2))
    for pick in range(1 << len(pairs)):
        yield ExplicitGraph.from_edges(m, [pr for i, pr in enumerate(pairs) if pick >> i & 1])
