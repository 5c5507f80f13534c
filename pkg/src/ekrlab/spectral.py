"""Hoffman-type edge lower bounds and (lambda, gamma)-supersaturation checks.

Bound evaluations are exact rationals.  The subset scanners enumerate
every vertex set of a graph with at most ``EXHAUSTIVE_LIMIT`` vertices and
record, for each size s, the fewest edges spanned by an s-set; both the
supersaturation and the Hoffman checks only need that table.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ParameterError
from .graph import ExplicitGraph, bits, to_mask

EXHAUSTIVE_LIMIT = 24

Number = int | Fraction


@dataclass(frozen=True)
class SupersatParams:
    lam: Fraction
    gamma: Fraction
    tau: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if not (0 < self.lam <= 1 and 0 < self.gamma <= 1):
            raise ParameterError(f"need lambda, gamma in (0, 1]; got {self.lam}, {self.gamma}")

    def threshold_size(self, N: int) -> int:
        """Smallest integer s with s >= lambda N."""
        return math.ceil(self.lam * N)

    def required_edges(self, s: int, N: int, e_G: int) -> Fraction:
        return self.gamma * Fraction(s, N) ** 2 * e_G


@dataclass
class ScanResult:
    ok: bool
    witness: frozenset[int] | None = None
    witness_edges: int | None = None
    bound: Fraction | float | None = None
    mode: str = "exhaustive"
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def hoffman_lower_bound(N: int, D: Number, lambda_min: Number, e_G: Number, s: int) -> Fraction:
    """(lambda_min/D * N/s + (D - lambda_min)/D) * (s/N)^2 * e(G), exactly.

    May be negative for small s; callers clamp if they need to.
    """
    if s <= 0:
        raise ParameterError("set size s must be positive")
    if s > N:
        raise ParameterError(f"set size {s} exceeds vertex count {N}")
    D = Fraction(D)
    lam = Fraction(lambda_min)
    if D == 0:
        return Fraction(0)
    ratio = Fraction(s, N)
    return (lam / D / ratio + (D - lam) / D) * ratio * ratio * Fraction(e_G)


def ratio_bound_fraction(D: Number, lambda_min: Number) -> Fraction:
    """-lambda_min / (D - lambda_min): where the Hoffman bound changes sign."""
    return Fraction(-Fraction(lambda_min), Fraction(D) - Fraction(lambda_min))


def kneser_supersat_params(n: int, k: int, tau: Number) -> SupersatParams:
    tau = Fraction(tau)
    if tau <= 0:
        raise ParameterError("tau must be positive")
    lam = (1 + tau) * Fraction(k, n)
    if lam > 1:
        raise ParameterError(f"(1+tau)k/n = {lam} > 1: the certificate is vacuous")
    return SupersatParams(lam=lam, gamma=tau / (1 + tau), tau=tau)


# ---------------------------------------------------------------------------
# exhaustive subset tables


def subset_edge_table(g: ExplicitGraph) -> tuple[np.ndarray, np.ndarray]:
    """e(G[S]) and |S| for every S, indexed by the bitmask of S."""
    m = g.vertex_count
    if m > EXHAUSTIVE_LIMIT:
        raise ParameterError(f"exhaustive scan needs <= {EXHAUSTIVE_LIMIT} vertices, got {m}")
    size = 1 << m
    edges = np.zeros(size, dtype=np.int32)
    pop = np.zeros(size, dtype=np.uint8)
    for i in range(m):
        lo = 1 << i
        low_nbrs = g.adj[i] & (lo - 1)
        idx = np.arange(lo, dtype=np.uint32)
        extra = np.bitwise_count(idx & np.uint32(low_nbrs)).astype(np.int32)
        edges[lo : 2 * lo] = edges[:lo] + extra
        pop[lo : 2 * lo] = pop[:lo] + 1
    return edges, pop


def min_edges_by_size(g: ExplicitGraph) -> tuple[list[int], list[int]]:
    """For s = 0..m: min e(G[S]) over |S| = s, and the smallest mask attaining it."""
    edges, pop = subset_edge_table(g)
    m = g.vertex_count
    order = np.lexsort((np.arange(edges.size), edges, pop))
    starts = np.searchsorted(pop[order], np.arange(m + 1))
    masks = [int(order[st]) for st in starts]
    return [int(edges[x]) for x in masks], masks


# ---------------------------------------------------------------------------
# supersaturation


def _greedy_growth(g: ExplicitGraph, start: Iterable[int]) -> list[int]:
    """Grow a set one vertex at a time, always adding the vertex creating the fewest edges."""
    current = to_mask(start)
    order = list(bits(current))
    rest = g.full_mask & ~current
    while rest:
        best_v, best_d = -1, None
        for v in bits(rest):
            d = (g.adj[v] & current).bit_count()
            if best_d is None or d < best_d:
                best_v, best_d = v, d
        current |= 1 << best_v
        rest &= ~(1 << best_v)
        order.append(best_v)
    return order


def verify_supersaturation(
    g: ExplicitGraph,
    params: SupersatParams,
    budget: int | None = None,
    seed: int = 0,
    candidates: Iterable[Iterable[int]] = (),
) -> ScanResult:
    """Check e(S) >= gamma (|S|/N)^2 e(G) for every S with |S| >= lambda N.

    Exhaustive for graphs with at most 24 vertices.  Larger graphs need a
    ``budget`` of random threshold-size subsets; in that mode a pass only
    means no violation was found.  Greedy low-edge growths from each set in
    ``candidates`` (and from a greedy independent set) are tried first.
    """
    N = g.vertex_count
    e_G = g.edge_count
    s0 = params.threshold_size(N)
    if N <= EXHAUSTIVE_LIMIT and budget is None:
        if N == 0:
            return ScanResult(True, checked=0)
        min_e, masks = min_edges_by_size(g)
        for s in range(max(s0, 1), N + 1):
            need = params.required_edges(s, N, e_G)
            if min_e[s] < need:
                return ScanResult(False, frozenset(bits(masks[s])), min_e[s], need, "exhaustive", s - s0 + 1)
        return ScanResult(True, checked=N - s0 + 1)
    if budget is None:
        raise ParameterError(f"graph has {N} > {EXHAUSTIVE_LIMIT} vertices; pass a sample budget")

    from .indep import degree_greedy_is

    checked = 0
    starts = [list(c) for c in candidates]
    starts.append(sorted(degree_greedy_is(g).witness))
    for start in starts:
        order = _greedy_growth(g, start)
        mask = 0
        for s, v in enumerate(order, 1):
            mask |= 1 << v
            if s < s0:
                continue
            checked += 1
            e_S = g.edges_within(mask)
            need = params.required_edges(s, N, e_G)
            if e_S < need:
                return ScanResult(False, frozenset(bits(mask)), e_S, need, "heuristic", checked)
    rng = random.Random(seed)
    verts = list(range(N))
    for _ in range(budget):
        s = s0 if s0 >= 1 else 1
        S = rng.sample(verts, s)
        mask = to_mask(S)
        checked += 1
        e_S = g.edges_within(mask)
        need = params.required_edges(s, N, e_G)
        if e_S < need:
            return ScanResult(False, frozenset(S), e_S, need, "random", checked)
    return ScanResult(True, mode="randomized", checked=checked)


def minimal_supersat_lambda(g: ExplicitGraph, gamma: Number) -> Fraction:
    """Smallest lambda = s/N for which g is (lambda, gamma)-supersaturated (exhaustive)."""
    N = g.vertex_count
    gamma = Fraction(gamma)
    min_e, _ = min_edges_by_size(g)
    s_star = 1
    for s in range(N, 0, -1):
        if min_e[s] * N * N < gamma * s * s * g.edge_count:
            s_star = s + 1
            break
    return Fraction(min(s_star, N), N)


# ---------------------------------------------------------------------------
# Hoffman


def smallest_eigenvalue(g: ExplicitGraph) -> float:
    if g.vertex_count == 0:
        return 0.0
    return float(np.linalg.eigvalsh(g.adjacency_matrix())[0])


def verify_hoffman(g: ExplicitGraph, tol: float = 1e-9) -> ScanResult:
    """Exhaustively check e(S) >= Hoffman bound for every nonempty S of a regular graph."""
    if not g.is_regular():
        raise ParameterError("Hoffman's bound needs a regular graph")
    N = g.vertex_count
    if N == 0:
        return ScanResult(True)
    D = g.degree(0)
    lam = smallest_eigenvalue(g)
    min_e, masks = min_edges_by_size(g)
    e_G = g.edge_count
    for s in range(1, N + 1):
        r = s / N
        bound = ((lam / D) / r + (D - lam) / D) * r * r * e_G if D else 0.0
        if min_e[s] < bound - tol * max(1.0, abs(bound)):
            return ScanResult(False, frozenset(bits(masks[s])), min_e[s], bound, "exhaustive", s)
    return ScanResult(True, checked=N)
