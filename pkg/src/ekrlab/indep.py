"""Independent sets: exact solver, constructive lower bounds, Shearer's bound,
and the distance from a family of k-sets to the nearest star."""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Iterable

from .combinatorics import KSubset
from .errors import ParameterError
from .graph import ExplicitGraph, bits, to_mask

DEFAULT_BUDGET = 2_000_000
RATIO_BOUND_LIMIT = 3_000


@dataclass(frozen=True)
class ISResult:
    size: int
    witness: frozenset[int]
    method: str
    optimal: bool = False
    nodes: int = 0
    upper_bound: int | None = None

    def __post_init__(self) -> None:
        assert self.size == len(self.witness)


def caro_wei(g: ExplicitGraph) -> float:
    return sum(1.0 / (d + 1) for d in g.degrees())


def _ratio_upper_bound(g: ExplicitGraph) -> int | None:
    """floor(N * -lmin / (D - lmin)) for a regular graph with edges, else None."""
    N = g.vertex_count
    if N == 0 or N > RATIO_BOUND_LIMIT or g.edge_count == 0 or not g.is_regular():
        return None
    import numpy as np

    lam = float(np.linalg.eigvalsh(g.adjacency_matrix())[0])
    D = g.degree(0)
    return math.floor(N * (-lam) / (D - lam) + 1e-7)


def max_independent_set(
    g: ExplicitGraph,
    budget: int = DEFAULT_BUDGET,
    initial: Iterable[int] | None = None,
    use_ratio_bound: bool = True,
) -> ISResult:
    """Maximum independent set by branch and bound.

    Candidate sets are bitmasks.  At every node the candidates are greedily
    partitioned into cliques; a set can take at most one vertex per clique,
    which bounds the subtree.  Vertices are expanded from the last clique
    backwards, each one removed from the candidates after its subtree is done.
    For regular inputs the Hoffman ratio bound caps the answer at the root.

    ``budget`` limits the number of search nodes; if it runs out the best
    set found so far comes back with ``optimal=False``.
    """
    m = g.vertex_count
    if m == 0:
        return ISResult(0, frozenset(), "exact", True, 0, 0)

    # relabel so that high-degree vertices come first
    perm = sorted(range(m), key=lambda v: (-g.degree(v), v))
    pos = {v: i for i, v in enumerate(perm)}
    adj = []
    for v in perm:
        adj.append(to_mask(pos[u] for u in bits(g.adj[v])))

    seed = degree_greedy_is(g).witness
    if initial is not None:
        initial = frozenset(initial)
        if not g.is_independent(initial):
            raise ParameterError("initial witness is not independent")
        if len(initial) > len(seed):
            seed = initial
    best_size = len(seed)
    best_set = [pos[v] for v in seed]

    ub = _ratio_upper_bound(g) if use_ratio_bound else None
    if ub is not None and best_size >= ub:
        return ISResult(best_size, frozenset(seed), "exact", True, 0, ub)

    nodes = 0
    exhausted = False

    def expand(P: int, chosen: list[int]) -> None:
        nonlocal nodes, best_size, best_set, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        # greedy clique partition of P
        order: list[int] = []
        colour: list[int] = []
        U = P
        c = 0
        while U:
            c += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= adj[v]
                U ^= low
                order.append(v)
                colour.append(c)
        size = len(chosen)
        for idx in range(len(order) - 1, -1, -1):
            if size + colour[idx] <= best_size or exhausted:
                return
            v = order[idx]
            newP = P & ~adj[v] & ~(1 << v)
            chosen.append(v)
            if newP:
                expand(newP, chosen)
            elif size + 1 > best_size:
                best_size = size + 1
                best_set = list(chosen)
            chosen.pop()
            P &= ~(1 << v)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * m + 200))
    try:
        expand((1 << m) - 1, [])
    finally:
        sys.setrecursionlimit(old)
    witness = frozenset(perm[v] for v in best_set)
    return ISResult(best_size, witness, "exact", not exhausted, nodes, ub)


def deletion_lower_bound(g: ExplicitGraph) -> ISResult:
    """Drop the higher endpoint of every edge still present, then re-add greedily.

    The first phase alone guarantees |V| - e(G); the second makes the set maximal.
    """
    alive = g.full_mask
    for u, v in g.edges():
        if alive >> u & 1 and alive >> v & 1:
            alive &= ~(1 << v)
    for v in range(g.vertex_count):
        if not alive >> v & 1 and not g.adj[v] & alive:
            alive |= 1 << v
    w = frozenset(bits(alive))
    return ISResult(len(w), w, "deletion")


def triangle_free_reduce(g: ExplicitGraph) -> tuple[ExplicitGraph, frozenset[int]]:
    """Delete the lowest vertex of the lexicographically first triangle until none remain."""
    alive = g.full_mask
    removed = set()
    while True:
        hit = None
        for u in bits(alive):
            higher = g.adj[u] & alive & ~((1 << (u + 1)) - 1)
            for v in bits(higher):
                if (g.adj[v] & higher) >> (v + 1):
                    hit = u
                    break
            if hit is not None:
                break
        if hit is None:
            break
        alive &= ~(1 << hit)
        removed.add(hit)
    return g.induced(bits(alive)), frozenset(removed)


def degree_greedy_is(g: ExplicitGraph) -> ISResult:
    """Repeatedly take a minimum-degree vertex (lowest index on ties) and drop its closed neighbourhood."""
    alive = g.full_mask
    chosen = []
    deg = {v: g.degree(v) for v in range(g.vertex_count)}
    while alive:
        v = min(bits(alive), key=lambda x: (deg[x], x))
        chosen.append(v)
        gone = (g.adj[v] & alive) | (1 << v)
        alive &= ~gone
        for u in bits(gone):
            for w in bits(g.adj[u] & alive):
                deg[w] -= 1
    w = frozenset(chosen)
    return ISResult(len(w), w, "greedy")


def triangle_free_greedy(g: ExplicitGraph) -> ISResult:
    reduced, _ = triangle_free_reduce(g)
    res = degree_greedy_is(reduced)
    w = frozenset(reduced.source[v] for v in res.witness)
    return ISResult(len(w), w, "triangle_free_greedy")


def shearer_bound(N: float, D: float) -> tuple[float, float]:
    """N (D ln D - D + 1)/(D - 1)^2 and the weaker N (ln D - 1)/D."""
    if D <= 1:
        raise ParameterError(f"Shearer's bound needs average degree D > 1, got {D}")
    x = D - 1.0
    strong = N * ((1.0 + x) * math.log1p(x) - x) / (x * x)
    weak = N * (math.log(D) - 1.0) / D
    return strong, weak


def stability_distance(F: Iterable[KSubset | int], n: int) -> tuple[int, int]:
    """(i, |F minus F_i|) for the star F_i closest to F; ties go to the smallest i."""
    masks = [x.mask if isinstance(x, KSubset) else int(x) for x in F]
    if not masks:
        raise ParameterError("stability distance of an empty family is undefined")
    best_i, best_r = 0, None
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        r = sum(1 for m in masks if not m & bit)
        if best_r is None or r < best_r:
            best_i, best_r = i, r
    return best_i, best_r


def star_counts(masks: Iterable[int], n: int) -> list[int]:
    """|F_i ∩ sample| for i = 1..n."""
    counts = [0] * n
    for m in masks:
        for i in range(n):
            if m >> i & 1:
                counts[i] += 1
    return counts
