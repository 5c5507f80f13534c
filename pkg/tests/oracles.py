"""Slow, obviously-correct reference computations used as test oracles.

Nothing here imports the library's algorithms; graphs are plain adjacency
sets built from explicit edge lists.
"""
from __future__ import annotations

import itertools
import math


def pascal(n_max: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return rows


def colex_list(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [n] in colex order: compare by reversed sorted tuples."""
    return sorted(itertools.combinations(range(1, n + 1), k), key=lambda c: tuple(reversed(c)))


def kneser_edges(n: int, k: int) -> tuple[list[tuple[int, ...]], list[tuple[int, int]]]:
    verts = colex_list(n, k)
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(verts)), 2)
        if not set(verts[i]) & set(verts[j])
    ]
    return verts, edges


def adjacency(m: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(m)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def is_independent(adj, S) -> bool:
    return all(v not in adj[u] for u, v in itertools.combinations(S, 2))


def edges_in(adj, S) -> int:
    S = set(S)
    return sum(1 for u in S for v in adj[u] if v in S) // 2


def brute_alpha(adj) -> int:
    m = len(adj)
    for size in range(m, 0, -1):
        for S in itertools.combinations(range(m), size):
            if is_independent(adj, S):
                return size
    return 0


def brute_min_edges(adj, s: int) -> int:
    return min(edges_in(adj, S) for S in itertools.combinations(range(len(adj)), s))


def count_independent(adj, t: int) -> int:
    return sum(1 for S in itertools.combinations(range(len(adj)), t) if is_independent(adj, S))


def petersen():
    verts, edges = kneser_edges(5, 2)
    return verts, adjacency(len(verts), edges)


def chernoff_upper_ref(m, zeta, s):
    return math.exp(-(s**2) / (2 * zeta * m + s / 3))


def chernoff_lower_ref(m, zeta, s):
    return math.exp(-(s**2) / (2 * zeta * m))
