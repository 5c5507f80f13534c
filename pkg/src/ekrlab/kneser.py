"""The Kneser graph K(n, k): k-subsets of [n], adjacent when disjoint.

The graph stays implicit; only ``materialize`` builds the full edge set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .combinatorics import (
    MAX_N,
    KSubset,
    binomial,
    colex_masks,
    colex_rank_mask,
    colex_unrank,
    disjoint,
    elements_of,
)
from .errors import ParameterError, ResourceError
from .graph import ExplicitGraph

MATERIALIZE_LIMIT = 10_000


@dataclass(frozen=True)
class KneserParams:
    n: int
    k: int
    N: int
    D: int
    lambda_min: int
    edge_count: int

    @property
    def star_size(self) -> int:
        """C(n-1, k-1) = (k/n) N, the size of a principal family."""
        return self.N * self.k // self.n


def kneser_params(n: int, k: int) -> KneserParams:
    if not (2 <= k and 2 * k <= n <= MAX_N):
        raise ParameterError(f"K(n,k) needs 2 <= k <= n/2 and n <= {MAX_N}; got n={n}, k={k}")
    N = binomial(n, k)
    D = binomial(n - k, k)
    lam = -binomial(n - k - 1, k - 1)
    # Lovasz: lambda_min = -(k/(n-k)) D, exactly
    assert lam * (n - k) == -k * D
    assert (N * D) % 2 == 0
    return KneserParams(n=n, k=k, N=N, D=D, lambda_min=lam, edge_count=N * D // 2)


def is_edge(a: KSubset, b: KSubset) -> bool:
    return disjoint(a, b)


def neighbor_masks(mask: int, n: int, k: int) -> Iterator[int]:
    """Masks of the k-subsets of [n] \\ v, in colex order."""
    rest = [i for i in range(n) if not mask >> i & 1]
    for sub in colex_masks(len(rest), k):
        m = 0
        for j in elements_of(sub):
            m |= 1 << rest[j - 1]
        yield m


def neighbors(v: KSubset) -> Iterator[KSubset]:
    n, k = v.ground_n, v.size_k
    for m in neighbor_masks(v.mask, n, k):
        yield KSubset.from_mask(m, n)


def principal_family(i: int, n: int, k: int) -> frozenset[KSubset]:
    """The star F_i: every k-subset of [n] that contains i."""
    if not (1 <= i <= n):
        raise ParameterError(f"element {i} outside [1..{n}]")
    bit = 1 << (i - 1)
    return frozenset(KSubset.from_mask(m, n) for m in colex_masks(n, k) if m & bit)


def kneser_graph_from_masks(masks: list[int], n: int) -> ExplicitGraph:
    """Induced subgraph of K(n, k) on the given vertex masks (labels = colex ranks)."""
    m = len(masks)
    if m > 64:
        import numpy as np

        arr = np.array(masks, dtype=np.uint64)
        dis = (arr[:, None] & arr[None, :]) == 0
        adj = []
        for v in range(m):
            row = dis[v]
            row[v] = False
            # pack the boolean row into an int bitmask
            packed = np.packbits(row, bitorder="little").tobytes()
            adj.append(int.from_bytes(packed, "little"))
    else:
        adj = [0] * m
        for a in range(m):
            ma = masks[a]
            for b in range(a + 1, m):
                if ma & masks[b] == 0:
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
    return ExplicitGraph(adj, [colex_rank_mask(x) for x in masks])


def materialize(params: KneserParams) -> ExplicitGraph:
    if params.N > MATERIALIZE_LIMIT:
        raise ResourceError(f"K({params.n},{params.k}) has {params.N} vertices; limit is {MATERIALIZE_LIMIT}")
    return kneser_graph_from_masks(list(colex_masks(params.n, params.k)), params.n)


def vertex_subsets(g: ExplicitGraph, n: int, k: int) -> list[KSubset]:
    """KSubsets behind the vertices of a graph whose labels are colex ranks."""
    return [colex_unrank(r, n, k) for r in g.labels]
