"""Binomial vertex samples V_p of K(n, k), Chernoff tails and moment formulas.

Random numbers come from numpy's PCG64 bit generator.  A ``SampleSpec``
with seed s draws from ``Generator(PCG64(s))``; trial i of a sweep with
master seed m uses the 64-bit seed

    SeedSequence(entropy=m, spawn_key=(i,)).generate_state(1, uint64)[0]

so a sweep row can be reproduced on its own with ``trial --seed <seed>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import binomial, colex_unrank_mask
from .errors import ParameterError
from .graph import ExplicitGraph
from .kneser import kneser_graph_from_masks, kneser_params

_CHUNK_MIN = 64


@dataclass(frozen=True)
class SampleSpec:
    p: float
    seed: int
    n: int
    k: int

    def __post_init__(self) -> None:
        if not (0 < self.p <= 1):
            raise ParameterError(f"p must lie in (0, 1], got {self.p}")
        if not (0 <= self.seed < 2**64):
            raise ParameterError("seed must be a 64-bit unsigned integer")


def derive_seed(master_seed: int, trial_index: int) -> int:
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_ranks(N: int, p: float, rng: np.random.Generator) -> list[int]:
    """Each of 0..N-1 kept independently with probability p, by geometric skips.

    Gaps are floor(log(U) / log(1 - p)) with U uniform on (0, 1], drawn in
    chunks; the cost is proportional to pN rather than N.
    """
    if p >= 1:
        return list(range(N))
    log_q = math.log1p(-p)
    if log_q == 0.0:
        # p == 0: nothing can be drawn
        return []
    out: list[int] = []
    pos = -1
    chunk = max(_CHUNK_MIN, int(p * N * 1.1) + 16)
    while True:
        u = 1.0 - rng.random(chunk)  # (0, 1]
        gaps = np.floor(np.log(u) / log_q)
        for gap in gaps:
            if gap >= N:
                return out
            pos += int(gap) + 1
            if pos >= N:
                return out
            out.append(pos)


def sample_vertices(spec: SampleSpec) -> list[int]:
    """Sorted colex ranks of V_p for K(n, k)."""
    N = binomial(spec.n, spec.k)
    return sample_ranks(N, spec.p, make_rng(spec.seed))


def induced_subgraph(sample: list[int], n: int, k: int) -> ExplicitGraph:
    """H = K(n, k)[sample]; vertex i of H is the sample's i-th rank."""
    N = binomial(n, k)
    for r in sample:
        if not (0 <= r < N):
            raise ParameterError(f"rank {r} outside [0, {N})")
    masks = [colex_unrank_mask(r, n, k) for r in sample]
    return kneser_graph_from_masks(masks, n)


# ---------------------------------------------------------------------------
# tail bounds


@dataclass(frozen=True)
class TailBoundQuery:
    m: int
    zeta: float
    s: float

    def __post_init__(self) -> None:
        if self.m < 0 or not (0 <= self.zeta <= 1) or self.s < 0:
            raise ParameterError("need m >= 0, 0 <= zeta <= 1, s >= 0")

    def upper(self) -> float:
        return chernoff_upper(self.m, self.zeta, self.s)

    def lower(self) -> float:
        return chernoff_lower(self.m, self.zeta, self.s)


def chernoff_upper(m: int, zeta: float, s: float) -> float:
    """Bound on P(Bin(m, zeta) >= m zeta + s): exp(-s^2 / (2 zeta m + s/3))."""
    TailBoundQuery(m, zeta, s)
    if s == 0:
        return 1.0
    return math.exp(-s * s / (2 * zeta * m + s / 3))


def chernoff_lower(m: int, zeta: float, s: float) -> float:
    """Bound on P(Bin(m, zeta) <= m zeta - s): exp(-s^2 / (2 zeta m)); 0 when zeta m = 0 < s."""
    TailBoundQuery(m, zeta, s)
    if s == 0:
        return 1.0
    if zeta * m == 0:
        return 0.0
    return math.exp(-s * s / (2 * zeta * m))


# ---------------------------------------------------------------------------
# moments of the sampled Kneser graph


def edge_count_moments(n: int, k: int, p: float) -> tuple[float, float]:
    """(E e(H), upper bound on Var e(H)) = (p^2 N D / 2, 2 p^3 N^2 D + p^2 N D)."""
    kp = kneser_params(n, k)
    N, D = kp.N, kp.D
    return p * p * N * D / 2, 2 * p**3 * N * N * D + p * p * N * D


def expected_triangles_upper(n: int, k: int, p: float) -> float:
    """p^3 C(n,k) C(n-k,k) C(n-2k,k); zero when n < 3k (no three disjoint k-sets)."""
    kneser_params(n, k)
    if n < 3 * k:
        return 0.0
    return p**3 * binomial(n, k) * binomial(n - k, k) * binomial(n - 2 * k, k)
