"""Exact subset arithmetic on k-subsets of [n] = {1, ..., n}.

A k-subset is stored as a bit pattern: element i sets bit i-1.  With that
encoding the numeric order of the patterns is exactly colex order, so
ranking and Gosper-style enumeration agree with each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

from .errors import ParameterError

MAX_N = 64


def binomial(n: int, k: int) -> int:
    """Exact C(n, k) for 0 <= k <= n <= 64."""
    if not (0 <= k <= n <= MAX_N):
        raise ParameterError(f"binomial({n}, {k}) needs 0 <= k <= n <= {MAX_N}")
    return comb(n, k)


def _check_nk(n: int, k: int) -> None:
    if not (0 <= k <= n <= MAX_N):
        raise ParameterError(f"need 0 <= k <= n <= {MAX_N}, got n={n}, k={k}")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, order=True)
class KSubset:
    """A k-element subset of [n], elements kept sorted."""

    elements: tuple[int, ...]
    ground_n: int

    def __post_init__(self) -> None:
        els = tuple(sorted(self.elements))
        object.__setattr__(self, "elements", els)
        if not (1 <= self.ground_n <= MAX_N):
            raise ParameterError(f"ground set size {self.ground_n} outside [1, {MAX_N}]")
        if len(set(els)) != len(els):
            raise ParameterError(f"repeated elements in {els}")
        if els and (els[0] < 1 or els[-1] > self.ground_n):
            raise ParameterError(f"elements {els} not inside [1..{self.ground_n}]")

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "KSubset":
        return cls(elements_of(mask), n)

    @property
    def size_k(self) -> int:
        return len(self.elements)

    @property
    def mask(self) -> int:
        return mask_of(self.elements)

    def __contains__(self, item: int) -> bool:
        return item in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def _same_space(a: KSubset, b: KSubset) -> None:
    if a.ground_n != b.ground_n or a.size_k != b.size_k:
        raise ParameterError(
            f"subsets live in different spaces: (n={a.ground_n}, k={a.size_k}) "
            f"vs (n={b.ground_n}, k={b.size_k})"
        )


def disjoint(a: KSubset, b: KSubset) -> bool:
    _same_space(a, b)
    return a.mask & b.mask == 0


def colex_rank_mask(mask: int) -> int:
    r = 0
    i = 1
    while mask:
        low = mask & -mask
        r += comb(low.bit_length() - 1, i)
        mask ^= low
        i += 1
    return r


def colex_unrank_mask(r: int, n: int, k: int) -> int:
    _check_nk(n, k)
    total = comb(n, k)
    if not (0 <= r < total):
        raise ParameterError(f"rank {r} outside [0, C({n},{k})={total})")
    mask = 0
    c = n
    for i in range(k, 0, -1):
        # largest c with C(c, i) <= r; element c+1
        c -= 1
        while comb(c, i) > r:
            c -= 1
        mask |= 1 << c
        r -= comb(c, i)
    return mask


def colex_rank(s: KSubset) -> int:
    """Position of ``s`` among the k-subsets of [n] in colex order."""
    return colex_rank_mask(s.mask)


def colex_unrank(r: int, n: int, k: int) -> KSubset:
    return KSubset.from_mask(colex_unrank_mask(r, n, k), n)


def colex_masks(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] as masks, in colex (= increasing numeric) order."""
    _check_nk(n, k)
    if k == 0:
        yield 0
        return
    m = (1 << k) - 1
    limit = 1 << n
    while m < limit:
        yield m
        # Gosper's hack: next integer with the same popcount
        low = m & -m
        ripple = m + low
        m = (((ripple ^ m) >> 2) // low) | ripple


def subsets_containing(i: int, n: int, k: int) -> Iterator[int]:
    """Masks of the k-subsets of [n] containing element i, in colex order."""
    bit = 1 << (i - 1)
    for m in colex_masks(n, k):
        if m & bit:
            yield m
