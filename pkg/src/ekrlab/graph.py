"""Finite simple graphs with bitset adjacency.

Vertices are 0..m-1.  ``adj[v]`` is an int whose bit u is set iff uv is an
edge.  Vertex sets are passed around either as iterables of ints or as int
bitmasks (the ``*_mask`` helpers).
"""
from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import ParameterError


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class ExplicitGraph:
    """A materialized simple graph.

    ``labels`` carries whatever the vertices stand for (colex ranks for
    Kneser samples, plain indices for synthetic graphs).  ``source`` maps a
    vertex back to its index in the graph it was induced from, if any.
    """

    __slots__ = ("adj", "labels", "source", "_edge_count")

    def __init__(
        self,
        adj: Sequence[int],
        labels: Sequence[Hashable] | None = None,
        source: Sequence[int] | None = None,
    ):
        m = len(adj)
        full = (1 << m) - 1
        adj = tuple(adj)
        degree_sum = 0
        for v, row in enumerate(adj):
            if row >> v & 1:
                raise ParameterError(f"self-loop at vertex {v}")
            if row & ~full:
                raise ParameterError(f"vertex {v} adjacent to a vertex outside 0..{m - 1}")
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise ParameterError(f"adjacency not symmetric at {v}-{u}")
            degree_sum += row.bit_count()
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else tuple(range(m))
        if len(self.labels) != m:
            raise ParameterError("labels length differs from vertex count")
        self.source = tuple(source) if source is not None else None
        self._edge_count = degree_sum // 2

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]], labels=None) -> "ExplicitGraph":
        adj = [0] * vertex_count
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ParameterError(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(adj, labels)

    # a few standard fixtures
    @classmethod
    def empty(cls, m: int) -> "ExplicitGraph":
        return cls([0] * m)

    @classmethod
    def complete(cls, m: int) -> "ExplicitGraph":
        full = (1 << m) - 1
        return cls([full & ~(1 << v) for v in range(m)])

    @classmethod
    def path(cls, m: int) -> "ExplicitGraph":
        return cls.from_edges(m, [(i, i + 1) for i in range(m - 1)])

    @classmethod
    def cycle(cls, m: int) -> "ExplicitGraph":
        return cls.from_edges(m, [(i, (i + 1) % m) for i in range(m)])

    @classmethod
    def star(cls, leaves: int) -> "ExplicitGraph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def random_gnm(cls, m: int, edges: int, rng) -> "ExplicitGraph":
        """Uniform G(m, edges); ``rng`` is a ``random.Random`` or numpy Generator."""
        pairs = list(combinations(range(m), 2))
        if edges > len(pairs):
            raise ParameterError(f"G({m}, {edges}) has too many edges")
        if hasattr(rng, "sample"):
            chosen = rng.sample(pairs, edges)
        else:
            chosen = [pairs[i] for i in rng.choice(len(pairs), size=edges, replace=False)]
        return cls.from_edges(m, chosen)

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def full_mask(self) -> int:
        return (1 << len(self.adj)) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int, within: int | None = None) -> int:
        row = self.adj[v]
        return (row if within is None else row & within).bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def is_regular(self) -> bool:
        degs = self.degrees()
        return all(d == degs[0] for d in degs) if degs else True

    def edges_within(self, mask: int) -> int:
        """e(G[S]) for the vertex set S given as a bitmask."""
        total = 0
        for v in bits(mask):
            total += (self.adj[v] & mask).bit_count()
        return total // 2

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def induced(self, vertices: Iterable[int]) -> "ExplicitGraph":
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        keep_mask = to_mask(keep)
        adj = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v] & keep_mask):
                row |= 1 << pos[u]
            adj.append(row)
        return ExplicitGraph(adj, [self.labels[v] for v in keep], keep)

    def triangles(self) -> Iterator[tuple[int, int, int]]:
        """Triangles u < v < w in lexicographic order."""
        for u, row in enumerate(self.adj):
            higher = row >> (u + 1) << (u + 1)
            for v in bits(higher):
                common = self.adj[v] & higher
                common = common >> (v + 1) << (v + 1)
                for w in bits(common):
                    yield u, v, w

    def triangle_count(self) -> int:
        count = 0
        for u, row in enumerate(self.adj):
            higher = row >> (u + 1) << (u + 1)
            for v in bits(higher):
                count += ((self.adj[v] & higher) >> (v + 1)).bit_count()
        return count

    def adjacency_matrix(self):
        import numpy as np

        m = len(self.adj)
        a = np.zeros((m, m), dtype=float)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    # plain-text edge list: "p <m> <e>" then "e <u> <v>" per edge
    def to_edge_list(self) -> str:
        lines = [f"p {self.vertex_count} {self.edge_count}"]
        lines += [f"e {u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "ExplicitGraph":
        header = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if parts[0] == "p" and len(parts) == 3 and header is None:
                    header = (int(parts[1]), int(parts[2]))
                elif parts[0] == "e" and len(parts) == 3 and header is not None:
                    edges.append((int(parts[1]), int(parts[2])))
                else:
                    raise ValueError
            except ValueError:
                raise ParameterError(f"edge list line {lineno}: cannot parse {raw!r}") from None
        if header is None:
            raise ParameterError("edge list has no 'p <vertices> <edges>' header")
        g = cls.from_edges(header[0], edges)
        if g.edge_count != header[1] or len(edges) != header[1]:
            raise ParameterError(
                f"edge list header says {header[1]} edges, found {len(edges)} lines / {g.edge_count} distinct"
            )
        return g

    def __repr__(self) -> str:
        return f"ExplicitGraph(vertices={self.vertex_count}, edges={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExplicitGraph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)
