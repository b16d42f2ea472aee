"""Immutable simple graphs with bitset adjacency, G(n, p) sampling and edge-list I/O.

Vertex sets are carried as Python ints used as bit vectors: bit ``v`` is set
iff vertex ``v`` is a member. Intersections are therefore single ``&``
operations regardless of ``n``.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "Graph",
    "GenSpec",
    "GraphFormatError",
    "bits",
    "mask_of",
    "generate_gnp",
    "common_neighbors",
    "remove_vertices",
    "load_graph",
    "save_graph",
    "format_graph",
    "parse_graph",
    "root_rng",
    "sample_rng",
]


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; the message names the offending line."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def root_rng(seed: int) -> np.random.Generator:
    """Generator for the root stream of ``seed`` (used for graph generation)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent substream ``index`` of ``seed``.

    Identical to ``np.random.SeedSequence(seed).spawn(index + 1)[index]``, so
    sample ``i`` of a run can be replayed without replaying samples ``0..i-1``.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbor bitset of ``v``. ``labels[v]`` is the label of
    ``v`` in the graph this one was derived from (identity for fresh graphs).
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor outside [0, {self.n})")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        elif len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...], labels: tuple[int, ...] | None = None) -> Graph:
        # Skips validation; callers guarantee a symmetric irreflexive adjacency.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "labels", labels if labels is not None else tuple(range(n)))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def complement(self) -> Graph:
        full = self.vertex_mask
        return Graph._trusted(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)), self.labels)

    def to_numpy(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    @classmethod
    def from_numpy(cls, a: np.ndarray) -> Graph:
        a = np.asarray(a, dtype=bool)
        n = a.shape[0]
        iu, iv = np.nonzero(np.triu(a, 1))
        return cls.from_edges(n, zip(iu.tolist(), iv.tolist()))


@dataclass(frozen=True)
class GenSpec:
    n: int
    p: Fraction
    seed: int

    def __post_init__(self):
        p = Fraction(self.p) if not isinstance(self.p, Fraction) else self.p
        if not 0 <= p <= 1:
            raise ValueError(f"edge probability must lie in [0, 1], got {p}")
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        object.__setattr__(self, "p", p)


def generate_gnp(spec: GenSpec) -> Graph:
    """Sample from G(n, p): each pair is an edge independently with probability p."""
    n = spec.n
    if n == 0:
        return Graph(0, ())
    iu, iv = np.triu_indices(n, 1)
    u = root_rng(spec.seed).random(iu.size)
    keep = u < float(spec.p)
    if spec.p == 1:
        keep[:] = True
    adj = [0] * n
    for a, b in zip(iu[keep].tolist(), iv[keep].tolist()):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return Graph._trusted(n, tuple(adj))


def common_neighbors(g: Graph, chosen: int | Iterable[int]) -> int:
    """Bitset of vertices adjacent to every member of ``chosen``, excluding ``chosen``.

    An empty ``chosen`` yields the full vertex set.
    """
    cmask = chosen if isinstance(chosen, int) else mask_of(chosen)
    out = g.vertex_mask
    for v in bits(cmask):
        out &= g.adj[v]
    return out & ~cmask


def remove_vertices(g: Graph, s: int | Iterable[int]) -> Graph:
    """Induced subgraph on the complement of ``s``, densely re-indexed.

    The result's ``labels`` map each new index to the original label.
    """
    smask = s if isinstance(s, int) else mask_of(s)
    if not smask:
        return g
    keep = [v for v in range(g.n) if not smask >> v & 1]
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & ~smask):
            row |= 1 << index[u]
        adj.append(row)
    return Graph._trusted(len(keep), tuple(adj), tuple(g.labels[v] for v in keep))


def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("line 1: missing header 'n m'")

    def ints(lineno: int, line: str) -> tuple[int, int]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}") from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"line {lineno}: negative value in {line!r}")
        return a, b

    n, m = ints(1, lines[0])
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise GraphFormatError(f"line 1: header declares {m} edges but {len(body)} edge lines follow")
    seen = set()
    for lineno, line in enumerate(body, start=2):
        u, v = ints(lineno, line)
        for w in (u, v):
            if w >= n:
                raise GraphFormatError(f"line {lineno}: vertex {w} out of range [0, {n})")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
    return Graph.from_edges(n, seen)


def save_graph(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_graph(g))


def load_graph(path: str | os.PathLike) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_graph(fh.read())
