"""Brute-force exact counters. No floating point anywhere in this module."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .analytic import as_probability
from .graph import Graph, bits

__all__ = [
    "count_cliques_exact",
    "count_independent_sets_exact",
    "count_clique_covers_exact",
    "clique_polynomial",
    "binomial_moment_bruteforce",
    "nesting_bruteforce",
    "predicted_clique_work",
    "predicted_cover_work",
]


def count_cliques_exact(g: Graph, k: int) -> int:
    """Number of k-subsets of vertices inducing a complete subgraph.

    Backtracks over increasing vertex sequences; each candidate set is the
    common neighborhood of the prefix restricted to higher-numbered vertices.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return 1

    def extend(cand: int, depth: int) -> int:
        if depth == k:
            return 1
        if cand.bit_count() < k - depth:
            return 0
        total = 0
        for v in bits(cand):
            higher = g.adj[v] >> (v + 1) << (v + 1)
            total += extend(cand & higher, depth + 1)
        return total

    return extend(g.vertex_mask, 0)


def count_independent_sets_exact(g: Graph, k: int) -> int:
    return count_cliques_exact(g.complement(), k)


def count_clique_covers_exact(g: Graph, k: int) -> int:
    """Number of partitions of the vertex set into n/k blocks that each induce a k-clique.

    Always places the lowest uncovered vertex, so each unordered partition is
    generated exactly once.
    """
    if k <= 0 or g.n % k:
        raise ValueError(f"k={k} must divide n={g.n}")
    memo: dict[int, int] = {}

    def blocks_with(cand: int, need: int):
        # masks of need-subsets of cand that are cliques; cand already lies in N(v)
        if need == 0:
            yield 0
            return
        for u in bits(cand):
            rest = cand & g.adj[u] & ~((1 << (u + 1)) - 1)
            for tail in blocks_with(rest, need - 1):
                yield tail | (1 << u)

    def cover(uncovered: int) -> int:
        if not uncovered:
            return 1
        hit = memo.get(uncovered)
        if hit is not None:
            return hit
        v = (uncovered & -uncovered).bit_length() - 1
        cand = g.adj[v] & uncovered
        total = 0
        for block in blocks_with(cand, k - 1):
            total += cover(uncovered & ~block & ~(1 << v))
        memo[uncovered] = total
        return total

    return cover(g.vertex_mask)


def clique_polynomial(g: Graph) -> list[int]:
    """Coefficients ``c_0, c_1, ..., c_omega`` where ``c_i`` counts i-cliques."""
    counts = [1]

    def walk(cand: int, depth: int) -> None:
        for v in bits(cand):
            if len(counts) <= depth + 1:
                counts.append(0)
            counts[depth + 1] += 1
            walk(cand & g.adj[v] >> (v + 1) << (v + 1), depth + 1)

    walk(g.vertex_mask, 0)
    return counts


def binomial_moment_bruteforce(n: int, k: int, p) -> Fraction:
    """``sum_{i=0}^{n} i^k C(n,i) p^i (1-p)^(n-i)``."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    p = as_probability(p)
    q = 1 - p
    return sum((Fraction(i**k * comb(n, i)) * p**i * q ** (n - i) for i in range(n + 1)), Fraction(0))


def nesting_bruteforce(k: int, n: int, p) -> Fraction:
    """Evaluate the recursive k-nesting definition term by term.

    ``N(2,n) = n^2 sum_{i=1}^{n-1} i^2 C(n-1,i) p^i (1-p)^(n-1-i)`` and
    ``N(k,n) = n^2 sum_{i=k-1}^{n-1} N(k-1,i) C(n-1,i) p^i (1-p)^(n-1-i)``.
    """
    if k < 2:
        raise ValueError("nesting is defined for k >= 2")
    p = as_probability(p)
    q = 1 - p
    memo: dict[tuple[int, int], Fraction] = {}

    def weight(m: int, i: int) -> Fraction:
        return comb(m - 1, i) * p**i * q ** (m - 1 - i)

    def N(kk: int, m: int) -> Fraction:
        key = (kk, m)
        if key in memo:
            return memo[key]
        if kk == 2:
            val = m * m * sum((i * i * weight(m, i) for i in range(1, m)), Fraction(0))
        else:
            val = m * m * sum((N(kk - 1, i) * weight(m, i) for i in range(kk - 1, m)), Fraction(0))
        memo[key] = val
        return val

    return N(k, n)


def predicted_clique_work(n: int, k: int) -> int:
    """Upper bound on backtracking nodes: ``sum_{d<=k} C(n, d)``."""
    return sum(comb(n, d) for d in range(k + 1))


def predicted_cover_work(n: int, k: int) -> int:
    """Upper bound on canonical cover-extension leaves: ``prod_i C(n - ik - 1, k - 1)``."""
    out = 1
    for i in range(n // k):
        out *= max(1, comb(n - i * k - 1, k - 1))
    return out
