import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rgcount.analytic import binomial_moment_closed
from rgcount.graph import GenSpec, Graph, generate_gnp
from rgcount.oracles import (
    binomial_moment_bruteforce,
    clique_polynomial,
    count_clique_covers_exact,
    count_cliques_exact,
    count_independent_sets_exact,
    nesting_bruteforce,
)


def subsets_cliques(g, k):
    return sum(
        1 for s in itertools.combinations(range(g.n), k) if all(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))
    )


def partitions_into_cliques(g, k):
    # independent oracle: all set partitions via recursive first-element blocks,
    # but enumerated with itertools.combinations and no bitsets
    def rec(rest):
        if not rest:
            return 1
        first, others = rest[0], rest[1:]
        total = 0
        for block in itertools.combinations(others, k - 1):
            members = (first,) + block
            if all(g.has_edge(u, v) for u, v in itertools.combinations(members, 2)):
                total += rec([v for v in others if v not in block])
        return total

    return rec(list(range(g.n)))


def test_clique_examples():
    assert count_cliques_exact(Graph.complete(6), 3) == 20
    assert count_cliques_exact(Graph.cycle(5), 3) == 0
    assert count_cliques_exact(Graph.petersen(), 2) == 15


def test_independent_set_examples():
    assert count_independent_sets_exact(Graph.empty(6), 3) == 20
    assert count_independent_sets_exact(Graph.complete(6), 2) == 0
    assert count_independent_sets_exact(Graph.cycle(5), 2) == math.comb(5, 2) - 5


def test_cover_examples():
    assert count_clique_covers_exact(Graph.complete(4), 2) == 3
    assert count_clique_covers_exact(Graph.complete(6), 3) == 10
    assert count_clique_covers_exact(Graph.cycle(6), 2) == 2
    assert count_clique_covers_exact(Graph.path(4), 2) == 1


def test_cover_divisibility():
    with pytest.raises(ValueError):
        count_clique_covers_exact(Graph.complete(5), 2)


@pytest.mark.parametrize("m", range(1, 7))
def test_complete_graph_matchings_double_factorial(m):
    assert count_clique_covers_exact(Graph.complete(2 * m), 2) == math.prod(range(1, 2 * m, 2))


@pytest.mark.parametrize("n", range(0, 9))
def test_complete_graph_cliques(n):
    for k in range(0, n + 2):
        assert count_cliques_exact(Graph.complete(n), k) == math.comb(n, k)


@pytest.mark.parametrize("seed", range(12))
def test_against_subset_enumeration(seed):
    n = 6 + seed % 7
    g = generate_gnp(GenSpec(n, F(1, 2) if seed % 2 else F(2, 3), seed))
    poly = clique_polynomial(g)
    for k in range(0, n + 1):
        c = subsets_cliques(g, k)
        assert count_cliques_exact(g, k) == c
        assert (poly[k] if k < len(poly) else 0) == c
        assert count_independent_sets_exact(g.complement(), k) == c
    x = F(1, 3)
    assert sum(c * x**i for i, c in enumerate(poly)) == sum(subsets_cliques(g, i) * x**i for i in range(n + 1))


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("k", [2, 3])
def test_covers_against_independent_enumeration(seed, k):
    n = 6 if k == 3 else 8
    g = generate_gnp(GenSpec(n, F(3, 4), seed))
    assert count_clique_covers_exact(g, k) == partitions_into_cliques(g, k)


def test_binomial_moment_examples():
    for n in range(10):
        assert binomial_moment_bruteforce(n, 1, F(2, 7)) == n * F(2, 7)
        assert binomial_moment_bruteforce(n, 0, F(2, 7)) == 1
    assert binomial_moment_bruteforce(4, 2, F(1, 2)) == 5


def test_nesting_examples():
    assert nesting_bruteforce(2, 3, F(1, 2)) == F(27, 2)
    for n in range(2, 10):
        assert nesting_bruteforce(2, n, 1) == n**2 * (n - 1) ** 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20), st.integers(1, 6), st.fractions(min_value=0, max_value=1, max_denominator=12))
def test_moment_paths_agree_hypothesis(n, k, p):
    assert binomial_moment_closed(n, k, p) == binomial_moment_bruteforce(n, k, p)
