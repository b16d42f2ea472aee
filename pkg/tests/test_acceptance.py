"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` (the lines are printed
even without ``-s``; they bypass output capture).
"""

import math
import time
from fractions import Fraction as F

import pytest

from rgcount.analytic import (
    binomial_moment_closed,
    cover_step_constant,
    crr_cover_step,
    f_polynomial,
    f_upper_bound,
    factorial_moment_sides,
    nesting_closed,
    stirling_closed,
    stirling_table,
)
from rgcount.estimators import SampleConfig, estimate, exact_expectation, ordered_estimates_gnp
from rgcount.graph import GenSpec, Graph, generate_gnp
from rgcount.oracles import (
    binomial_moment_bruteforce,
    count_clique_covers_exact,
    count_cliques_exact,
    nesting_bruteforce,
)

THIRD, HALF = F(1, 3), F(1, 2)


@pytest.fixture
def report(capsys):
    """Return ``record(number, ok, budget_s, detail)``; prints the line and asserts."""
    start = time.perf_counter()

    def record(number: int, ok: bool, budget: float, detail: str) -> None:
        elapsed = time.perf_counter() - start
        in_time = elapsed < budget
        verdict = "PASS" if ok and in_time else "FAIL"
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {verdict}  {detail}  ({elapsed:.2f}s, budget {budget:g}s)")
        assert ok, detail
        assert in_time, f"took {elapsed:.2f}s, budget {budget}s"

    return record


def test_criterion_01_moment_identity(report):
    bad = [
        (n, k, p)
        for p in (THIRD, HALF, F(9, 10))
        for n in range(0, 31)
        for k in range(1, 9)
        if binomial_moment_closed(n, k, p) != binomial_moment_bruteforce(n, k, p)
    ]
    report(1, not bad, 10, f"binomial moment closed form vs defining sum, {31 * 8 * 3} cases, mismatches={bad[:3]}")


def test_criterion_02_nesting_equivalence(report):
    bad = [
        (k, n, p)
        for p in (THIRD, HALF)
        for k in range(2, 6)
        for n in range(0, 26)
        if nesting_bruteforce(k, n, p) != nesting_closed(k, n, p)
    ]
    report(2, not bad, 30, f"nesting recursion vs f-polynomial sum, mismatches={bad[:3]}")


def test_criterion_03_factorial_moment_identity(report):
    bad = []
    for p in (THIRD, HALF):
        for n in range(0, 26):
            for j in range(0, n + 1):
                lhs, rhs = factorial_moment_sides(n, j, p)
                if lhs != rhs:
                    bad.append((n, j, p))
    report(3, not bad, 5, f"factorial-moment identity for 0<=j<=n<=25, mismatches={bad[:3]}")


def test_criterion_04_exhaustive_unbiasedness(report):
    bad, checked = [], 0
    for seed in range(20):
        n = 6 + seed % 5
        g = generate_gnp(GenSpec(n, HALF if seed % 2 else F(3, 4), 1000 + seed))
        for k in range(1, 5):
            checked += 1
            if exact_expectation(g, k, "cliques") != count_cliques_exact(g, k):
                bad.append(("cliques", seed, k))
    for seed in range(20):
        n = 4 if seed % 4 == 0 else 8
        g = generate_gnp(GenSpec(n, F(3, 4), 2000 + seed))
        for k in (2, 4):
            checked += 1
            if exact_expectation(g, k, "covers") != count_clique_covers_exact(g, k):
                bad.append(("covers", seed, k))
    report(4, not bad, 120, f"exact path expectation == oracle on {checked} (graph, k) pairs, mismatches={bad[:3]}")


def test_criterion_05_complete_graphs(report):
    cfg = SampleConfig(0.9, 0.9, 1)
    bad = []
    for n in range(1, 13):
        for k in range(1, n + 1):
            r = estimate(Graph.complete(n), k, "cliques", cfg, seed=n * 100 + k, exact=True)
            if r.estimate.exact != math.comb(n, k):
                bad.append(("cliques", n, k))
    for m in range(1, 6):
        r = estimate(Graph.complete(2 * m), 2, "covers", cfg, seed=m, exact=True)
        if r.estimate.exact != math.prod(range(1, 2 * m, 2)):
            bad.append(("covers", 2 * m, 2))
    report(5, not bad, 1, f"C(n,k) on K_n and (2m-1)!! matchings, mismatches={bad[:3]}")


def test_criterion_06_second_moment_law(report):
    count = 100_000
    worst, bad = 0.0, []
    for i, (n, k, p) in enumerate((n, k, p) for n in (8, 10, 12) for k in (2, 3) for p in (HALF, F(3, 4))):
        x = ordered_estimates_gnp(n, k, p, count, seed=600 + i)
        sq = x * x
        se = sq.std(ddof=1) / math.sqrt(sq.size)
        z = abs(sq.mean() - float(nesting_closed(k, n, p))) / se
        worst = max(worst, z)
        if not z <= 5:
            bad.append((n, k, str(p), round(z, 2)))
    report(6, not bad, 300, f"12 cells x {count} samples, max |z|={worst:.2f}, failures={bad}")


def test_criterion_07_f_polynomial_bounds(report):
    bad = []
    for p in (F(1, 4), HALF, F(3, 4)):
        for k in range(2, 11):
            for i in range(k):
                value, bound = f_polynomial(k, 2 * k - i - 1)(p), f_upper_bound(k, i, p)
                if value > bound or (i == 0 and value != bound):
                    bad.append((k, i, str(p)))
    report(7, not bad, 5, f"f_(k,2k-i-1)(p) <= k^2i p^(C(k,2)+C(k-i,2)), equality at i=0, failures={bad[:3]}")


def test_criterion_08_cover_step_shape(report):
    failures = {}
    for k in (2, 3, 4):
        for p in (HALF, F(3, 4)):
            c = cover_step_constant(k, 50, p)
            over = [l for l in range(50, 501) if crr_cover_step(k, l, p) > 1 + c / (l - k + 1)]
            if over:
                failures[(k, str(p))] = (len(over), float(c))
    detail = "; ".join(f"k={k} p={p}: {n} of 451 l exceed, C={c:.4f}" for (k, p), (n, c) in failures.items())
    report(8, not failures, 10, f"step <= 1 + C/(l-k+1) with C fitted at l=50. {detail or 'no violations'}")


def test_criterion_09_end_to_end(report):
    g = generate_gnp(GenSpec(12, HALF, 3))
    truth = count_cliques_exact(g, 3)
    cfg = SampleConfig(0.1, 0.1)
    hits = 0
    for seed in range(50):
        r = estimate(g, 3, "cliques", cfg, seed=seed, p=HALF)
        hits += abs(float(r.estimate) / truth - 1) <= 0.1
    report(9, hits >= 45, 120, f"{hits}/50 driver seeds within 10% of {truth} triangles")


def test_criterion_10_stirling(report):
    table = stirling_table(20)
    bad = [(k, j) for k in range(1, 21) for j in range(1, k + 1) if table[k][j] != stirling_closed(k, j)]
    ends = all(table[k][1] == table[k][k] == 1 for k in range(1, 21))
    report(10, not bad and ends, 1, f"recurrence vs closed form for 1<=j<=k<=20, mismatches={bad[:3]}, ends ok={ends}")
