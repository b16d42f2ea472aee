"""
Clique covers and the per-step critical ratio
=============================================

A k-clique cover splits all vertices into disjoint k-cliques. The estimator
embeds one clique at a time into what is left of the graph.
"""

from fractions import Fraction

from rgcount import Graph, analytic, count_clique_covers_exact, exact_expectation

# perfect matchings of K_6 and of the 6-cycle
print("matchings of K6:", count_clique_covers_exact(Graph.complete(6), 2))
print("matchings of C6:", count_clique_covers_exact(Graph.cycle(6), 2))

# the expectation over every random path of the estimator equals the count
print("estimator expectation on C6:", exact_expectation(Graph.cycle(6), 2, "covers"))

# each step's critical ratio behaves like 1 + C/(l-k+1) for large residual size l
p = Fraction(1, 2)
for l in (10, 50, 100, 200):
    step = analytic.crr_cover_step(3, l, p)
    print(f"l={l:3d}  step crr={float(step):.6f}  (crr-1)(l-k+1)={float(analytic.cover_step_constant(3, l, p)):.4f}")

print("whole cover, n=30:", float(analytic.crr_cover_total(3, 30, p)))
