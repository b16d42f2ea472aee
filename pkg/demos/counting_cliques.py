"""
Estimating clique counts on a random graph
==========================================

Sample a graph, count its triangles exactly, then estimate the same count
with the sequential-embedding estimator and compare.
"""

from fractions import Fraction

from rgcount import GenSpec, SampleConfig, count_cliques_exact, estimate, generate_gnp

# a G(12, 1/2) graph; the seed fixes it completely
g = generate_gnp(GenSpec(12, Fraction(1, 2), seed=3))
print(f"n={g.n}, edges={g.edge_count}")

truth = count_cliques_exact(g, 3)
print("exact triangles:", truth)

# rho is derived from the model's critical ratio because p is passed in
cfg = SampleConfig(epsilon=0.1, delta=0.1)
for seed in range(5):
    r = estimate(g, 3, "cliques", cfg, seed=seed, p=Fraction(1, 2))
    print(f"seed {seed}: {float(r.estimate):8.3f}  ({r.samples} samples, {r.zeros} zeros)")

# independent sets are cliques of the complement
r = estimate(g, 3, "independent-sets", cfg, seed=0, p=Fraction(1, 2))
print("independent triples, estimated:", round(float(r.estimate), 2))
print("independent triples, exact:    ", count_cliques_exact(g.complement(), 3))

# the estimate lives in log space, so large k on large graphs is fine
big = generate_gnp(GenSpec(300, Fraction(9, 10), seed=1))
r = estimate(big, 25, "cliques", SampleConfig(0.5, 0.5, rho=2), seed=0)
print("25-cliques in G(300, 9/10): about", r.estimate)
