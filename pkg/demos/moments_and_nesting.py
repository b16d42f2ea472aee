"""
Exact moments, nesting values and critical ratios
=================================================

Everything here is an exact rational. Each closed form is printed next to
the brute-force sum it replaces.
"""

from fractions import Fraction

from rgcount import analytic, oracles
from rgcount.estimators import ordered_estimates_gnp

p = Fraction(1, 2)

# k-th moment of a Bin(n, p) variable
for k in range(1, 5):
    closed = analytic.binomial_moment_closed(10, k, p)
    brute = oracles.binomial_moment_bruteforce(10, k, p)
    print(f"E[X^{k}] = {closed}  (brute force {brute})")

# the polynomials f_{k,j}, printed as exponent:coefficient
for j in range(3, 6):
    print(f"f_(3,{j}) =", analytic.f_polynomial(3, j))

# the nesting value is the model-averaged second moment of the ordered estimator
print("N(3, 8, 1/2) =", analytic.nesting_closed(3, 8, p))
print("recursive    =", oracles.nesting_bruteforce(3, 8, p))

# critical ratio of averages grows slowly with n for fixed k
for n in (10, 20, 40, 80):
    print(f"crr(k=3, n={n}) = {float(analytic.crr_clique(3, n, p)):.4f}")

# a Monte Carlo check of the second moment
x = ordered_estimates_gnp(10, 3, p, 50_000, seed=0)
print("empirical E[X^2] =", (x * x).mean(), " exact =", float(analytic.nesting_closed(3, 10, p)))
