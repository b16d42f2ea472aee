"""Exact moment algebra for the clique and clique-cover estimators on G(n, p).

Everything that is an identity is computed in exact integer/rational
arithmetic; ``p`` may be given as an int, a :class:`~fractions.Fraction`, a
string such as ``"1/2"``, or a float (interpreted through its decimal repr).
Only the diagnostic bound functions :func:`h_bound` and :func:`g_exponent`
return floats.

Notation used throughout:

* ``(n)_j`` is the falling factorial ``n (n-1) ... (n-j+1)``.
* ``N(k, l, p)`` is the k-nesting: the second moment of the ordered clique
  estimator ``X_0 X_1 ... X_{k-1}``, averaged over both the coin tosses and
  the graph ``G(l, p)``.
* ``f_{k,j}(p)`` are the integer polynomials with
  ``N(k, l, p) = sum_{j=k}^{2k-1} l (l)_j f_{k,j}(p)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb

from .polynomial import PPolynomial

__all__ = [
    "AnalyticContext",
    "UndefinedRatioError",
    "as_probability",
    "falling_factorial",
    "stirling_table",
    "stirling_closed",
    "binomial_moment_closed",
    "factorial_moment_sides",
    "factorial_moment_identity_check",
    "f_polynomial",
    "f_polynomial_second_closed",
    "nesting_closed",
    "ordered_clique_mean",
    "crr_clique",
    "crr_terms",
    "crr_cover_step",
    "crr_cover_total",
    "cover_step_constant",
    "h_bound",
    "f_upper_bound",
    "f_upper_bound_check",
    "g_exponent",
    "g_stationary_point",
]


class UndefinedRatioError(ValueError):
    """The critical ratio has a zero denominator (no expected embeddings)."""


def as_probability(p) -> Fraction:
    if isinstance(p, float):
        p = Fraction(repr(p))
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return p


def falling_factorial(n: int, j: int) -> int:
    """``(n)_j``; zero when ``j > n`` (for integer ``n >= 0``) and one when ``j == 0``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    out = 1
    for t in range(j):
        out *= n - t
        if out == 0:
            return 0
    return out


class AnalyticContext:
    """Memo tables for Stirling numbers, f-polynomials and nesting values.

    A context owns all of its caches; distinct contexts share nothing, and a
    context that is no longer being filled can be read from several threads.
    ``p`` optionally binds a default edge probability for the ``p``-dependent
    methods.
    """

    def __init__(self, p=None):
        self.p = None if p is None else as_probability(p)
        self._stirling: list[list[int]] = [[1, 0]]
        self._fpoly: dict[tuple[int, int], PPolynomial] = {}
        self._nesting: dict[tuple[int, int, Fraction], Fraction] = {}

    def _p(self, p) -> Fraction:
        if p is None:
            if self.p is None:
                raise ValueError("no edge probability given and none bound to the context")
            return self.p
        return as_probability(p)

    # -- Stirling numbers of the second kind --------------------------------

    def stirling_row(self, k: int) -> list[int]:
        """``[S(k,0), S(k,1), ..., S(k,k+1)]`` grown by ``S(k+1,j) = j S(k,j) + S(k,j-1)``."""
        rows = self._stirling
        while len(rows) <= k:
            prev = rows[-1]
            kk = len(rows)
            row = [0] * (kk + 2)
            for j in range(1, kk + 1):
                row[j] = j * prev[j] + prev[j - 1]
            rows.append(row)
        return rows[k]

    def stirling(self, k: int, j: int) -> int:
        if k < 0:
            raise ValueError("k must be non-negative")
        if j < 0 or j > k:
            return 0
        return self.stirling_row(k)[j]

    # -- f-polynomials -----------------------------------------------------------

    def f_polynomial(self, k: int, j: int) -> PPolynomial:
        if k < 2:
            raise ValueError("f-polynomials are defined for k >= 2")
        if j < k or j > 2 * k - 1:
            return PPolynomial()
        key = (k, j)
        hit = self._fpoly.get(key)
        if hit is not None:
            return hit
        if k == 2:
            poly = PPolynomial.monomial(1) if j == 2 else PPolynomial.monomial(2)
        else:
            inner = self.f_polynomial(k - 1, j - 1) * (j - 1) + self.f_polynomial(k - 1, j - 2)
            poly = inner.shift(j - 1)
        self._fpoly[key] = poly
        return poly

    # -- nesting and critical ratios -----------------------------------------

    def nesting(self, k: int, l: int, p=None) -> Fraction:
        p = self._p(p)
        key = (k, l, p)
        hit = self._nesting.get(key)
        if hit is None:
            hit = sum(
                (l * falling_factorial(l, j) * self.f_polynomial(k, j)(p) for j in range(k, 2 * k)),
                Fraction(0),
            )
            self._nesting[key] = hit
        return hit

    def crr_clique(self, k: int, n: int, p=None) -> Fraction:
        p = self._p(p)
        mean = ordered_clique_mean(k, n, p)
        if mean == 0:
            raise UndefinedRatioError(f"no expected {k}-cliques in G({n}, {p})")
        return self.nesting(k, n, p) / mean**2

    def crr_terms(self, k: int, l: int, p=None) -> list[Fraction]:
        """Per-``i`` summands ``l (l)_{2k-i-1} f_{k,2k-i-1}(p) / ((l)_k p^C(k,2))^2``, ``i = 0..k-1``."""
        p = self._p(p)
        mean = ordered_clique_mean(k, l, p)
        if mean == 0:
            raise UndefinedRatioError(f"no expected {k}-cliques in G({l}, {p})")
        return [
            l * falling_factorial(l, 2 * k - i - 1) * self.f_polynomial(k, 2 * k - i - 1)(p) / mean**2
            for i in range(k)
        ]

    def crr_cover_step(self, k: int, l: int, p=None, *, literal: bool = False) -> Fraction:
        """Critical ratio of averages for embedding one k-clique into a residual ``G(l, p)``.

        With ``literal=True`` the denominator uses residual size ``l - k``
        instead of ``l``, reproducing a printed variant of this ratio whose
        numerator and denominator refer to different residual graphs.
        """
        p = self._p(p)
        denom_size = l - k if literal else l
        mean = ordered_clique_mean(k, denom_size, p)
        if mean == 0:
            raise UndefinedRatioError(f"no expected {k}-cliques in G({denom_size}, {p})")
        return self.nesting(k, l, p) / mean**2

    def crr_cover_total(self, k: int, n: int, p=None, *, literal: bool = False) -> Fraction:
        if k <= 0 or n % k:
            raise ValueError(f"k={k} must divide n={n}")
        out = Fraction(1)
        for i in range(1, n // k + 1):
            out *= self.crr_cover_step(k, n - k * (i - 1), p, literal=literal)
        return out


def _ctx(ctx: AnalyticContext | None) -> AnalyticContext:
    return ctx if ctx is not None else AnalyticContext()


def stirling_table(k_max: int, ctx: AnalyticContext | None = None) -> list[list[int]]:
    """Rows ``0..k_max`` of the recurrence table; row ``k`` has entries for ``j = 0..k+1``."""
    c = _ctx(ctx)
    c.stirling_row(k_max)
    return [list(r) for r in c._stirling[: k_max + 1]]


def stirling_closed(k: int, j: int) -> int:
    """Inclusion-exclusion form ``(1/j!) sum_i (-1)^i C(j,i) (j-i)^k``."""
    if not 1 <= j <= k:
        raise ValueError(f"need 1 <= j <= k, got k={k}, j={j}")
    total = sum((-1) ** i * comb(j, i) * (j - i) ** k for i in range(j + 1))
    q, r = divmod(total, math.factorial(j))
    assert r == 0
    return q


def binomial_moment_closed(n: int, k: int, p, ctx: AnalyticContext | None = None) -> Fraction:
    """``E[X^k]`` for ``X ~ Binomial(n, p)`` as ``sum_j S(k,j) p^j (n)_j``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    p = as_probability(p)
    c = _ctx(ctx)
    return sum((c.stirling(k, j) * p**j * falling_factorial(n, j) for j in range(1, k + 1)), Fraction(0))


def factorial_moment_sides(n: int, j: int, p) -> tuple[Fraction, Fraction]:
    """Both sides of ``sum_m m (m)_j C(n,m) p^m (1-p)^(n-m) = j (n)_j p^j + (n)_{j+1} p^(j+1)``."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got n={n}, j={j}")
    p = as_probability(p)
    q = 1 - p
    lhs = sum(
        (m * falling_factorial(m, j) * comb(n, m) * p**m * q ** (n - m) for m in range(j, n + 1)),
        Fraction(0),
    )
    rhs = j * falling_factorial(n, j) * p**j + falling_factorial(n, j + 1) * p ** (j + 1)
    return lhs, rhs


def factorial_moment_identity_check(n: int, j: int, p) -> bool:
    lhs, rhs = factorial_moment_sides(n, j, p)
    return lhs == rhs


def f_polynomial(k: int, j: int, ctx: AnalyticContext | None = None) -> PPolynomial:
    """``f_{k,j}``; the zero polynomial outside ``k <= j <= 2k-1``."""
    return _ctx(ctx).f_polynomial(k, j)


def f_polynomial_second_closed(k: int) -> PPolynomial:
    """Closed form of ``f_{k,2k-2}``: ``sum_{m=1}^{k-1} (2(k-m)-1) p^(k(k-1)-m)``."""
    return PPolynomial({k * (k - 1) - m: 2 * (k - m) - 1 for m in range(1, k)})


def nesting_closed(k: int, l: int, p, ctx: AnalyticContext | None = None) -> Fraction:
    if k < 2:
        raise ValueError("nesting is defined for k >= 2")
    if l < 0:
        raise ValueError("l must be non-negative")
    return _ctx(ctx).nesting(k, l, p)


def ordered_clique_mean(k: int, n: int, p) -> Fraction:
    """Expected number of ordered k-cliques in ``G(n, p)``: ``(n)_k p^C(k,2)``."""
    return falling_factorial(n, k) * as_probability(p) ** comb(k, 2)


def crr_clique(k: int, n: int, p, ctx: AnalyticContext | None = None) -> Fraction:
    """``N(k,n,p) / ((n)_k p^C(k,2))^2``."""
    if k > n:
        raise UndefinedRatioError(f"k={k} exceeds n={n}")
    return _ctx(ctx).crr_clique(k, n, p)


def crr_terms(k: int, l: int, p, ctx: AnalyticContext | None = None) -> list[Fraction]:
    return _ctx(ctx).crr_terms(k, l, p)


def crr_cover_step(k: int, l: int, p, *, literal: bool = False, ctx: AnalyticContext | None = None) -> Fraction:
    return _ctx(ctx).crr_cover_step(k, l, p, literal=literal)


def crr_cover_total(k: int, n: int, p, *, literal: bool = False, ctx: AnalyticContext | None = None) -> Fraction:
    """Product of the per-clique ratios over residual sizes ``n, n-k, ..., k``."""
    return _ctx(ctx).crr_cover_total(k, n, p, literal=literal)


def cover_step_constant(k: int, l: int, p, ctx: AnalyticContext | None = None) -> Fraction:
    """The ``C`` for which ``crr_cover_step(k, l, p) == 1 + C / (l - k + 1)`` holds exactly at ``l``."""
    return (_ctx(ctx).crr_cover_step(k, l, p) - 1) * (l - k + 1)


def h_bound(k: int, i: int, l: int, p) -> float:
    """``((l-k)/(l-1))^(k-i-1) * (k^2/(l-k+1) * (1/p)^(k-(i+1)/2))^i``."""
    if k < 2 or not 0 <= i <= k - 1:
        raise ValueError(f"need k >= 2 and 0 <= i <= k-1, got k={k}, i={i}")
    p = float(p)
    first = ((l - k) / (l - 1)) ** (k - i - 1)
    if i == 0:
        return first
    return first * (k * k / (l - k + 1) * (1 / p) ** (k - (i + 1) / 2)) ** i


def f_upper_bound(k: int, i: int, p) -> Fraction:
    """``k^(2i) p^(C(k,2) + C(k-i,2))``."""
    return k ** (2 * i) * as_probability(p) ** (comb(k, 2) + comb(k - i, 2))


def f_upper_bound_check(k: int, i: int, p, ctx: AnalyticContext | None = None) -> bool:
    """Whether ``f_{k,2k-i-1}(p) <= k^(2i) p^(C(k,2) + C(k-i,2))`` holds exactly."""
    if k < 2 or not 0 <= i <= k - 1:
        raise ValueError(f"need k >= 2 and 0 <= i <= k-1, got k={k}, i={i}")
    p = as_probability(p)
    return _ctx(ctx).f_polynomial(k, 2 * k - i - 1)(p) <= f_upper_bound(k, i, p)


def _log_base(x: float, p: float) -> float:
    return math.log(x) / math.log(1 / p)


def g_exponent(n: float, i: float, eps_n: float, p) -> float:
    """Exponent ``g(i)`` with ``h(i) = (1/p)^g(i)`` for ``k = (1 + eps_n) log_{1/p} n``.

    ``g(i) = 2i log_{1/p} k - i log_{1/p}(n-k+1) + k i - i(i+1)/2``.
    """
    p = float(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    k = (1 + eps_n) * _log_base(n, p)
    return 2 * i * _log_base(k, p) - i * _log_base(n - k + 1, p) + k * i - i * (i + 1) / 2


def g_stationary_point(n: float, eps_n: float, p) -> float:
    """Approximate maximiser ``2 log_{1/p} log_{1/p} n + eps_n log_{1/p} n`` of :func:`g_exponent`."""
    p = float(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    lg = _log_base(n, p)
    return 2 * _log_base(lg, p) + eps_n * lg
