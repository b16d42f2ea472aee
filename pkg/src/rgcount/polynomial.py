"""Sparse integer-coefficient polynomials in a single variable (the edge probability)."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from numbers import Rational


class PPolynomial:
    """Polynomial ``sum c_e * p**e`` stored as ``{e: c}`` with no zero entries.

    Coefficients are Python ints, so arithmetic is exact at any size.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if c:
                clean[int(e)] = int(c)
        self._terms = clean

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> PPolynomial:
        return cls({exponent: coefficient})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return max(self._terms, default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def __add__(self, other: PPolynomial) -> PPolynomial:
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return PPolynomial(out)

    def __mul__(self, other: PPolynomial | int) -> PPolynomial:
        if isinstance(other, int):
            return PPolynomial({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return PPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> PPolynomial:
        """Multiply by ``p**k``."""
        return PPolynomial({e + k: c for e, c in self._terms.items()})

    def __call__(self, p):
        """Evaluate at ``p``; exact for ints and Fractions."""
        if isinstance(p, Rational):
            p = Fraction(p)
        return sum((c * p**e for e, c in self._terms.items()), Fraction(0) if isinstance(p, Fraction) else 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, PPolynomial):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"PPolynomial({dict(sorted(self._terms.items(), reverse=True))})"

    def __str__(self) -> str:
        """``exponent:coefficient`` pairs, highest exponent first; ``0`` for the zero polynomial."""
        if not self._terms:
            return "0"
        return " ".join(f"{e}:{c}" for e, c in sorted(self._terms.items(), reverse=True))
