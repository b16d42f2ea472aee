"""Non-negative reals carried as natural logarithms, with an optional exact shadow.

Estimator outputs reach magnitudes around ``n**k`` with ``k ~ log n``; a
``ScaledValue`` keeps them finite. When every input is exact (a Python int
or :class:`~fractions.Fraction`), the exact value rides along and all
arithmetic on it is exact as well.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["ScaledValue", "ZERO"]

_LOG10 = math.log(10)


@dataclass(frozen=True)
class ScaledValue:
    log: float
    exact: Fraction | None = None

    def __post_init__(self):
        if math.isnan(self.log) or self.log == math.inf:
            raise ValueError(f"invalid log magnitude {self.log}")
        if self.log == -math.inf and self.exact is None:
            object.__setattr__(self, "exact", Fraction(0))
        if self.exact is not None:
            if self.exact < 0:
                raise ValueError("ScaledValue represents non-negative values only")
            if (self.exact == 0) != (self.log == -math.inf):
                raise ValueError("exact shadow disagrees with log magnitude on zero-ness")

    @classmethod
    def of(cls, x) -> ScaledValue:
        """Exact value from an int or Fraction (floats are taken as inexact)."""
        if isinstance(x, float):
            if x < 0:
                raise ValueError("ScaledValue represents non-negative values only")
            return cls(math.log(x)) if x > 0 else ZERO
        x = Fraction(x)
        if x < 0:
            raise ValueError("ScaledValue represents non-negative values only")
        if x == 0:
            return ZERO
        return cls(math.log(x.numerator) - math.log(x.denominator), x)

    @classmethod
    def from_log(cls, log: float) -> ScaledValue:
        return cls(log)

    @property
    def is_zero(self) -> bool:
        return self.log == -math.inf

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def log10(self) -> float:
        return self.log / _LOG10

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return math.exp(self.log)

    def inexact(self) -> ScaledValue:
        """Drop the exact shadow (zero stays exact: it has only one representation)."""
        return ScaledValue(self.log)

    def __mul__(self, other) -> ScaledValue:
        other = _coerce(other)
        exact = self.exact * other.exact if self.exact is not None and other.exact is not None else None
        if self.is_zero or other.is_zero:
            return ZERO
        return ScaledValue(self.log + other.log, exact)

    __rmul__ = __mul__

    def __truediv__(self, other) -> ScaledValue:
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero ScaledValue")
        exact = self.exact / other.exact if self.exact is not None and other.exact is not None else None
        if self.is_zero:
            return ZERO
        return ScaledValue(self.log - other.log, exact)

    def __add__(self, other) -> ScaledValue:
        return ScaledValue.sum((self, _coerce(other)))

    __radd__ = __add__

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if self.exact is not None and other.exact is not None:
            return self.exact < other.exact
        return self.log < other.log

    def __le__(self, other) -> bool:
        other = _coerce(other)
        if self.exact is not None and other.exact is not None:
            return self.exact <= other.exact
        return self.log <= other.log

    @staticmethod
    def sum(values: Iterable[ScaledValue]) -> ScaledValue:
        """Log-sum-exp with a correctly rounded inner sum, so the result is order independent."""
        values = list(values)
        if not values:
            return ZERO
        if all(v.exact is not None for v in values):
            return ScaledValue.of(sum((v.exact for v in values), Fraction(0)))
        top = max(v.log for v in values)
        return ScaledValue(top + math.log(math.fsum(math.exp(v.log - top) for v in values)))

    def __str__(self) -> str:
        if self.exact is not None:
            e = self.exact
            return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
        if self.is_zero:
            return "0"
        return f"10^{self.log10:.6f}"


def _coerce(x) -> ScaledValue:
    return x if isinstance(x, ScaledValue) else ScaledValue.of(x)


ZERO = ScaledValue(-math.inf, Fraction(0))
