"""
Exact rational enclosures for real-valued bound expressions.

Every Interval [lo, hi] holds the true real value. Powers with rational
exponents go through integer n-th roots on numbers scaled by 2^bits, and
base-2 logarithms through the binary exponent plus a padded float mantissa
term. A bound check then compares exact rationals only:

    lhs <= rhs   is certain when lhs <= rhs.lo
    lhs >= rhs   is certain when lhs >= rhs.hi
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from sympy import integer_nthroot

DEFAULT_BITS = 96
DEFAULT_LOG_PADDING_BITS = 40

Number = Union[int, Fraction, 'Interval']


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Union[int, Fraction]) -> 'Interval':
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other: Number) -> 'Interval':
        other = as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> 'Interval':
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Number) -> 'Interval':
        return self + (-as_interval(other))

    def __rsub__(self, other: Number) -> 'Interval':
        return as_interval(other) - self

    def __mul__(self, other: Number) -> 'Interval':
        other = as_interval(other)
        corners = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(corners), max(corners))

    __rmul__ = __mul__

    def reciprocal(self) -> 'Interval':
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval [{self.lo}, {self.hi}] contains 0")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: Number) -> 'Interval':
        return self * as_interval(other).reciprocal()

    def __rtruediv__(self, other: Number) -> 'Interval':
        return as_interval(other) * self.reciprocal()

    def __pow__(self, exponent: Union[int, Fraction]) -> 'Interval':
        return self.power(exponent)

    def power(self, exponent: Union[int, Fraction], bits: int = DEFAULT_BITS) -> 'Interval':
        """x^e for a positive interval (or any interval when e is a nonnegative integer)."""
        e = Fraction(exponent)
        if e.denominator == 1 and e >= 0:
            n = e.numerator
            if self.lo >= 0:
                return Interval(self.lo ** n, self.hi ** n)
            if n % 2 == 0:
                top = max(self.lo ** n, self.hi ** n)
                return Interval(Fraction(0) if self.hi >= 0 else min(self.lo ** n, self.hi ** n), top)
            return Interval(self.lo ** n, self.hi ** n)
        if self.lo <= 0:
            raise ValueError("fractional and negative powers need a positive base")
        if e < 0:
            return self.power(-e, bits).reciprocal()
        lo, _ = root_bounds(self.lo ** e.numerator, e.denominator, bits)
        _, hi = root_bounds(self.hi ** e.numerator, e.denominator, bits)
        return Interval(lo, hi)

    def __float__(self) -> float:
        try:
            return float((self.lo + self.hi) / 2)
        except OverflowError:
            return math.inf if self.hi > 0 else -math.inf

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def as_interval(x: Number) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def root_bounds(x: Fraction, b: int, bits: int = DEFAULT_BITS) -> Tuple[Fraction, Fraction]:
    """(L, U) with L <= x^{1/b} <= U, both multiples of 2^-bits."""
    if x < 0:
        raise ValueError("roots of negative numbers are not taken")
    if b == 1:
        return x, x
    scaled = x * Fraction(2) ** (bits * b)
    floor_n = scaled.numerator // scaled.denominator
    ceil_n = -(-scaled.numerator // scaled.denominator)

    low, _ = integer_nthroot(floor_n, b)
    high, exact = integer_nthroot(ceil_n, b)
    if not exact:
        high += 1
    scale = 2 ** bits
    return Fraction(int(low), scale), Fraction(int(high), scale)


def rational_power(x: Union[int, Fraction], exponent: Union[int, Fraction], bits: int = DEFAULT_BITS) -> Interval:
    return Interval.point(x).power(exponent, bits)


def _log2_integer(n: int, padding: Fraction) -> Interval:
    e = n.bit_length() - 1
    if n == 1 << e:
        return Interval.point(e)
    # float mantissa in [1, 2) from the top 53 bits
    top = n >> (e - 52) if e > 52 else n << (52 - e)
    f = Fraction(math.log2(top / 2.0 ** 52))
    return Interval(max(Fraction(e), e + f - padding), min(Fraction(e + 1), e + f + padding))


def log2_interval(x: Union[int, Fraction], padding_bits: int = DEFAULT_LOG_PADDING_BITS) -> Interval:
    """Enclosure of log2(x) for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"log2 needs a positive argument, got {x}")
    padding = Fraction(1, 2 ** padding_bits)
    return _log2_integer(x.numerator, padding) - _log2_integer(x.denominator, padding)


def certainly_le(lhs: Number, rhs: Number) -> bool:
    return as_interval(lhs).hi <= as_interval(rhs).lo


def certainly_ge(lhs: Number, rhs: Number) -> bool:
    return as_interval(lhs).lo >= as_interval(rhs).hi


def minimal_constant(holds: Callable[[Fraction], bool], low_exp: int = -40, high_exp: int = 40,
                     refine: int = 24) -> Optional[Fraction]:
    """
    Least C in [2^low_exp, 2^high_exp] (to `refine` bits) with holds(C),
    for a predicate monotone in C. None when even 2^high_exp fails.
    """
    if holds(Fraction(2) ** low_exp):
        return Fraction(2) ** low_exp
    if not holds(Fraction(2) ** high_exp):
        return None

    lo, hi = low_exp, high_exp
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if holds(Fraction(2) ** mid):
            hi = mid
        else:
            lo = mid

    failing, passing = Fraction(2) ** lo, Fraction(2) ** hi
    for _ in range(refine):
        mid = (failing + passing) / 2
        if holds(mid):
            passing = mid
        else:
            failing = mid
    return passing
