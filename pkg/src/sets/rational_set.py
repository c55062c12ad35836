import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, Tuple

from ..errors import EmptyDenominator, NotInjectiveOnA, OutsidePhiDomain, TooSmall
from ..types import SetOp


@dataclass(frozen=True)
class RationalSet:
    """A finite set of exact rationals, sorted, each in lowest terms."""
    members: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        previous = None
        for x in self.members:
            if not isinstance(x, Fraction):
                raise TypeError(f"members must be Fractions, got {type(x).__name__}")
            if previous is not None and not previous < x:
                raise ValueError("members must be strictly increasing")
            previous = x

    @classmethod
    def of(cls, values: Iterable) -> 'RationalSet':
        return cls(tuple(sorted({Fraction(v) for v in values})))

    @classmethod
    def interval(cls, n: int) -> 'RationalSet':
        """{1, ..., n}"""
        return cls(tuple(Fraction(i) for i in range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return Fraction(x) in self.lookup

    @cached_property
    def lookup(self) -> FrozenSet[Fraction]:
        return frozenset(self.members)

    def nonzero(self) -> 'RationalSet':
        return RationalSet(tuple(x for x in self.members if x))

    def issubset(self, other: 'RationalSet') -> bool:
        return self.lookup <= other.lookup

    def to_json(self) -> Dict[str, object]:
        return {"ambient": "exact_rational", "members": [format_rational(x) for x in self.members]}

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.members)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def combine_rational(A: RationalSet, B: RationalSet, op: SetOp) -> RationalSet:
    """{a op b} over Q; the quotient skips b = 0."""
    op = SetOp(op)
    if op == SetOp.QUOTIENT:
        denominators = B.nonzero()
        if len(B) and not len(denominators):
            raise EmptyDenominator("quotient set with B = {0}")
        inverses = [1 / b for b in denominators]
        return RationalSet.of(a * b for a in A for b in inverses)
    if op == SetOp.SUM:
        return RationalSet.of(a + b for a in A for b in B)
    if op == SetOp.DIFFERENCE:
        return RationalSet.of(a - b for a in A for b in B)
    return RationalSet.of(a * b for a in A for b in B)


def iterated_sum(A: RationalSet, m: int) -> RationalSet:
    """mA = A + ... + A (m copies); m = 0 gives {0}."""
    result = RationalSet((Fraction(0),))
    for _ in range(m):
        result = combine_rational(result, A, SetOp.SUM)
    return result


def ratio_set_rational(A: RationalSet) -> RationalSet:
    """R[A] = {(a1 - a) / (a2 - a) : a2 != a} over Q."""
    if len(A) < 2:
        raise TooSmall(f"R[A] needs |A| >= 2, got {len(A)}")
    values = set()
    for a in A:
        shifted = [x - a for x in A]
        for d in shifted:
            if d:
                values.update(s / d for s in shifted)
    return RationalSet(tuple(sorted(values)))


def four_variable_set(A: RationalSet, B: RationalSet, C: RationalSet, D: RationalSet) -> RationalSet:
    """{(y - x) w / (z - x) : x in A, y in B, z in C, w in D, x != z}."""
    ratios = set()
    for x in A:
        for z in C:
            if z == x:
                continue
            inverse = 1 / (z - x)
            ratios.update((y - x) * inverse for y in B)
    return RationalSet.of(r * w for r in ratios for w in D)


# =============================================================================
# EXPANDER
# =============================================================================

def _x_plus_inverse(x: Fraction) -> Fraction:
    if x <= 0:
        raise OutsidePhiDomain(f"x + 1/x is only taken on positive inputs, got {x}")
    return x + 1 / x


PHI_CATALOG: Dict[str, Callable[[Fraction], Fraction]] = {
    "identity": lambda x: x,
    "cube": lambda x: x ** 3,
    "x_plus_inverse": _x_plus_inverse,
}


@dataclass(frozen=True)
class ExpanderStatistic:
    size_r: int
    size_r_phi_a: int
    exponent: float

    def to_json(self) -> Dict[str, object]:
        return {"sizeR": self.size_r, "sizeRphiA": self.size_r_phi_a, "exponent": self.exponent}


def apply_phi(A: RationalSet, phi: str) -> RationalSet:
    """phi(A), refusing maps that collide on A."""
    try:
        fn = PHI_CATALOG[phi]
    except KeyError:
        raise ValueError(f"unknown phi '{phi}', expected one of {sorted(PHI_CATALOG)}") from None
    image = [fn(a) for a in A]
    if len(set(image)) != len(A):
        raise NotInjectiveOnA(f"{phi} is not injective on the given set")
    return RationalSet.of(image)


def expander_statistic(A: RationalSet, phi: str = "identity") -> ExpanderStatistic:
    if len(A) < 3:
        raise TooSmall(f"expander statistic needs |A| >= 3, got {len(A)}")
    image = apply_phi(A, phi)
    R = ratio_set_rational(A)
    product = combine_rational(R, image, SetOp.PRODUCT)
    return ExpanderStatistic(
        size_r=len(R),
        size_r_phi_a=len(product),
        exponent=math.log(len(product)) / math.log(len(A)),
    )
