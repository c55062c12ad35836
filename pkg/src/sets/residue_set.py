from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Tuple

import numpy as np

from ..arithmetic.modular_field import Prime
from ..errors import EmptyDenominator, ModulusMismatch, TooSmall
from ..types import ConvolutionMode, SetOp

# Above this size the dense bitmask is not built
MASK_LIMIT = 1 << 20


@lru_cache(maxsize=256)
def _checked_modulus(p: int) -> int:
    return Prime(p).value


@lru_cache(maxsize=64)
def inverse_table(p: int) -> np.ndarray:
    """inv[x] = x^{-1} mod p for x != 0, inv[0] = 0."""
    table = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        table[x] = pow(x, p - 2, p)
    return table


@dataclass(frozen=True)
class ResidueSet:
    """A finite subset of F_p with its modulus."""
    modulus: int
    members: Tuple[int, ...] = ()

    def __post_init__(self):
        _checked_modulus(self.modulus)
        previous = -1
        for x in self.members:
            if not previous < x < self.modulus:
                raise ValueError(f"members must be strictly increasing residues mod {self.modulus}")
            previous = x

    @classmethod
    def of(cls, modulus: int, values: Iterable[int]) -> 'ResidueSet':
        """Reduce, deduplicate and sort arbitrary integers into a set mod p."""
        return cls(modulus, tuple(sorted({int(v) % modulus for v in values})))

    @classmethod
    def from_mask(cls, modulus: int, mask: int) -> 'ResidueSet':
        return cls(modulus, tuple(x for x in range(modulus) if mask >> x & 1))

    @classmethod
    def from_array(cls, modulus: int, values: np.ndarray) -> 'ResidueSet':
        return cls(modulus, tuple(int(v) for v in np.unique(values % modulus)))

    @classmethod
    def full(cls, modulus: int) -> 'ResidueSet':
        return cls(modulus, tuple(range(modulus)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x: int) -> bool:
        return x % self.modulus in self.lookup

    @cached_property
    def lookup(self) -> FrozenSet[int]:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> int:
        if self.modulus > MASK_LIMIT:
            raise ValueError(f"bitmask cache is limited to p <= {MASK_LIMIT}")
        m = 0
        for x in self.members:
            m |= 1 << x
        return m

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def nonzero(self) -> 'ResidueSet':
        return ResidueSet(self.modulus, tuple(x for x in self.members if x))

    def issubset(self, other: 'ResidueSet') -> bool:
        _same_modulus(self.modulus, other.modulus)
        return self.lookup <= other.lookup

    def union(self, other: 'ResidueSet') -> 'ResidueSet':
        _same_modulus(self.modulus, other.modulus)
        return ResidueSet(self.modulus, tuple(sorted(self.lookup | other.lookup)))

    def intersection(self, other: 'ResidueSet') -> 'ResidueSet':
        _same_modulus(self.modulus, other.modulus)
        return ResidueSet(self.modulus, tuple(sorted(self.lookup & other.lookup)))

    def to_json(self) -> Dict[str, object]:
        return {"modulus": self.modulus, "members": list(self.members)}

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.members)


@dataclass(frozen=True)
class CountVector:
    """An exact nonnegative integer function on Z/pZ."""
    modulus: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.modulus:
            raise ValueError(f"count vector has length {len(self.counts)}, expected {self.modulus}")
        if any(c < 0 for c in self.counts):
            raise ValueError("count vectors are nonnegative")

    @classmethod
    def zeros(cls, modulus: int) -> 'CountVector':
        return cls(modulus, (0,) * modulus)

    @classmethod
    def from_mapping(cls, modulus: int, values: Dict[int, int]) -> 'CountVector':
        counts = [0] * modulus
        for x, c in values.items():
            counts[x % modulus] += int(c)
        return cls(modulus, tuple(counts))

    def __getitem__(self, x: int) -> int:
        return self.counts[x % self.modulus]

    def __add__(self, other: 'CountVector') -> 'CountVector':
        _same_modulus(self.modulus, other.modulus)
        return CountVector(self.modulus, tuple(a + b for a, b in zip(self.counts, other.counts)))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def support(self) -> ResidueSet:
        return ResidueSet(self.modulus, tuple(x for x, c in enumerate(self.counts) if c))

    def items(self) -> List[Tuple[int, int]]:
        return [(x, c) for x, c in enumerate(self.counts) if c]


def _same_modulus(p: int, q: int):
    if p != q:
        raise ModulusMismatch(p, q)


def rotate_mask(mask: int, shift: int, p: int) -> int:
    """Bitmask of A + shift from the bitmask of A."""
    shift %= p
    if not shift:
        return mask
    return ((mask << shift) | (mask >> (p - shift))) & ((1 << p) - 1)


def sum_mask(mask: int, B: ResidueSet) -> int:
    """Bitmask of A + B from the bitmask of A."""
    out = 0
    for b in B.members:
        out |= rotate_mask(mask, b, B.modulus)
    return out


def indicator(A: ResidueSet) -> CountVector:
    counts = [0] * A.modulus
    for x in A.members:
        counts[x] = 1
    return CountVector(A.modulus, tuple(counts))


# =============================================================================
# PAIRWISE COMBINATORS
# =============================================================================

def _pair_values(A: ResidueSet, B: ResidueSet, op: SetOp) -> np.ndarray:
    """All values a op b over admissible pairs, as a flat int64 array."""
    _same_modulus(A.modulus, B.modulus)
    p = A.modulus
    op = SetOp(op)

    if op == SetOp.QUOTIENT:
        denominators = B.nonzero()
        if len(B) and not len(denominators):
            raise EmptyDenominator("quotient set with B = {0}")
        if not len(A) or not len(denominators):
            return np.zeros(0, dtype=np.int64)
        return np.multiply.outer(A.array, inverse_table(p)[denominators.array]).ravel() % p

    if not len(A) or not len(B):
        return np.zeros(0, dtype=np.int64)
    if op == SetOp.SUM:
        return np.add.outer(A.array, B.array).ravel() % p
    if op == SetOp.DIFFERENCE:
        return np.subtract.outer(A.array, B.array).ravel() % p
    return np.multiply.outer(A.array, B.array).ravel() % p


def combine(A: ResidueSet, B: ResidueSet, op: SetOp) -> ResidueSet:
    """The set {a op b}; the quotient skips b = 0."""
    return ResidueSet.from_array(A.modulus, _pair_values(A, B, op))


def rep_function(A: ResidueSet, B: ResidueSet, op: SetOp) -> CountVector:
    """r_{A op B}(x) = number of pairs (a, b) with a op b = x."""
    values = _pair_values(A, B, op)
    counts = np.bincount(values, minlength=A.modulus) if len(values) else np.zeros(A.modulus, dtype=np.int64)
    return CountVector(A.modulus, tuple(int(c) for c in counts))


def convolve(f: CountVector, g: CountVector, mode: ConvolutionMode = ConvolutionMode.STAR) -> CountVector:
    """
    Exact cyclic convolution over Z/pZ.
    star:   (f*g)(x) = sum_y f(y) g(x - y)
    circle: (f o g)(x) = sum_y f(y) g(y + x)
    """
    _same_modulus(f.modulus, g.modulus)
    p = f.modulus
    mode = ConvolutionMode(mode)
    out = [0] * p
    g_items = g.items()
    for y, fy in f.items():
        if mode == ConvolutionMode.STAR:
            for z, gz in g_items:
                out[(y + z) % p] += fy * gz
        else:
            for z, gz in g_items:
                out[(z - y) % p] += fy * gz
    return CountVector(p, tuple(out))


# =============================================================================
# RATIO SETS
# =============================================================================

def ratio_set_R(A: ResidueSet) -> ResidueSet:
    """R[A] = {(a1 - a) / (a2 - a) : a2 != a}."""
    if len(A) < 2:
        raise TooSmall(f"R[A] needs |A| >= 2, got {len(A)}")
    p = A.modulus
    inv = inverse_table(p)
    seen = np.zeros(p, dtype=bool)
    for a in A.members:
        shifted = (A.array - a) % p
        denominators = shifted[shifted != 0]
        seen[np.multiply.outer(shifted, inv[denominators]).ravel() % p] = True
    return ResidueSet(p, tuple(int(x) for x in np.flatnonzero(seen)))


def quotient_quadruple_Q(A: ResidueSet) -> ResidueSet:
    """Q[A] = {(a1 - a2) / (a3 - a4) : a3 != a4}, computed as (A-A)/((A-A) minus 0)."""
    if len(A) < 2:
        raise TooSmall(f"Q[A] needs |A| >= 2, got {len(A)}")
    differences = combine(A, A, SetOp.DIFFERENCE)
    return combine(differences, differences.nonzero(), SetOp.QUOTIENT)


# =============================================================================
# TRANSFORMS
# =============================================================================

def translate(A: ResidueSet, x: int) -> ResidueSet:
    return ResidueSet.of(A.modulus, (a + x for a in A.members))


def dilate(A: ResidueSet, x: int) -> ResidueSet:
    return ResidueSet.of(A.modulus, (a * x for a in A.members))


def reflect(A: ResidueSet) -> ResidueSet:
    """-A"""
    return ResidueSet.of(A.modulus, (-a for a in A.members))


def one_minus(A: ResidueSet) -> ResidueSet:
    """1 - A"""
    return ResidueSet.of(A.modulus, (1 - a for a in A.members))


def product_power(Q: ResidueSet, G: ResidueSet, k: int) -> ResidueSet:
    """Q G^k by iterated product sets; k = 0 gives Q."""
    if k < 0:
        raise ValueError(f"power must be nonnegative, got {k}")
    result = Q
    for _ in range(k):
        result = combine(result, G, SetOp.PRODUCT)
    return result
