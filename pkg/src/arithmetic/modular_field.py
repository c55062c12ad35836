from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List

import sympy
from sympy.ntheory import n_order
from sympy.ntheory import primitive_root as _sympy_primitive_root

from ..errors import NotPrime, ZeroInverse

# Witnesses for a deterministic Miller-Rabin test below 2^64
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test, valid for n < 2^64."""
    if n < 2:
        return False
    for q in _WITNESSES:
        if n % q == 0:
            return n == q

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}, in increasing prime order."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    return {int(q): int(e) for q, e in sorted(sympy.factorint(n).items())}


def divisors(n: int) -> List[int]:
    """All divisors of n in increasing order."""
    if n < 1:
        raise ValueError(f"divisors are defined for n >= 1, got {n}")
    return [int(d) for d in sympy.divisors(n)]


@dataclass(frozen=True)
class Prime:
    """An odd prime modulus."""
    value: int

    def __post_init__(self):
        if self.value < 3 or self.value % 2 == 0 or not is_prime(self.value):
            raise NotPrime(f"{self.value} is not an odd prime")

    def __int__(self) -> int:
        return self.value

    def element(self, residue: int) -> 'FieldElement':
        return FieldElement(residue % self.value, self)


@dataclass(frozen=True)
class FieldElement:
    residue: int
    modulus: Prime

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus.value:
            raise ValueError(f"residue {self.residue} outside [0, {self.modulus.value - 1}]")

    def __mul__(self, other: 'FieldElement') -> 'FieldElement':
        return self.modulus.element(self.residue * other.residue)

    def __add__(self, other: 'FieldElement') -> 'FieldElement':
        return self.modulus.element(self.residue + other.residue)

    def __sub__(self, other: 'FieldElement') -> 'FieldElement':
        return self.modulus.element(self.residue - other.residue)

    def __int__(self) -> int:
        return self.residue


def invert(x: FieldElement) -> FieldElement:
    """Multiplicative inverse by the extended Euclidean algorithm."""
    if x.residue == 0:
        raise ZeroInverse(f"0 has no inverse mod {x.modulus.value}")
    return x.modulus.element(inverse_mod(x.residue, x.modulus.value))


def inverse_mod(a: int, p: int) -> int:
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ZeroInverse(f"{a} is not invertible mod {p}")
    return old_s % p


def multiplicative_order(x: FieldElement) -> int:
    """Order of a nonzero x in F_p*."""
    if x.residue == 0:
        raise ZeroInverse("0 has no multiplicative order")
    return int(n_order(x.residue, x.modulus.value))


@lru_cache(maxsize=1024)
def _primitive_root(p: int) -> int:
    g = _sympy_primitive_root(p)
    if g is None:
        raise NotPrime(f"no primitive root found mod {p}")
    return int(g)


def primitive_root(p: Prime) -> FieldElement:
    """The smallest g >= 2 generating F_p*."""
    return p.element(_primitive_root(p.value))
