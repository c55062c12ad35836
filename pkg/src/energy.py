# Exact energy functionals E+, Ex, T_k and E_k, with brute-force oracles

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Tuple, Union

from .arithmetic import AmbientArithmetic, PrimeField, RATIONALS
from .errors import AmbientMismatch, BudgetExceeded, ModulusMismatch
from .sets import CountVector, RationalSet, ResidueSet, convolve, rep_function
from .types import ConvolutionMode, Functional, SetOp

# Energies and solution counts are plain Python ints (arbitrary precision, >= 0)
BigCount = int

DEFAULT_ORACLE_BUDGET = 10 ** 8

EnergyInput = Union[ResidueSet, CountVector, RationalSet, Dict[Fraction, int]]


@dataclass(frozen=True)
class Weighted:
    """A finitely supported nonnegative function on an ambient field."""
    ambient: AmbientArithmetic
    items: Tuple[Tuple[Any, int], ...]

    @property
    def mass(self) -> int:
        return sum(w for _, w in self.items)


def as_weighted(X: EnergyInput) -> Weighted:
    if isinstance(X, ResidueSet):
        return Weighted(PrimeField(X.modulus), tuple((x, 1) for x in X.members))
    if isinstance(X, CountVector):
        return Weighted(PrimeField(X.modulus), tuple(X.items()))
    if isinstance(X, RationalSet):
        return Weighted(RATIONALS, tuple((x, 1) for x in X.members))
    if isinstance(X, dict):
        items = sorted(((Fraction(k), int(v)) for k, v in X.items() if v), key=lambda kv: (kv[0].numerator, kv[0].denominator))
        if any(w < 0 for _, w in items):
            raise ValueError("energy inputs are nonnegative functions")
        return Weighted(RATIONALS, tuple(items))
    raise TypeError(f"unsupported energy input: {type(X).__name__}")


def _same_ambient(f: Weighted, g: Weighted):
    if type(f.ambient) is not type(g.ambient):
        raise AmbientMismatch(f"{f.ambient.tag} vs {g.ambient.tag}")
    if isinstance(f.ambient, PrimeField) and f.ambient.modulus != g.ambient.modulus:
        raise ModulusMismatch(f.ambient.modulus, g.ambient.modulus)


def _to_count_vector(f: Weighted) -> CountVector:
    return CountVector.from_mapping(f.ambient.modulus, dict(f.items))


def _pair_counts(f: Weighted, g: Weighted, op: Callable[[Any, Any], Any]) -> Dict[Any, int]:
    """x -> sum of f(a) g(b) over a op b = x, by hash-map accumulation."""
    out: Dict[Any, int] = {}
    for a, fa in f.items:
        for b, gb in g.items:
            key = op(a, b)
            out[key] = out.get(key, 0) + fa * gb
    return out


def additive_rep(f: Weighted, g: Weighted) -> Dict[Any, int]:
    """r_{f+g} as a sparse map; over F_p this is the star convolution."""
    _same_ambient(f, g)
    if isinstance(f.ambient, PrimeField):
        return dict(convolve(_to_count_vector(f), _to_count_vector(g), ConvolutionMode.STAR).items())
    return _pair_counts(f, g, f.ambient.add)


def difference_rep(f: Weighted) -> Dict[Any, int]:
    """r_{f-f}(x) = (f o f)(x)."""
    if isinstance(f.ambient, PrimeField):
        v = _to_count_vector(f)
        return dict(convolve(v, v, ConvolutionMode.CIRCLE).items())
    return _pair_counts(f, f, f.ambient.sub)


# =============================================================================
# FAST PATHS
# =============================================================================

def additive_energy(A: EnergyInput, B: Optional[EnergyInput] = None) -> BigCount:
    """E+(A, B) = sum_x r_{A+B}(x)^2."""
    f = as_weighted(A)
    g = f if B is None else as_weighted(B)
    _same_ambient(f, g)
    if isinstance(A, ResidueSet) and (B is None or isinstance(B, ResidueSet)):
        counts = rep_function(A, A if B is None else B, SetOp.SUM).counts
        return sum(c * c for c in counts)
    return sum(c * c for c in additive_rep(f, g).values())


def multiplicative_energy(A: EnergyInput, B: Optional[EnergyInput] = None) -> BigCount:
    """Ex(A, B) = sum_x r_{AB}(x)^2."""
    f = as_weighted(A)
    g = f if B is None else as_weighted(B)
    _same_ambient(f, g)
    if isinstance(A, ResidueSet) and (B is None or isinstance(B, ResidueSet)):
        counts = rep_function(A, A if B is None else B, SetOp.PRODUCT).counts
        return sum(c * c for c in counts)
    return sum(c * c for c in _pair_counts(f, g, f.ambient.mul).values())


def kfold_rep(A: EnergyInput, k: int) -> Dict[Any, int]:
    """
    r_{kA} by a doubling chain: r_{2sA} = r_{sA} * r_{sA}, with the binary
    digits of k folded in along the way.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = as_weighted(A)
    power = f
    result: Optional[Weighted] = None
    while True:
        if k & 1:
            result = power if result is None else Weighted(f.ambient, tuple(additive_rep(result, power).items()))
        k >>= 1
        if not k:
            break
        power = Weighted(f.ambient, tuple(additive_rep(power, power).items()))
    return dict(result.items)


def tsum_Tk(A: EnergyInput, k: int) -> BigCount:
    """T_k(A) = sum_x r_{kA}(x)^2."""
    return sum(c * c for c in kfold_rep(A, k).values())


def higher_energy_Ek(A: EnergyInput, k: int) -> BigCount:
    """E_k(A) = sum_x r_{A-A}(x)^k; E_1(A) = |A|^2."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = as_weighted(A)
    if k == 1:
        return f.mass ** 2
    return sum(c ** k for c in difference_rep(f).values())


def energy_lower_bound(size: int, l: int, p: int) -> Fraction:
    """|A|^{2l} / p^{l-1}, below both T_l(A) and E_l(A) for A in F_p."""
    return Fraction(size ** (2 * l), p ** (l - 1))


def cauchy_schwarz_bounds(size_a: int, size_b: int) -> Dict[str, int]:
    """The three trivial upper bounds on E+(A, B); the last one squared."""
    return {
        "a2b": size_a * size_a * size_b,
        "b2a": size_b * size_b * size_a,
        "a3b3": size_a ** 3 * size_b ** 3,
    }


# =============================================================================
# ORACLE
# =============================================================================

def _estimate(size: int, functional: Functional, k: int) -> int:
    if functional in (Functional.ADDITIVE_ENERGY, Functional.MULTIPLICATIVE_ENERGY):
        return size ** 4
    return size ** (2 * k)


def oracle_count(A: Union[ResidueSet, RationalSet], functional: Functional, k: int = 2,
                 budget: int = DEFAULT_ORACLE_BUDGET) -> BigCount:
    """
    Raw tuple enumeration with no convolutions. E+ and Ex loop over all
    4-tuples, T_k over k-tuples on each side, E_k over ordered pairs.
    """
    functional = Functional(functional)
    f = as_weighted(A)
    ambient = f.ambient
    members = [x for x, _ in f.items]

    estimated = _estimate(len(members), functional, k)
    if estimated > budget:
        raise BudgetExceeded(estimated, budget)

    if functional == Functional.ADDITIVE_ENERGY:
        return sum(
            1 for a1, a2, b1, b2 in itertools.product(members, repeat=4)
            if ambient.add(a1, b1) == ambient.add(a2, b2)
        )
    if functional == Functional.MULTIPLICATIVE_ENERGY:
        return sum(
            1 for a1, a2, b1, b2 in itertools.product(members, repeat=4)
            if ambient.mul(a1, b1) == ambient.mul(a2, b2)
        )
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if functional == Functional.TK:
        sums: Counter = Counter()
        for combo in itertools.product(members, repeat=k):
            total = combo[0]
            for x in combo[1:]:
                total = ambient.add(total, x)
            sums[total] += 1
        return sum(c * c for c in sums.values())

    differences = Counter(ambient.sub(a, b) for a, b in itertools.product(members, repeat=2))
    return sum(c ** k for c in differences.values())
