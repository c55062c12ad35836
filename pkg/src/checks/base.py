import math
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Union

from ..arithmetic import is_prime
from ..bounds import Interval, as_interval, certainly_ge, certainly_le, log2_interval, minimal_constant
from ..errors import MalformedParams, SumProductError
from ..sets import RationalSet, ResidueSet
from ..subgroups import InvariantSet, Subgroup, invariant_set, subgroup_of_order
from ..types import CheckMode, CheckReport, InstanceFamily, Verdict
from ..utils.config import HarnessConfig, parse_fraction
from ..utils.serialization import parse_int_list, parse_rational_list

Number = Union[int, Fraction, Interval]


# =============================================================================
# PARAMETER PARSING
# =============================================================================

def param_int(params: Dict[str, Any], name: str, default: Optional[int] = None,
              minimum: Optional[int] = None) -> int:
    value = params.get(name, default)
    if value is None:
        raise MalformedParams(name, "required")
    if isinstance(value, bool):
        raise MalformedParams(name, "expected an integer")
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise MalformedParams(name, f"expected an integer, got {value!r}") from None
    if number != value and not isinstance(value, str):
        raise MalformedParams(name, f"expected an integer, got {value!r}")
    if minimum is not None and number < minimum:
        raise MalformedParams(name, f"must be >= {minimum}, got {number}")
    return number


def param_prime(params: Dict[str, Any], name: str = "p") -> int:
    p = param_int(params, name)
    if p < 3 or not is_prime(p):
        raise MalformedParams(name, f"expected an odd prime, got {p}")
    return p


def param_fraction(params: Dict[str, Any], name: str, default: Optional[str] = None) -> Fraction:
    value = params.get(name, default)
    if value is None:
        raise MalformedParams(name, "required")
    return parse_fraction(name, value)


def _int_values(name: str, value: Any) -> List[int]:
    if isinstance(value, str):
        return parse_int_list(name, value)
    if isinstance(value, (list, tuple)):
        try:
            return [int(v) for v in value]
        except (TypeError, ValueError):
            raise MalformedParams(name, "expected a list of integers") from None
    raise MalformedParams(name, "expected a set literal or a list of integers")


def param_set(params: Dict[str, Any], name: str, p: int, default: Any = None) -> ResidueSet:
    value = params.get(name, default)
    if value is None:
        raise MalformedParams(name, "required")
    return ResidueSet.of(p, _int_values(name, value))


def param_sets(params: Dict[str, Any], name: str, p: int) -> List[ResidueSet]:
    value = params.get(name)
    if not isinstance(value, (list, tuple)) or not value:
        raise MalformedParams(name, "expected a nonempty list of sets")
    return [ResidueSet.of(p, _int_values(f"{name}[{i}]", v)) for i, v in enumerate(value)]


def param_rational_set(params: Dict[str, Any], name: str) -> RationalSet:
    value = params.get(name)
    if value is None:
        raise MalformedParams(name, "required")
    if isinstance(value, str):
        return RationalSet.of(parse_rational_list(name, value))
    if isinstance(value, (list, tuple)):
        return RationalSet.of(parse_rational_list(name, ",".join(str(v) for v in value)))
    raise MalformedParams(name, "expected a rational set literal")


def param_subgroup(params: Dict[str, Any], p: int, name: str = "order") -> Subgroup:
    d = param_int(params, name, minimum=1)
    try:
        return subgroup_of_order(p, d)
    except SumProductError as exc:
        raise MalformedParams(name, str(exc)) from None


def param_invariant(params: Dict[str, Any], G: Subgroup, name: str = "reps") -> InvariantSet:
    reps = param_set(params, name, G.modulus, default=[1])
    try:
        return invariant_set(G, reps)
    except SumProductError as exc:
        raise MalformedParams(name, str(exc)) from None


# =============================================================================
# INSTANCE GENERATION
# =============================================================================

@lru_cache(maxsize=128)
def odd_primes(lo: int, hi: int) -> List[int]:
    return [n for n in range(max(lo, 3), hi + 1) if is_prime(n)]


def random_prime(rng: random.Random, family: InstanceFamily, p: Optional[int] = None) -> int:
    if p is not None:
        return p
    primes = odd_primes(*family.p_range)
    if not primes:
        raise MalformedParams("p_range", f"no odd prime in {family.p_range}")
    return rng.choice(primes)


def random_set(rng: random.Random, p: int, size_range, nonzero: bool = False) -> List[int]:
    universe = list(range(1 if nonzero else 0, p))
    lo, hi = size_range
    size = rng.randint(min(lo, len(universe)), min(hi, len(universe)))
    return sorted(rng.sample(universe, size))


def random_order(rng: random.Random, family: InstanceFamily, p: int, order: Optional[int] = None) -> int:
    if order is not None:
        return order
    lo, hi = family.order_range
    choices = [d for d in range(lo, min(hi, p - 1) + 1) if (p - 1) % d == 0]
    return rng.choice(choices or [1])


def random_reps(rng: random.Random, p: int, G: Subgroup, max_cosets: int) -> List[int]:
    """Representatives of up to max_cosets random cosets of G."""
    cosets = (p - 1) // G.order
    count = rng.randint(1, max(1, min(max_cosets, cosets)))
    return sorted(rng.sample(range(1, p), count))


# =============================================================================
# CHECK BASE
# =============================================================================

class BaseCheck(ABC):
    """
    Abstract base class for all theorem checks.
    A check evaluates one instance of a quantitative statement: it parses the
    instance parameters, evaluates the statement's hypotheses exactly and
    either decides the conclusion or estimates the implied constant.
    """

    check_id: str = ""
    section: str = ""
    # fingerprint key the summaries group by; None puts every instance in "all"
    group_by: Optional[str] = None
    mode: CheckMode = CheckMode.ASSERT_EXACT
    statement: str = ""

    def __init__(self, config: HarnessConfig):
        self.config = config

    @abstractmethod
    def evaluate(self, params: Dict[str, Any]) -> CheckReport:
        pass

    @abstractmethod
    def generate(self, rng: random.Random, family: InstanceFamily,
                 p: Optional[int] = None, order: Optional[int] = None) -> Dict[str, Any]:
        """Draw the parameters of one instance."""
        pass

    # -- exact arithmetic -----------------------------------------------------

    @property
    def c_star(self) -> Fraction:
        return self.config.c_star

    def log2(self, x: Union[int, Fraction]) -> Interval:
        return log2_interval(x, self.config.log_padding_bits)

    def power(self, x: Number, exponent: Union[int, Fraction]) -> Interval:
        return as_interval(x).power(exponent, self.config.minorant_bits)

    @staticmethod
    def at_most(lhs: Number, rhs: Number) -> bool:
        return certainly_le(lhs, rhs)

    @staticmethod
    def at_least(lhs: Number, rhs: Number) -> bool:
        return certainly_ge(lhs, rhs)

    @staticmethod
    def minimal_c_star(holds: Callable[[Fraction], bool]) -> Optional[Fraction]:
        return minimal_constant(holds)

    # -- reports --------------------------------------------------------------

    def report(self, params: Dict[str, Any], fingerprint: Dict[str, Any], verdict: Verdict,
               lhs: Any = None, rhs_shape: Optional[float] = None,
               implied_constant: Optional[float] = None, details: Optional[Dict[str, Any]] = None) -> CheckReport:
        fingerprint = dict(fingerprint)
        key = fingerprint.get(self.group_by) if self.group_by else None
        fingerprint["group"] = "all" if key is None else str(key)
        return CheckReport(
            check_id=self.check_id,
            mode=self.mode,
            params=params,
            fingerprint=fingerprint,
            lhs=lhs,
            rhs_shape=rhs_shape,
            implied_constant=implied_constant,
            verdict=verdict,
            details=details or {},
        )

    def skip(self, params: Dict[str, Any], fingerprint: Dict[str, Any], gates: Dict[str, bool],
             details: Optional[Dict[str, Any]] = None) -> CheckReport:
        merged = {"gates": gates}
        merged.update(details or {})
        return self.report(params, fingerprint, Verdict.SKIPPED, details=merged)

    def estimate(self, params: Dict[str, Any], fingerprint: Dict[str, Any], lhs: Any, shape: float,
                 details: Optional[Dict[str, Any]] = None) -> CheckReport:
        """implied constant = lhs / shape; a vanishing or non-finite shape is skipped."""
        if not math.isfinite(shape) or shape <= 0:
            return self.skip(params, fingerprint, {"nondegenerate_shape": False}, details)
        return self.report(params, fingerprint, Verdict.REPORT_ONLY, lhs=lhs, rhs_shape=shape,
                           implied_constant=float(lhs) / shape, details=details)

    def decide(self, params: Dict[str, Any], fingerprint: Dict[str, Any], lhs: Any, rhs: Number,
               holds: bool, details: Optional[Dict[str, Any]] = None) -> CheckReport:
        verdict = Verdict.PASS if holds else Verdict.FAIL
        return self.report(params, fingerprint, verdict, lhs=lhs, rhs_shape=float(as_interval(rhs)),
                           details=details)

    def __str__(self):
        return f"Check: {self.check_id}"
