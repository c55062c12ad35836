# Deterministic instance streams for sweeps

import random
from dataclasses import replace
from typing import Any, Dict, Iterator, Tuple

from .arithmetic import divisors
from .checks.base import BaseCheck, odd_primes
from .errors import MalformedParams
from .types import InstanceFamily

SMALL_RANDOM_P_MAX = 31
SMALL_RANDOM_SET_MAX = 12

GENERATORS = ("default", "small-random", "subgroups", "empty")


def _clamp(bounds: Tuple[int, int], top: int) -> Tuple[int, int]:
    lo, hi = bounds
    hi = min(hi, top)
    return min(lo, hi), hi


def normalize_family(family: InstanceFamily) -> InstanceFamily:
    """Apply the generator's own limits to the family ranges."""
    if family.generator not in GENERATORS:
        raise MalformedParams("family", f"unknown generator '{family.generator}', expected one of {GENERATORS}")
    if family.count < 0:
        raise MalformedParams("count", "must be >= 0")
    for name in ("p_range", "set_range", "b_range", "c_range", "order_range", "k_range", "points_range"):
        lo, hi = getattr(family, name)
        if lo > hi:
            raise MalformedParams(name, f"empty range [{lo}, {hi}]")
    if family.generator == "small-random":
        return replace(
            family,
            p_range=_clamp(family.p_range, SMALL_RANDOM_P_MAX),
            set_range=_clamp(family.set_range, SMALL_RANDOM_SET_MAX),
            b_range=_clamp(family.b_range, SMALL_RANDOM_SET_MAX),
            c_range=_clamp(family.c_range, SMALL_RANDOM_SET_MAX),
        )
    return family


def instance_rng(family: InstanceFamily, check_id: str, index: int) -> random.Random:
    """One generator per instance, so a stream never depends on how it is consumed."""
    return random.Random(f"{family.seed}:{check_id}:{index}")


def generate_instances(family: InstanceFamily, check: BaseCheck) -> Iterator[Dict[str, Any]]:
    """
    Parameters for each instance of a check, in a fixed order.
    The subgroups generator walks every (p, d) with d | p - 1 in the family
    ranges instead of drawing `count` instances.
    """
    family = normalize_family(family)
    if family.generator == "empty":
        return
    if family.generator == "subgroups":
        lo, hi = family.order_range
        index = 0
        for p in odd_primes(*family.p_range):
            for d in divisors(p - 1):
                if lo <= d <= hi:
                    yield check.generate(instance_rng(family, check.check_id, index), family, p=p, order=d)
                    index += 1
        return
    for index in range(family.count):
        yield check.generate(instance_rng(family, check.check_id, index), family)
