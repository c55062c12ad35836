# check_id -> check class, and the single entry point that runs one check

import time
from typing import Dict, List, Optional, Type

from ..errors import MalformedParams, UnknownCheck
from ..types import CheckMode, CheckReport, CheckSpec
from ..utils.config import HarnessConfig
from .base import BaseCheck
from .invariant_sets import (
    BasisCheck, BourgainTkCheck, ExponentialSumCheck, HigherEnergyRemarkCheck, InvariantEnergyCheck,
    InvariantMixedEnergyCheck, InvariantTkCheck, ShiftIntersectionCheck, SubgroupTkCheck, TwoThirdsCheck,
)
from .preliminaries import (
    ChangeOfSetCheck, DifferenceMomentCheck, IncidenceCheck, PlunneckeCheck, SmallProductEnergyCheck,
    TrivialEnergyBoundsCheck,
)
from .small_products import (
    AsymmetricSumProductCheck, ExpanderCheck, MultipleSumsetCheck, ProductEnergyCheck, ProductShiftCheck,
    ProductShiftMoreCheck, ProductSumsetCheck, RationalTkCheck, SmallProductTkCheck,
)

REGISTRY_VERSION = 1

_CHECKS: List[Type[BaseCheck]] = [
    PlunneckeCheck,
    IncidenceCheck,
    SmallProductEnergyCheck,
    DifferenceMomentCheck,
    ChangeOfSetCheck,
    TrivialEnergyBoundsCheck,
    SubgroupTkCheck,
    InvariantTkCheck,
    ExponentialSumCheck,
    InvariantEnergyCheck,
    ShiftIntersectionCheck,
    InvariantMixedEnergyCheck,
    TwoThirdsCheck,
    HigherEnergyRemarkCheck,
    BasisCheck,
    BourgainTkCheck,
    SmallProductTkCheck,
    RationalTkCheck,
    MultipleSumsetCheck,
    ProductEnergyCheck,
    ProductShiftCheck,
    ProductSumsetCheck,
    ProductShiftMoreCheck,
    AsymmetricSumProductCheck,
    ExpanderCheck,
]

REGISTRY: Dict[str, Type[BaseCheck]] = {cls.check_id: cls for cls in _CHECKS}


def get_check(check_id: str, config: HarnessConfig) -> BaseCheck:
    try:
        return REGISTRY[check_id](config)
    except KeyError:
        raise UnknownCheck(check_id) from None


def native_mode(check_id: str) -> CheckMode:
    if check_id not in REGISTRY:
        raise UnknownCheck(check_id)
    return REGISTRY[check_id].mode


def run_check(spec: CheckSpec, config: Optional[HarnessConfig] = None) -> CheckReport:
    """
    Evaluate one instance. Hypotheses that fail give a hypothesis-skipped report;
    errors propagate (the sweep captures them into reports).
    """
    config = config or HarnessConfig()
    check = get_check(spec.check_id, config)
    if CheckMode(spec.mode) != check.mode:
        raise MalformedParams("mode", f"{spec.check_id} runs in {check.mode.value} mode")

    started = time.perf_counter()
    report = check.evaluate(dict(spec.params))
    if config.timings:
        report.elapsed_ms = (time.perf_counter() - started) * 1000.0
    return report
