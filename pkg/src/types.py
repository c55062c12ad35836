# Core data types and enums for the sum-product lab

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str.__str__(self)

        __format__ = str.__format__
from typing import Dict, List, Optional, Any, Tuple
from dataclasses import dataclass, field

# =============================================================================
# ENUMS
# =============================================================================

class SetOp(StrEnum):
    SUM = "sum"
    DIFFERENCE = "difference"
    PRODUCT = "product"
    QUOTIENT = "quotient"

class ConvolutionMode(StrEnum):
    STAR = "star"
    CIRCLE = "circle"

class Functional(StrEnum):
    ADDITIVE_ENERGY = "E+"
    MULTIPLICATIVE_ENERGY = "Ex"
    TK = "Tk"
    EK = "Ek"

class CheckMode(StrEnum):
    ASSERT_EXACT = "assert_exact"
    ESTIMATE_CONSTANT = "estimate_constant"

class Verdict(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    REPORT_ONLY = "report-only"
    SKIPPED = "hypothesis-skipped"
    ERROR = "error"

class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"

# =============================================================================
# HARNESS RECORDS
# =============================================================================

@dataclass(frozen=True)
class CheckSpec:
    """One check to run on one instance."""
    check_id: str
    params: Dict[str, Any] = field(default_factory=dict)
    mode: CheckMode = CheckMode.ASSERT_EXACT

@dataclass
class CheckReport:
    """Outcome of one theorem-instance check."""
    check_id: str
    mode: CheckMode
    params: Dict[str, Any]
    fingerprint: Dict[str, Any]
    lhs: Any = None                      # int (exact) or float
    rhs_shape: Optional[float] = None
    implied_constant: Optional[float] = None
    verdict: Verdict = Verdict.REPORT_ONLY
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    def __post_init__(self):
        if self.mode == CheckMode.ASSERT_EXACT and self.implied_constant is not None:
            raise ValueError(f"{self.check_id}: exact-mode reports carry no implied constant")
        if (self.mode == CheckMode.ESTIMATE_CONSTANT and self.verdict == Verdict.REPORT_ONLY
                and self.implied_constant is None):
            raise ValueError(f"{self.check_id}: report-only estimates carry an implied constant")

    @property
    def is_failure(self) -> bool:
        return self.verdict == Verdict.FAIL

@dataclass(frozen=True)
class InstanceFamily:
    """A deterministic stream of instances: same seed, same stream."""
    generator: str = "default"
    seed: int = 7
    count: int = 20
    p_range: Tuple[int, int] = (3, 31)
    set_range: Tuple[int, int] = (1, 12)
    b_range: Tuple[int, int] = (1, 8)
    c_range: Tuple[int, int] = (1, 8)
    order_range: Tuple[int, int] = (1, 512)
    k_range: Tuple[int, int] = (1, 3)
    alpha_range: Tuple[int, int] = (1, 30)
    points_range: Tuple[int, int] = (1, 2000)

    def fingerprint(self) -> Dict[str, Any]:
        return {
            "generator": self.generator,
            "seed": self.seed,
            "count": self.count,
            "p_range": list(self.p_range),
            "set_range": list(self.set_range),
            "b_range": list(self.b_range),
            "c_range": list(self.c_range),
            "order_range": list(self.order_range),
            "k_range": list(self.k_range),
            "alpha_range": list(self.alpha_range),
            "points_range": list(self.points_range),
        }

@dataclass
class SweepSummary:
    check_id: str
    group: str
    instances: int = 0
    passed: int = 0
    failed: int = 0
    report_only: int = 0
    skipped: int = 0
    errors: int = 0
    min_constant: Optional[float] = None
    max_constant: Optional[float] = None
    ceiling_exceeded: List[int] = field(default_factory=list)
