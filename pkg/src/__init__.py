# Main package initialization

from .model import HarnessModel, sweep, estimate_global_constant
from .checks import BaseCheck, REGISTRY, get_check, run_check
from .types import CheckSpec, CheckReport, CheckMode, Verdict, InstanceFamily, SweepSummary

__all__ = [
    'HarnessModel',
    'sweep',
    'estimate_global_constant',
    'BaseCheck',
    'REGISTRY',
    'get_check',
    'run_check',
    'CheckSpec',
    'CheckReport',
    'CheckMode',
    'Verdict',
    'InstanceFamily',
    'SweepSummary'
]
