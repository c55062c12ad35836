# Sweep summaries: one row per (check_id, group)

from typing import Any, Dict, Iterable, List, Optional, Union

import pandas as pd

from ..types import CheckReport, SweepSummary, Verdict
from .config import HarnessConfig

SUMMARY_COLUMNS = [
    "check_id", "group", "instances", "pass", "fail", "report_only",
    "skipped", "error", "min_constant", "max_constant",
]

_COUNTERS = {
    Verdict.PASS.value: "passed",
    Verdict.FAIL.value: "failed",
    Verdict.REPORT_ONLY.value: "report_only",
    Verdict.SKIPPED.value: "skipped",
    Verdict.ERROR.value: "errors",
}


def _as_record(report: Union[CheckReport, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(report, CheckReport):
        return {
            "check_id": report.check_id,
            "fingerprint": report.fingerprint,
            "verdict": report.verdict.value,
            "implied_constant": report.implied_constant,
        }
    return report


def _constant(value: Any) -> Optional[float]:
    """Implied constants read back from JSON may be the strings 'inf' / 'nan'."""
    if value is None:
        return None
    return float(value)


def summarize(reports: Iterable[Union[CheckReport, Dict[str, Any]]],
              config: Optional[HarnessConfig] = None) -> List[SweepSummary]:
    """
    Counts per verdict and the implied-constant range per (check_id, group),
    in order of first appearance. Report indices whose constant exceeds the
    configured ceiling are collected in ceiling_exceeded.
    """
    config = config or HarnessConfig()
    summaries: Dict[tuple, SweepSummary] = {}
    for index, report in enumerate(reports):
        record = _as_record(report)
        check_id = record["check_id"]
        group = str((record.get("fingerprint") or {}).get("group", "all"))
        summary = summaries.setdefault((check_id, group), SweepSummary(check_id=check_id, group=group))

        summary.instances += 1
        counter = _COUNTERS.get(record.get("verdict"))
        if counter:
            setattr(summary, counter, getattr(summary, counter) + 1)

        constant = _constant(record.get("implied_constant"))
        if constant is None:
            continue
        summary.min_constant = constant if summary.min_constant is None else min(summary.min_constant, constant)
        summary.max_constant = constant if summary.max_constant is None else max(summary.max_constant, constant)
        ceiling = config.ceiling(check_id)
        if ceiling is not None and constant > ceiling:
            summary.ceiling_exceeded.append(index)
    return list(summaries.values())


def summary_frame(summaries: Iterable[SweepSummary]) -> pd.DataFrame:
    rows = [
        {
            "check_id": s.check_id,
            "group": s.group,
            "instances": s.instances,
            "pass": s.passed,
            "fail": s.failed,
            "report_only": s.report_only,
            "skipped": s.skipped,
            "error": s.errors,
            "min_constant": s.min_constant,
            "max_constant": s.max_constant,
        }
        for s in summaries
    ]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def write_summary_csv(frame: pd.DataFrame, path: str):
    frame.to_csv(path, index=False)


def ceiling_violations(summaries: Iterable[SweepSummary]) -> Dict[str, List[int]]:
    return {f"{s.check_id}/{s.group}": s.ceiling_exceeded for s in summaries if s.ceiling_exceeded}
