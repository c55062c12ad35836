import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, Iterable, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

from .checks import REGISTRY_VERSION, get_check, native_mode, run_check
from .errors import MalformedParams, NoAdmissibleInstances
from .families import generate_instances, normalize_family
from .types import CheckMode, CheckReport, CheckSpec, InstanceFamily, SweepSummary, Verdict
from .utils import log
from .utils.analysis import summarize, summary_frame
from .utils.config import HarnessConfig

Task = Tuple[int, CheckSpec, HarnessConfig]


def _error_report(spec: CheckSpec, exc: Exception) -> CheckReport:
    details = {"error": type(exc).__name__, "message": str(exc)}
    if not isinstance(exc, (ValueError, ArithmeticError)):
        details["unexpected"] = True
    return CheckReport(
        check_id=spec.check_id,
        mode=CheckMode(spec.mode),
        params=dict(spec.params),
        fingerprint={"group": "all"},
        verdict=Verdict.ERROR,
        details=details,
    )


def evaluate_task(task: Task) -> CheckReport:
    """
    Run one instance. Any exception raised by a check becomes an error report
    for that instance, so one bad instance never aborts a sweep. Module level so
    worker processes can pickle it.
    """
    _, spec, config = task
    try:
        return run_check(spec, config)
    except Exception as exc:
        return _error_report(spec, exc)


class HarnessModel:
    """Sweep driver: streams instances, runs the checks and collects reports and summaries."""

    def __init__(self, family: InstanceFamily, checks: Iterable[CheckSpec],
                 config: Optional[HarnessConfig] = None, show_progress: bool = True):
        self.config = config or HarnessConfig()
        self.family = normalize_family(family)
        self.checks = list(checks)
        self.show_progress = show_progress

        for spec in self.checks:
            if CheckMode(spec.mode) != native_mode(spec.check_id):
                raise MalformedParams("mode", f"{spec.check_id} runs in {native_mode(spec.check_id).value} mode")

        self.reports: List[CheckReport] = []
        self.global_constants: Dict[str, Dict[str, Any]] = {}

    # -------------------------------------------------------------------------

    def tasks(self) -> List[Task]:
        """Every (index, spec) of the sweep in generation order; fixed params override generated ones."""
        tasks: List[Task] = []
        for spec in self.checks:
            check = get_check(spec.check_id, self.config)
            for params in generate_instances(self.family, check):
                params.update(spec.params)
                tasks.append((len(tasks), CheckSpec(spec.check_id, params, spec.mode), self.config))
        return tasks

    def run(self) -> List[CheckReport]:
        tasks = self.tasks()
        log.log_sweep_event(0, "start", {
            "family": self.family.fingerprint(),
            "checks": ",".join(spec.check_id for spec in self.checks),
            "instances": len(tasks),
            "parallelism": self.config.parallelism,
            "registry": REGISTRY_VERSION,
        })
        started = time.perf_counter()

        progress = tqdm(total=len(tasks), desc="verify", unit="inst", file=sys.stderr,
                        disable=not self.show_progress or not sys.stderr.isatty())
        self.reports = []
        if self.config.parallelism > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.config.parallelism) as pool:
                chunksize = max(1, len(tasks) // (4 * self.config.parallelism))
                for report in pool.map(evaluate_task, tasks, chunksize=chunksize):
                    self._collect(report)
                    progress.update(1)
        else:
            for task in tasks:
                self._collect(evaluate_task(task))
                progress.update(1)
        progress.close()

        counts = self.frame()["verdict"].value_counts().to_dict() if self.reports else {}
        log.log_sweep_event(len(tasks), "end", {"counts": counts, "elapsed": time.perf_counter() - started})
        return self.reports

    def _collect(self, report: CheckReport):
        index = len(self.reports)
        self.reports.append(report)
        if report.verdict == Verdict.ERROR:
            level = logging.ERROR if report.details.get("unexpected") else logging.WARNING
            log.log_check_event(report.check_id, index, "error", report.details, level=level)
        elif report.verdict == Verdict.FAIL:
            log.log_check_event(report.check_id, index, "fail", {"params": report.params},
                                level=logging.WARNING)

    # -------------------------------------------------------------------------

    def frame(self) -> pd.DataFrame:
        """One row per report."""
        return pd.DataFrame([
            {
                "check_id": r.check_id,
                "group": r.fingerprint.get("group", "all"),
                "verdict": r.verdict.value,
                "implied_constant": r.implied_constant,
            }
            for r in self.reports
        ], columns=["check_id", "group", "verdict", "implied_constant"])

    def summaries(self) -> List[SweepSummary]:
        return summarize(self.reports, self.config)

    def summary_frame(self) -> pd.DataFrame:
        return summary_frame(self.summaries())

    def has_failures(self) -> bool:
        return any(r.is_failure for r in self.reports)

    def estimate_global_constant(self, check_id: str) -> float:
        """Largest implied constant of one check over the sweep."""
        if native_mode(check_id) != CheckMode.ESTIMATE_CONSTANT:
            raise MalformedParams("check_id", f"{check_id} is not an estimate_constant check")
        if not self.reports:
            self.run()
        constants = [r.implied_constant for r in self.reports
                     if r.check_id == check_id and r.verdict == Verdict.REPORT_ONLY]
        if not constants:
            raise NoAdmissibleInstances(f"no admissible instance of {check_id} in the family")
        constant = max(constants)
        self.global_constants[check_id] = {"constant": constant, "family": self.family.fingerprint()}
        log.log_check_event(check_id, len(self.reports), "global constant", self.global_constants[check_id])
        return constant


def sweep(family: InstanceFamily, checks: Iterable[CheckSpec],
          config: Optional[HarnessConfig] = None) -> List[CheckReport]:
    return HarnessModel(family, checks, config, show_progress=False).run()


def estimate_global_constant(check_id: str, family: InstanceFamily,
                             config: Optional[HarnessConfig] = None) -> float:
    spec = CheckSpec(check_id, mode=native_mode(check_id))
    return HarnessModel(family, [spec], config, show_progress=False).estimate_global_constant(check_id)
