import os
import tempfile
import unittest

import pandas as pd

from src.types import CheckMode, CheckReport, Verdict
from src.utils.analysis import SUMMARY_COLUMNS, ceiling_violations, summarize, summary_frame, write_summary_csv
from src.utils.config import HarnessConfig
from src.utils.plots import plot_reports


def estimate(check_id, constant, group="all", verdict=Verdict.REPORT_ONLY, **fingerprint):
    fingerprint["group"] = group
    return CheckReport(check_id=check_id, mode=CheckMode.ESTIMATE_CONSTANT, params={},
                       fingerprint=fingerprint, lhs=1, rhs_shape=1.0,
                       implied_constant=constant if verdict == Verdict.REPORT_ONLY else None, verdict=verdict)


class TestSummaries(unittest.TestCase):

    def test_counts_and_range_per_group(self):
        reports = [
            estimate("TWO_THIRDS", 0.5, group="3", order=3),
            estimate("TWO_THIRDS", 1.5, group="3", order=3),
            estimate("TWO_THIRDS", None, group="3", verdict=Verdict.SKIPPED, order=3),
            estimate("TWO_THIRDS", 0.9, group="4", order=4),
        ]
        summaries = summarize(reports)
        self.assertEqual([(s.check_id, s.group) for s in summaries], [("TWO_THIRDS", "3"), ("TWO_THIRDS", "4")])
        first = summaries[0]
        self.assertEqual((first.instances, first.report_only, first.skipped), (3, 2, 1))
        self.assertEqual((first.min_constant, first.max_constant), (0.5, 1.5))

    def test_ceilings(self):
        reports = [estimate("MISHA_INC", 2.0), estimate("MISHA_INC", 9.0), estimate("MISHA_INC", 12.0)]
        summaries = summarize(reports, HarnessConfig())
        self.assertEqual(ceiling_violations(summaries), {"MISHA_INC/all": [1, 2]})
        strict = HarnessConfig(ceilings={"MISHA_INC": 1.0})
        self.assertEqual(ceiling_violations(summarize(reports, strict)), {"MISHA_INC/all": [0, 1, 2]})

    def test_json_records(self):
        records = [{"check_id": "EP_INEQ", "verdict": "pass", "fingerprint": {"group": "all"}},
                   {"check_id": "EP_INEQ", "verdict": "fail", "fingerprint": {"group": "all"}}]
        summary = summarize(records)[0]
        self.assertEqual((summary.passed, summary.failed), (1, 1))
        self.assertIsNone(summary.min_constant)

    def test_csv_header(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "summary.csv")
            write_summary_csv(summary_frame([]), path)
            with open(path, encoding="utf-8") as handle:
                self.assertEqual(handle.read().strip(), ",".join(SUMMARY_COLUMNS))
            write_summary_csv(summary_frame(summarize([estimate("BASIS", 2.0)])), path)
            frame = pd.read_csv(path)
            self.assertEqual(list(frame.columns), SUMMARY_COLUMNS)
            self.assertEqual(frame.iloc[0]["report_only"], 1)


class TestPlots(unittest.TestCase):

    def test_one_png_per_check(self):
        records = [
            {"check_id": "TWO_THIRDS", "fingerprint": {"order": 3}, "implied_constant": 0.48},
            {"check_id": "TWO_THIRDS", "fingerprint": {"order": 4}, "implied_constant": 0.63},
            {"check_id": "EXPANDER", "fingerprint": {"n": 12}, "details": {"exponent": 2.53}},
            {"check_id": "EP_INEQ", "fingerprint": {}, "implied_constant": None},
        ]
        with tempfile.TemporaryDirectory() as tmp:
            written = plot_reports(records, tmp)
            self.assertEqual(sorted(os.path.basename(p) for p in written), ["expander.png", "two_thirds.png"])
            for path in written:
                self.assertGreater(os.path.getsize(path), 0)

    def test_nothing_to_plot(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertEqual(plot_reports([], tmp), [])
            self.assertEqual(os.listdir(tmp), [])


if __name__ == '__main__':
    unittest.main()
