import io
import json
import os
import tempfile
import unittest
from fractions import Fraction

from src.errors import MalformedParams
from src.sets import ResidueSet
from src.types import CheckMode, CheckReport, Verdict
from src.utils.serialization import (
    SCHEMA_VERSION, parse_int_list, parse_rational_list, read_reports, report_to_dict, report_to_json,
    to_jsonable, write_reports,
)


def sample_report(**overrides):
    values = dict(
        check_id="EP_INEQ",
        mode=CheckMode.ASSERT_EXACT,
        params={"p": 7, "A": [1, 2, 4]},
        fingerprint={"p": 7, "group": "all"},
        lhs=4,
        rhs_shape=180.0,
        verdict=Verdict.PASS,
    )
    values.update(overrides)
    return CheckReport(**values)


class TestSetLiterals(unittest.TestCase):

    def test_int_list(self):
        self.assertEqual(parse_int_list("A", "1,2,4"), [1, 2, 4])
        self.assertEqual(parse_int_list("A", "{ 3, -1 }"), [3, -1])
        self.assertEqual(parse_int_list("A", ""), [])

    def test_int_list_names_field(self):
        with self.assertRaises(MalformedParams) as ctx:
            parse_int_list("set", "1,x")
        self.assertEqual(ctx.exception.field, "set")

    def test_rational_list(self):
        self.assertEqual(parse_rational_list("A", "1/2, 3,-4/6"), [Fraction(1, 2), Fraction(3), Fraction(-2, 3)])
        with self.assertRaises(MalformedParams):
            parse_rational_list("A", "1/0")

    def test_set_output_reparses(self):
        A = ResidueSet.of(13, [12, 1, 5, 8])
        self.assertEqual(ResidueSet.of(13, parse_int_list("A", str(A))), A)


class TestJsonValues(unittest.TestCase):

    def test_big_ints_become_strings(self):
        self.assertEqual(to_jsonable(2 ** 53), str(2 ** 53))
        self.assertEqual(to_jsonable(2 ** 53 - 1), 2 ** 53 - 1)
        self.assertEqual(to_jsonable(5, big_ints_as_strings=True), "5")

    def test_special_values(self):
        self.assertEqual(to_jsonable(float("inf")), "inf")
        self.assertEqual(to_jsonable(float("nan")), "nan")
        self.assertEqual(to_jsonable(Fraction(3, 4)), "3/4")
        self.assertEqual(to_jsonable(Verdict.SKIPPED), "hypothesis-skipped")
        self.assertEqual(to_jsonable(ResidueSet.of(7, [1])), {"modulus": 7, "members": [1]})


class TestReports(unittest.TestCase):

    def test_schema(self):
        record = report_to_dict(sample_report())
        self.assertEqual(record["schema"], SCHEMA_VERSION)
        self.assertEqual(record["lhs"], "4")
        self.assertEqual(record["verdict"], "pass")
        self.assertEqual(record["mode"], "assert_exact")
        self.assertIsNone(record["elapsed_ms"])
        self.assertEqual(set(record), {
            "check_id", "mode", "params", "fingerprint", "lhs", "rhs_shape", "implied_constant",
            "verdict", "details", "elapsed_ms", "schema",
        })

    def test_keys_sorted(self):
        line = report_to_json(sample_report())
        keys = list(json.loads(line).keys())
        self.assertEqual(keys, sorted(keys))

    def test_write_and_read(self):
        reports = [sample_report(), sample_report(lhs=2 ** 80)]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "reports.jsonl")
            with open(path, "w", encoding="utf-8") as handle:
                write_reports(reports, handle)
            records = read_reports(path)
        self.assertEqual(len(records), 2)
        self.assertEqual(int(records[1]["lhs"]), 2 ** 80)

    def test_stream(self):
        stream = io.StringIO()
        write_reports([sample_report()], stream)
        self.assertTrue(stream.getvalue().endswith("\n"))
        self.assertEqual(stream.getvalue().count("\n"), 1)

    def test_read_rejects_garbage(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.jsonl")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("{not json}\n")
            with self.assertRaises(MalformedParams):
                read_reports(path)
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("[1, 2]\n")
            with self.assertRaises(MalformedParams):
                read_reports(path)
        with self.assertRaises(MalformedParams):
            read_reports("/nonexistent/reports.jsonl")

    def test_report_validation(self):
        with self.assertRaises(ValueError):
            sample_report(implied_constant=1.0)
        with self.assertRaises(ValueError):
            sample_report(mode=CheckMode.ESTIMATE_CONSTANT, verdict=Verdict.REPORT_ONLY)


if __name__ == '__main__':
    unittest.main()
