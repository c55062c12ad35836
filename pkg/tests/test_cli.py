import json
import os
import tempfile
import unittest
from unittest import mock

from click.testing import CliRunner

from src.cli import cli
from src.utils import log


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner()

    def tearDown(self):
        # the runner's stderr is closed once a command returns
        log.setup_logging()

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args), obj={})


class TestCompute(CliTestCase):

    def test_energy(self):
        result = self.invoke("compute", "energy", "--p", "7", "--set", "1,2,4")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(result.stdout.strip(), "15")

    def test_multiplicative_energy(self):
        result = self.invoke("compute", "energy", "--p", "7", "--set", "1,2,4", "--multiplicative")
        self.assertEqual(result.stdout.strip(), "27")

    def test_tk(self):
        result = self.invoke("compute", "tk", "--p", "7", "--set", "1,2,4", "--k", "3")
        self.assertEqual(result.stdout.strip(), "111")

    def test_ek(self):
        result = self.invoke("compute", "ek", "--p", "7", "--set", "1,2,4", "--k", "3")
        self.assertEqual(result.stdout.strip(), "33")

    def test_subgroup(self):
        result = self.invoke("compute", "subgroup", "--p", "13", "--order", "4")
        self.assertEqual(result.stdout.strip(), "1,5,8,12")

    def test_sumset(self):
        result = self.invoke("compute", "sumset", "--p", "7", "--set", "1,2", "--op", "product")
        self.assertEqual(result.stdout.strip(), "1,2,4")

    def test_qset(self):
        result = self.invoke("compute", "qset", "--p", "7", "--set", "0,1")
        self.assertEqual(result.stdout.strip(), "0,1,6")

    def test_incidence_full_grid(self):
        result = self.invoke("compute", "incidence", "--p", "2", "--full")
        self.assertEqual(result.stdout.strip(), "56")

    def test_incidence_literals(self):
        result = self.invoke("compute", "incidence", "--p", "7", "--points", "0,0,0;1,2,3", "--planes", "1,0,0,0")
        self.assertEqual(result.stdout.strip(), "1")

    def test_expander(self):
        result = self.invoke("compute", "expander", "--n", "12")
        value = json.loads(result.stdout)
        self.assertEqual((value["sizeR"], value["sizeRphiA"]), (125, 540))

    def test_json_format(self):
        result = self.invoke("compute", "energy", "--p", "7", "--set", "1,2,4", "--format", "json")
        self.assertEqual(json.loads(result.stdout), {"command": "energy", "value": 15})

    def test_csv_format(self):
        result = self.invoke("compute", "subgroup", "--p", "13", "--order", "4", "--format", "csv")
        self.assertEqual(result.stdout.split(), ["member", "1", "5", "8", "12"])

    def test_table_format(self):
        result = self.invoke("compute", "energy", "--p", "7", "--set", "1,2,4", "--format", "table")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("15", result.stdout)

    def test_malformed_input_exits_2(self):
        self.assertEqual(self.invoke("compute", "subgroup", "--p", "13", "--order", "5").exit_code, 2)
        self.assertEqual(self.invoke("compute", "energy", "--p", "7", "--set", "1,x").exit_code, 2)
        self.assertEqual(self.invoke("compute", "energy", "--p", "8", "--set", "1").exit_code, 2)


class TestFourierCommand(CliTestCase):

    def test_identities_hold(self):
        result = self.invoke("compute", "fourier", "--p", "7", "--set", "1,2,4", "--k", "3", "--format", "json")
        self.assertEqual(result.exit_code, 0, result.output)
        rows = {row["identity"]: row for row in json.loads(result.stdout)["value"]}
        self.assertTrue(all(row["ok"] for row in rows.values()))
        self.assertIn("tk_nearest_integer", rows)

    def test_identity_tolerance_is_configurable(self):
        with mock.patch("src.fourier.parseval_residual", return_value=1e-6):
            strict = self.invoke("compute", "fourier", "--p", "7", "--set", "1,2,4")
            relaxed = self.invoke("--tolerance", "1e-5", "compute", "fourier", "--p", "7", "--set", "1,2,4")
        self.assertEqual(strict.exit_code, 1)
        self.assertEqual(relaxed.exit_code, 0, relaxed.output)

    def test_spectral_moment_must_round(self):
        with mock.patch("src.fourier.tk_via_spectrum", return_value=111.6):
            result = self.invoke("--moment-tolerance", "1e-2", "compute", "fourier",
                                 "--p", "7", "--set", "1,2,4", "--k", "3", "--format", "json")
        self.assertEqual(result.exit_code, 1)
        rows = {row["identity"]: row for row in json.loads(result.stdout)["value"]}
        self.assertTrue(rows["tk_spectral"]["ok"])
        self.assertFalse(rows["tk_nearest_integer"]["ok"])


class TestOracleCommand(CliTestCase):

    def test_agrees_with_fast_path(self):
        result = self.invoke("compute", "oracle", "--p", "7", "--set", "1,2,4", "--functional", "E+")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(json.loads(result.stdout), {"agree": True, "fast": 15, "oracle": 15})

    def test_rational_sets(self):
        result = self.invoke("compute", "oracle", "--set", "1/2,1,2", "--functional", "Tk", "--k", "2")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertTrue(json.loads(result.stdout)["agree"])

    def test_budget_comes_from_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tight.yaml")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("oracle_budget: 10\n")
            result = self.invoke("--config", path, "compute", "oracle", "--p", "7", "--set", "1,2,4",
                                 "--functional", "Tk", "--k", "2")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("81", result.stderr)


class TestVerify(CliTestCase):

    def test_unknown_check(self):
        result = self.invoke("verify", "--check", "UNKNOWN")
        self.assertEqual(result.exit_code, 2)

    def test_small_random_sweep(self):
        result = self.invoke("verify", "--check", "EP_INEQ", "--family", "small-random", "--seed", "7")
        self.assertEqual(result.exit_code, 0, result.output)
        lines = result.stdout.strip().splitlines()
        self.assertEqual(len(lines), 20)
        for line in lines:
            record = json.loads(line)
            self.assertEqual(record["verdict"], "pass")
            self.assertEqual(record["schema"], 1)
            self.assertIsInstance(record["lhs"], str)

    def test_fixed_params(self):
        result = self.invoke("verify", "--check", "BASIS", "--count", "3", "--param", "p=7", "--param", "order=6")
        self.assertEqual(result.exit_code, 0, result.output)
        records = [json.loads(line) for line in result.stdout.strip().splitlines()]
        self.assertEqual([r["lhs"] for r in records], ["2", "2", "2"])

    def test_summary_formats(self):
        result = self.invoke("verify", "--check", "EP_INEQ", "--count", "5", "--format", "csv")
        self.assertEqual(result.exit_code, 0, result.output)
        header, row = result.stdout.strip().splitlines()
        self.assertTrue(header.startswith("check_id,group,instances"))
        self.assertTrue(row.startswith("EP_INEQ,all,5,5,0"))

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "reports.jsonl")
            result = self.invoke("verify", "--check", "ENERGY_CS", "--count", "4", "--output", path)
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertEqual(result.stdout, "")
            with open(path, encoding="utf-8") as handle:
                self.assertEqual(len(handle.readlines()), 4)

    def test_bad_config(self):
        result = self.invoke("--c-star", "0", "verify", "--check", "EP_INEQ")
        self.assertEqual(result.exit_code, 2)


class TestReport(CliTestCase):

    def test_empty_report_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            reports = os.path.join(tmp, "empty.jsonl")
            open(reports, "w").close()
            out_dir = os.path.join(tmp, "report")
            result = self.invoke("report", reports, "--out-dir", out_dir)
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertEqual(os.listdir(out_dir), ["summary.csv"])
            with open(os.path.join(out_dir, "summary.csv"), encoding="utf-8") as handle:
                self.assertEqual(len(handle.read().strip().splitlines()), 1)

    def test_missing_report_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            result = self.invoke("report", os.path.join(tmp, "missing.jsonl"), "--out-dir", tmp)
            self.assertEqual(result.exit_code, 2)

    def test_verify_then_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            reports = os.path.join(tmp, "reports.jsonl")
            self.invoke("verify", "--check", "TWO_THIRDS", "--family", "subgroups", "--p-max", "40",
                        "--output", reports)
            out_dir = os.path.join(tmp, "report")
            result = self.invoke("report", reports, "--out-dir", out_dir)
            self.assertEqual(result.exit_code, 0, result.output)
            self.assertEqual(sorted(os.listdir(out_dir)), ["summary.csv", "two_thirds.png"])


if __name__ == '__main__':
    unittest.main()
