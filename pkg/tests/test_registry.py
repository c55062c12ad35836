import unittest

from src.checks import REGISTRY, get_check, native_mode, run_check
from src.errors import MalformedParams, UnknownCheck
from src.types import CheckMode, CheckSpec, Verdict
from src.utils.config import HarnessConfig

CHECK_IDS = {
    "PLUNNECKE", "MISHA_INC", "AA_ENERGY", "EP_INEQ", "CHANGE_QG", "ENERGY_CS",
    "TK_SUBGROUP", "HOLDER_Q", "EXP_SUM", "Q_SHIFT_EK", "Q_CAP", "EQA", "TWO_THIRDS",
    "E4_INVARIANT", "BASIS", "BOURGAIN_TK",
    "TK_SMALL_PROD", "TK_REAL", "M_COR", "QG_EK", "Q_CAP_M", "EQA_M", "QM_SHIFT", "ABC", "EXPANDER",
}

ESTIMATES = {
    "MISHA_INC", "AA_ENERGY", "CHANGE_QG", "EXP_SUM", "Q_CAP", "EQA", "TWO_THIRDS",
    "E4_INVARIANT", "BASIS", "BOURGAIN_TK", "M_COR", "EXPANDER",
}


class TestRegistry(unittest.TestCase):

    def test_every_check_is_registered(self):
        self.assertEqual(set(REGISTRY), CHECK_IDS)

    def test_modes(self):
        for check_id in CHECK_IDS:
            expected = CheckMode.ESTIMATE_CONSTANT if check_id in ESTIMATES else CheckMode.ASSERT_EXACT
            self.assertEqual(native_mode(check_id), expected, check_id)

    def test_checks_carry_a_statement(self):
        config = HarnessConfig()
        for check_id in CHECK_IDS:
            check = get_check(check_id, config)
            self.assertTrue(check.statement, check_id)
            self.assertEqual(str(check), f"Check: {check_id}")

    def test_unknown_check(self):
        with self.assertRaises(UnknownCheck):
            get_check("NOPE", HarnessConfig())
        with self.assertRaises(UnknownCheck):
            native_mode("NOPE")
        with self.assertRaises(UnknownCheck):
            run_check(CheckSpec("NOPE"))


class TestRunCheck(unittest.TestCase):

    def test_exact_check(self):
        report = run_check(CheckSpec("ENERGY_CS", {"p": 7, "A": "1,2,4", "B": "1,2,4", "l": 3}))
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertEqual(report.lhs, 15)
        self.assertIsNone(report.elapsed_ms)

    def test_mode_must_match(self):
        with self.assertRaises(MalformedParams) as ctx:
            run_check(CheckSpec("EP_INEQ", {"p": 7, "A": [0, 1], "P": [1], "k": 1}, CheckMode.ESTIMATE_CONSTANT))
        self.assertEqual(ctx.exception.field, "mode")

    def test_timings(self):
        spec = CheckSpec("BASIS", {"p": 7, "order": 6}, CheckMode.ESTIMATE_CONSTANT)
        report = run_check(spec, HarnessConfig(timings=True))
        self.assertIsNotNone(report.elapsed_ms)
        self.assertGreaterEqual(report.elapsed_ms, 0.0)

    def test_trivial_subgroup_is_skipped(self):
        report = run_check(CheckSpec("TK_SUBGROUP", {"p": 7, "order": 1, "k": 2}))
        self.assertEqual(report.verdict, Verdict.SKIPPED)
        self.assertIsNone(report.implied_constant)

    def test_malformed_params_propagate(self):
        with self.assertRaises(MalformedParams):
            run_check(CheckSpec("EP_INEQ", {"p": 7, "A": "1,x", "P": [1], "k": 1}))


if __name__ == '__main__':
    unittest.main()
