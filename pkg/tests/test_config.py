import os
import tempfile
import unittest
from fractions import Fraction
from unittest import mock

from src.errors import MalformedParams
from src.utils.config import (
    DEFAULT_CONFIG_PATH, PARALLELISM_ENV, HarnessConfig, config_from_dict, load_config, parse_fraction,
)


class TestHarnessConfig(unittest.TestCase):

    def test_defaults(self):
        config = HarnessConfig()
        self.assertEqual(config.c_star, 1)
        self.assertEqual(config.oracle_budget, 10 ** 8)
        self.assertEqual(config.ceiling("TWO_THIRDS"), 4.0)
        self.assertIsNone(config.ceiling("EP_INEQ"))

    def test_validation(self):
        with self.assertRaises(MalformedParams):
            HarnessConfig(c_star=Fraction(0))
        with self.assertRaises(MalformedParams):
            HarnessConfig(parallelism=0)
        with self.assertRaises(MalformedParams):
            HarnessConfig(exp_sums_c=2.0)
        with self.assertRaises(MalformedParams):
            HarnessConfig(moment_tolerance=0.0)

    def test_overrides_skip_none(self):
        config = HarnessConfig().with_overrides(c_star="3/2", parallelism=None, identity_tolerance=1e-6)
        self.assertEqual(config.c_star, Fraction(3, 2))
        self.assertEqual(config.parallelism, HarnessConfig().parallelism)
        self.assertEqual(config.identity_tolerance, 1e-6)

    def test_parse_fraction(self):
        self.assertEqual(parse_fraction("c", " 7/3 "), Fraction(7, 3))
        with self.assertRaises(MalformedParams) as ctx:
            parse_fraction("c_star", "abc")
        self.assertEqual(ctx.exception.field, "c_star")


class TestEnvironment(unittest.TestCase):

    def test_parallelism_from_environment(self):
        with mock.patch.dict(os.environ, {PARALLELISM_ENV: "3"}):
            self.assertEqual(HarnessConfig().parallelism, 3)

    def test_bad_environment_value(self):
        with mock.patch.dict(os.environ, {PARALLELISM_ENV: "many"}):
            with self.assertRaises(MalformedParams):
                HarnessConfig()

    def test_explicit_value_wins(self):
        with mock.patch.dict(os.environ, {PARALLELISM_ENV: "3"}):
            self.assertEqual(HarnessConfig().with_overrides(parallelism=1).parallelism, 1)


class TestLoading(unittest.TestCase):

    def test_shipped_default(self):
        self.assertTrue(DEFAULT_CONFIG_PATH.exists())
        config = load_config()
        self.assertEqual(config.c_star, 1)
        self.assertEqual(config.plunnecke_max_set, 14)
        self.assertEqual(config.ceilings, {"TWO_THIRDS": 4.0, "MISHA_INC": 8.0})
        self.assertFalse(config.log_to_file)

    def test_from_dict(self):
        config = config_from_dict({"c_star": "1/8", "logging": {"file": True, "level": "info"}})
        self.assertEqual(config.c_star, Fraction(1, 8))
        self.assertTrue(config.log_to_file)
        self.assertEqual(config.log_level, "INFO")

    def test_unknown_key(self):
        with self.assertRaises(MalformedParams) as ctx:
            config_from_dict({"colour": "blue"})
        self.assertEqual(ctx.exception.field, "colour")

    def test_yaml_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "config.yaml")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("c_star: '2'\nparallelism: 2\nceilings:\n  TWO_THIRDS: 5\n")
            config = load_config(path)
        self.assertEqual(config.c_star, 2)
        self.assertEqual(config.parallelism, 2)
        self.assertEqual(config.ceiling("TWO_THIRDS"), 5.0)
        self.assertIsNone(config.ceiling("MISHA_INC"))

    def test_missing_and_malformed_files(self):
        with self.assertRaises(MalformedParams):
            load_config("/nonexistent/config.yaml")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.yaml")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("- just\n- a list\n")
            with self.assertRaises(MalformedParams):
                load_config(path)


if __name__ == '__main__':
    unittest.main()
