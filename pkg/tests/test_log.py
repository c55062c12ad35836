import logging
import os
import tempfile
import unittest

from src.utils import log


class TestLog(unittest.TestCase):

    def tearDown(self):
        log.setup_logging()

    def read(self, path):
        for handler in log.get_logger().handlers:
            handler.flush()
        with open(path, encoding="utf-8") as handle:
            return handle.read()

    def test_check_events_reach_the_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = log.create_new_log_file(os.path.join(tmp, "run.log"))
            self.assertEqual(log.get_current_log_file(), path)
            log.log_check_event("EP_INEQ", 7, "fail", {"params": {"p": 7}, "elapsed": 0.5})
            log.log_sweep_event(0, "start", {"family": {"generator": "default", "seed": 7}})
            log.log_session_end()
            text = self.read(path)
            log.setup_logging()
        self.assertIn("[Item 007] CHECK EP_INEQ - FAIL | params: {'p': 7} | Elapsed: 0.50s", text)
        self.assertIn("[Item 000] SWEEP - START | Family: default seed=7", text)
        self.assertIn("VERIFICATION SESSION ENDED", text)

    def test_level_and_switches(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = log.create_new_log_file(os.path.join(tmp, "run.log"))
            log.set_log_level(logging.WARNING)
            log.log_check_event("BASIS", 1, "hidden")
            log.disable_logging()
            log.log_check_event("BASIS", 2, "muted", level=logging.ERROR)
            log.enable_logging()
            log.log_check_event("BASIS", 3, "shown", level=logging.WARNING)
            text = self.read(path)
            log.setup_logging()
        self.assertNotIn("HIDDEN", text)
        self.assertNotIn("MUTED", text)
        self.assertIn("[Item 003] CHECK BASIS - SHOWN", text)

    def test_level_names(self):
        self.assertEqual(log.level_from_name("debug"), logging.DEBUG)
        self.assertEqual(log.level_from_name("nonsense"), logging.WARNING)

    def test_console_only_by_default(self):
        log.setup_logging()
        self.assertIsNone(log.get_current_log_file())


if __name__ == '__main__':
    unittest.main()
