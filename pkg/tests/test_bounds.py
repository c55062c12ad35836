import math
import random
import unittest
from fractions import Fraction

from src.bounds import (
    Interval, as_interval, certainly_ge, certainly_le, log2_interval, minimal_constant,
    rational_power, root_bounds,
)


class TestInterval(unittest.TestCase):

    def test_arithmetic_encloses(self):
        a = Interval(Fraction(1), Fraction(2))
        b = Interval(Fraction(-1), Fraction(3))
        self.assertEqual(a + b, Interval(Fraction(0), Fraction(5)))
        self.assertEqual(a - b, Interval(Fraction(-2), Fraction(3)))
        self.assertEqual(a * b, Interval(Fraction(-2), Fraction(6)))
        self.assertEqual(a / 2, Interval(Fraction(1, 2), Fraction(1)))
        self.assertEqual(1 / a, Interval(Fraction(1, 2), Fraction(1)))

    def test_empty_and_zero(self):
        with self.assertRaises(ValueError):
            Interval(Fraction(2), Fraction(1))
        with self.assertRaises(ZeroDivisionError):
            Interval(Fraction(-1), Fraction(1)).reciprocal()

    def test_integer_powers(self):
        self.assertEqual(Interval(Fraction(-2), Fraction(1)) ** 2, Interval(Fraction(0), Fraction(4)))
        self.assertEqual(Interval(Fraction(-2), Fraction(-1)) ** 3, Interval(Fraction(-8), Fraction(-1)))

    def test_fractional_power_needs_positive_base(self):
        with self.assertRaises(ValueError):
            Interval(Fraction(0), Fraction(1)) ** Fraction(1, 2)


class TestRoots(unittest.TestCase):

    def test_root_bounds_enclose(self):
        rng = random.Random(5)
        for _ in range(300):
            x = Fraction(rng.randint(0, 10 ** 12), rng.randint(1, 10 ** 6))
            b = rng.randint(1, 9)
            lo, hi = root_bounds(x, b, bits=64)
            self.assertLessEqual(lo ** b, x)
            self.assertGreaterEqual(hi ** b, x)
            self.assertLessEqual(hi - lo, Fraction(1, 2 ** 63))

    def test_exact_roots(self):
        lo, hi = root_bounds(Fraction(27), 3)
        self.assertEqual(lo, 3)
        self.assertEqual(hi, 3)

    def test_rational_power(self):
        enclosure = rational_power(2, Fraction(3, 2))
        self.assertTrue(enclosure.lo ** 2 <= 8 <= enclosure.hi ** 2)
        inverse = rational_power(4, Fraction(-1, 2))
        self.assertTrue(inverse.lo <= Fraction(1, 2) <= inverse.hi)


class TestLogs(unittest.TestCase):

    def test_powers_of_two_are_exact(self):
        self.assertEqual(log2_interval(1024), Interval.point(10))
        self.assertEqual(log2_interval(Fraction(1, 8)), Interval.point(-3))

    def test_encloses_float_log(self):
        rng = random.Random(2)
        for _ in range(300):
            x = Fraction(rng.randint(1, 10 ** 30), rng.randint(1, 10 ** 10))
            enclosure = log2_interval(x)
            value = math.log2(x.numerator) - math.log2(x.denominator)
            self.assertLessEqual(float(enclosure.lo), value + 1e-9)
            self.assertGreaterEqual(float(enclosure.hi), value - 1e-9)
            self.assertLess(enclosure.width, Fraction(1, 2 ** 30))

    def test_nonpositive(self):
        with self.assertRaises(ValueError):
            log2_interval(0)


class TestComparisons(unittest.TestCase):

    def test_certain_comparisons(self):
        root2 = rational_power(2, Fraction(1, 2))
        self.assertTrue(certainly_le(Fraction(141, 100), root2))
        self.assertFalse(certainly_le(Fraction(142, 100), root2))
        self.assertTrue(certainly_ge(Fraction(142, 100), root2))
        self.assertFalse(certainly_le(root2, root2))
        self.assertTrue(certainly_le(3, 3))
        self.assertEqual(as_interval(3), Interval.point(3))

    def test_minimal_constant(self):
        # least C with C >= 3/4
        found = minimal_constant(lambda c: c >= Fraction(3, 4))
        self.assertGreaterEqual(found, Fraction(3, 4))
        self.assertLess(found - Fraction(3, 4), Fraction(1, 2 ** 20))
        self.assertEqual(minimal_constant(lambda c: True), Fraction(1, 2 ** 40))
        self.assertIsNone(minimal_constant(lambda c: False))


if __name__ == '__main__':
    unittest.main()
