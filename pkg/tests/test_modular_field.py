import random
from fractions import Fraction
import unittest

import sympy

from src.arithmetic import (
    FieldElement, Prime, PrimeField, RATIONALS, divisors, factorize, inverse_mod, invert,
    is_prime, multiplicative_order, primitive_root,
)
from src.errors import EmptyDenominator, NotPrime, ZeroInverse


class TestPrimality(unittest.TestCase):

    def test_agrees_with_sympy_below_5000(self):
        for n in range(-3, 5000):
            self.assertEqual(is_prime(n), bool(sympy.isprime(n)), n)

    def test_large_values(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randrange(2 ** 40, 2 ** 62)
            self.assertEqual(is_prime(n), bool(sympy.isprime(n)), n)
        self.assertTrue(is_prime(2 ** 61 - 1))
        # strong pseudoprime to several small bases
        self.assertFalse(is_prime(3215031751))

    def test_prime_rejects_even_and_composite(self):
        for bad in (-7, 0, 1, 2, 4, 9, 91):
            with self.assertRaises(NotPrime):
                Prime(bad)
        self.assertEqual(int(Prime(7)), 7)


class TestFactorization(unittest.TestCase):

    def test_factorize_matches_sympy(self):
        for n in range(1, 3000):
            self.assertEqual(factorize(n), sympy.factorint(n), n)

    def test_divisors_match_sympy(self):
        for n in (1, 2, 12, 96, 360, 498, 1000):
            self.assertEqual(divisors(n), sympy.divisors(n))

    def test_large_prime_cofactor(self):
        q = sympy.nextprime(10 ** 15)
        self.assertEqual(factorize(2 * q), {2: 1, q: 1})
        self.assertEqual(divisors(2 * q), [1, 2, q, 2 * q])

    def test_primitive_root_of_large_prime(self):
        q = sympy.nextprime(10 ** 12)
        g = primitive_root(Prime(q)).residue
        for r in factorize(q - 1):
            self.assertNotEqual(pow(g, (q - 1) // r, q), 1)
        self.assertEqual(multiplicative_order(Prime(q).element(g)), q - 1)

    def test_invalid_input(self):
        with self.assertRaises(ValueError):
            factorize(0)
        with self.assertRaises(ValueError):
            divisors(-1)


class TestFieldElement(unittest.TestCase):

    def test_arithmetic_wraps(self):
        p = Prime(7)
        a, b = p.element(5), p.element(4)
        self.assertEqual(int(a + b), 2)
        self.assertEqual(int(a - b), 1)
        self.assertEqual(int(a * b), 6)
        self.assertEqual(p.element(-1).residue, 6)

    def test_residue_range_checked(self):
        with self.assertRaises(ValueError):
            FieldElement(7, Prime(7))

    def test_inverse(self):
        for q in (3, 5, 7, 13, 101):
            p = Prime(q)
            for x in range(1, q):
                self.assertEqual(int(invert(p.element(x)) * p.element(x)), 1)
                self.assertEqual(inverse_mod(x, q), pow(x, -1, q))

    def test_zero_has_no_inverse(self):
        with self.assertRaises(ZeroInverse):
            invert(Prime(11).element(0))
        with self.assertRaises(ZeroInverse):
            inverse_mod(0, 11)

    def test_multiplicative_order(self):
        for q in (7, 13, 31, 97):
            p = Prime(q)
            for x in range(1, q):
                self.assertEqual(multiplicative_order(p.element(x)), sympy.n_order(x, q))

    def test_primitive_root_is_least(self):
        for q in sympy.primerange(3, 400):
            self.assertEqual(primitive_root(Prime(q)).residue, sympy.primitive_root(q), q)


class TestAmbient(unittest.TestCase):

    def test_prime_field_division(self):
        F = PrimeField(7)
        self.assertEqual(F.div(3, 5), 3 * inverse_mod(5, 7) % 7)
        with self.assertRaises(EmptyDenominator):
            F.div(1, 14)

    def test_rational_division(self):
        self.assertEqual(RATIONALS.div(Fraction(1), Fraction(3)), Fraction(1, 3))
        with self.assertRaises(EmptyDenominator):
            RATIONALS.div(Fraction(1), Fraction(0))
        self.assertEqual(RATIONALS.tag, "exact_rational")
        self.assertEqual(PrimeField(5).tag, "prime_field(5)")


if __name__ == '__main__':
    unittest.main()
