import random
import unittest
from itertools import product

from src.errors import EmptyDenominator, ModulusMismatch, NotPrime, TooSmall
from src.sets import (
    CountVector, ResidueSet, combine, convolve, dilate, indicator, one_minus, product_power,
    quotient_quadruple_Q, ratio_set_R, reflect, rep_function, rotate_mask, sum_mask, translate,
)
from src.subgroups import subgroups
from src.types import ConvolutionMode, SetOp


def brute_combine(A, B, op):
    p = A.modulus
    out = set()
    for a, b in product(A, B):
        if op == SetOp.SUM:
            out.add((a + b) % p)
        elif op == SetOp.DIFFERENCE:
            out.add((a - b) % p)
        elif op == SetOp.PRODUCT:
            out.add(a * b % p)
        elif b:
            out.add(a * pow(b, -1, p) % p)
    return ResidueSet.of(p, out)


def random_set(rng, p, size):
    return ResidueSet.of(p, rng.sample(range(p), min(size, p)))


class TestResidueSet(unittest.TestCase):

    def test_of_normalises(self):
        A = ResidueSet.of(7, [8, 1, -6, 3])
        self.assertEqual(A.members, (1, 3))
        self.assertEqual(str(A), "1,3")
        self.assertIn(10, A)

    def test_members_must_be_sorted_residues(self):
        with self.assertRaises(ValueError):
            ResidueSet(7, (3, 1))
        with self.assertRaises(ValueError):
            ResidueSet(7, (7,))
        with self.assertRaises(NotPrime):
            ResidueSet(9, (1,))

    def test_mask_round_trip(self):
        A = ResidueSet.of(13, [0, 4, 12])
        self.assertEqual(ResidueSet.from_mask(13, A.mask), A)

    def test_set_algebra(self):
        A, B = ResidueSet.of(7, [1, 2]), ResidueSet.of(7, [2, 3])
        self.assertEqual(A.union(B).members, (1, 2, 3))
        self.assertEqual(A.intersection(B).members, (2,))
        self.assertTrue(ResidueSet.of(7, [2]).issubset(A))
        with self.assertRaises(ModulusMismatch):
            A.union(ResidueSet.of(11, [1]))


class TestCombine(unittest.TestCase):

    def test_matches_brute_force(self):
        rng = random.Random(3)
        for _ in range(300):
            p = rng.choice([3, 5, 7, 11, 13, 17, 31])
            A = random_set(rng, p, rng.randint(0, 8))
            B = random_set(rng, p, rng.randint(1, 8))
            if B.members == (0,):
                continue
            for op in SetOp:
                self.assertEqual(combine(A, B, op), brute_combine(A, B, op), (A, B, op))

    def test_rep_function_sums_to_pairs(self):
        rng = random.Random(5)
        for _ in range(100):
            p = rng.choice([5, 7, 23])
            A, B = random_set(rng, p, 5), random_set(rng, p, 4)
            for op in (SetOp.SUM, SetOp.DIFFERENCE, SetOp.PRODUCT):
                r = rep_function(A, B, op)
                self.assertEqual(r.total, len(A) * len(B))
                self.assertEqual(r.support(), combine(A, B, op))

    def test_quotient_by_zero_only(self):
        A = ResidueSet.of(7, [1, 2])
        with self.assertRaises(EmptyDenominator):
            combine(A, ResidueSet.of(7, [0]), SetOp.QUOTIENT)
        self.assertEqual(len(combine(A, ResidueSet(7), SetOp.QUOTIENT)), 0)

    def test_empty_operands(self):
        E = ResidueSet(11)
        self.assertEqual(len(combine(E, ResidueSet.of(11, [1]), SetOp.SUM)), 0)
        self.assertEqual(rep_function(E, E, SetOp.SUM).total, 0)

    def test_masks(self):
        A, B = ResidueSet.of(11, [0, 3, 10]), ResidueSet.of(11, [1, 5])
        self.assertEqual(ResidueSet.from_mask(11, rotate_mask(A.mask, 4, 11)), translate(A, 4))
        self.assertEqual(ResidueSet.from_mask(11, sum_mask(A.mask, B)), combine(A, B, SetOp.SUM))


class TestConvolution(unittest.TestCase):

    def test_star_of_indicators_is_sum_rep(self):
        rng = random.Random(9)
        for _ in range(50):
            A, B = random_set(rng, 13, 6), random_set(rng, 13, 5)
            star = convolve(indicator(A), indicator(B), ConvolutionMode.STAR)
            self.assertEqual(star, rep_function(A, B, SetOp.SUM))

    def test_circle_of_indicators(self):
        rng = random.Random(10)
        A, B = random_set(rng, 11, 5), random_set(rng, 11, 4)
        circle = convolve(indicator(A), indicator(B), ConvolutionMode.CIRCLE)
        # (A o B)(x) counts pairs with b - a = x
        self.assertEqual(circle, rep_function(B, A, SetOp.DIFFERENCE))

    def test_count_vector_validation(self):
        with self.assertRaises(ValueError):
            CountVector(5, (1, 2))
        with self.assertRaises(ValueError):
            CountVector(3, (1, -1, 0))
        f = CountVector.from_mapping(5, {7: 2, 2: 1})
        self.assertEqual(f[2], 3)
        self.assertEqual((f + f).total, 6)


class TestRatioSets(unittest.TestCase):

    def test_small_examples(self):
        pair = ResidueSet.of(7, [0, 1])
        self.assertEqual(quotient_quadruple_Q(pair).members, (0, 1, 6))
        self.assertEqual(ratio_set_R(pair).members, (0, 1))

    def test_too_small(self):
        with self.assertRaises(TooSmall):
            ratio_set_R(ResidueSet.of(7, [3]))
        with self.assertRaises(TooSmall):
            quotient_quadruple_Q(ResidueSet(7))

    def test_R_matches_triples(self):
        rng = random.Random(21)
        for _ in range(60):
            p = rng.choice([7, 11, 13, 29])
            A = random_set(rng, p, rng.randint(2, 7))
            expected = {
                (a1 - a) * pow(a2 - a, -1, p) % p
                for a, a1, a2 in product(A, repeat=3) if a2 != a
            }
            self.assertEqual(set(ratio_set_R(A).members), expected)

    def test_R_is_symmetric_under_one_minus(self):
        rng = random.Random(22)
        for _ in range(60):
            A = random_set(rng, 31, rng.randint(2, 9))
            R = ratio_set_R(A)
            self.assertEqual(one_minus(R), R)

    def test_subgroup_identities(self):
        # exact identities on every subgroup of every prime up to 199
        for p in (q for q in range(3, 200) if all(q % d for d in range(2, int(q ** 0.5) + 1))):
            for G in subgroups(p):
                if len(G) < 2:
                    continue
                Gs = G.members
                Q = quotient_quadruple_Q(Gs)
                R = ratio_set_R(Gs)
                self.assertEqual(combine(Q, Gs, SetOp.PRODUCT), Q)
                self.assertLessEqual(len(Q), len(Gs) ** 3)
                self.assertTrue(R.issubset(Q.intersection(one_minus(Q))))


class TestTransforms(unittest.TestCase):

    def test_transforms(self):
        A = ResidueSet.of(7, [1, 2])
        self.assertEqual(translate(A, 6).members, (0, 1))
        self.assertEqual(dilate(A, 3).members, (3, 6))
        self.assertEqual(reflect(A).members, (5, 6))
        self.assertEqual(one_minus(A).members, (0, 6))

    def test_product_power(self):
        Q = ResidueSet.of(13, [2])
        G = ResidueSet.of(13, [1, 12])
        self.assertEqual(product_power(Q, G, 0), Q)
        self.assertEqual(product_power(Q, G, 2).members, (2, 11))
        with self.assertRaises(ValueError):
            product_power(Q, G, -1)


if __name__ == '__main__':
    unittest.main()
