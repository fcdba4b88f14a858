#!/usr/bin/env python3
"""Tests for type A root and weight combinatorics"""

import unittest
from fractions import Fraction
from math import comb

from quiver import dimension_vector, euler_form
from fflv_polytope import ExponentVector
from root_system import (
    PositiveRoot,
    RankError,
    RankMismatchError,
    WeightError,
    cartan_matrix,
    check_rank,
    check_weight,
    dominant_weights,
    dual_weight,
    fundamental_to_root,
    fundamental_weight,
    parse_root_key,
    parse_weight,
    positive_roots,
    root_pairing,
    weight_minus_roots_bound,
    weyl_dim,
)


class RootTest(unittest.TestCase):
    def test_root_counts(self):
        self.assertEqual(positive_roots(1), (PositiveRoot(1, 1),))
        for n in range(1, 9):
            self.assertEqual(len(positive_roots(n)), n * (n + 1) // 2)

    def test_canonical_order(self):
        self.assertEqual([r.key for r in positive_roots(2)], ['1,1', '1,2', '2,2'])

    def test_rank_bounds(self):
        with self.assertRaises(RankError):
            check_rank(0)
        with self.assertRaises(RankError):
            check_rank(9)

    def test_parse_root_key(self):
        self.assertEqual(parse_root_key('2,3'), PositiveRoot(2, 3))
        with self.assertRaises(WeightError):
            parse_root_key('3,2')
        with self.assertRaises(WeightError):
            parse_root_key('x')

    def test_cartan_matrix_is_read_only(self):
        matrix = cartan_matrix(3)
        self.assertEqual(matrix.tolist(), [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        with self.assertRaises(ValueError):
            matrix[0, 0] = 5


class PairingTest(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(root_pairing(PositiveRoot(1, 1), PositiveRoot(1, 1)), 2)
        self.assertEqual(root_pairing(PositiveRoot(1, 1), PositiveRoot(2, 2)), -1)
        self.assertEqual(root_pairing(PositiveRoot(1, 2), PositiveRoot(2, 3)), 0)
        self.assertEqual(root_pairing(PositiveRoot(1, 1), PositiveRoot(3, 3)), 0)

    def test_pairing_symmetrizes_euler_form(self):
        for n in range(1, 6):
            for alpha in positive_roots(n):
                for beta in positive_roots(n):
                    d = dimension_vector(ExponentVector.unit(alpha), n)
                    e = dimension_vector(ExponentVector.unit(beta), n)
                    self.assertEqual(root_pairing(alpha, beta, n), euler_form(d, e) + euler_form(e, d))

    def test_rank_checked(self):
        with self.assertRaises(RankMismatchError):
            root_pairing(PositiveRoot(1, 3), PositiveRoot(1, 1), 2)


class WeightTest(unittest.TestCase):
    def test_weyl_dim_examples(self):
        self.assertEqual(weyl_dim((1, 1)), 8)
        self.assertEqual(weyl_dim((0, 1, 0)), 6)
        self.assertEqual(weyl_dim((0, 0)), 1)
        self.assertEqual(weyl_dim((2, 0)), 6)

    def test_fundamental_dimensions(self):
        for n in range(1, 9):
            for k in range(1, n + 1):
                self.assertEqual(weyl_dim(fundamental_weight(k, n)), comb(n + 1, k))

    def test_duality_preserves_dimension(self):
        for weight in dominant_weights(3, 3):
            self.assertEqual(weyl_dim(weight), weyl_dim(dual_weight(weight)))

    def test_weight_minus_roots_bound(self):
        self.assertEqual(weight_minus_roots_bound((1, 0)), (1, 1))
        self.assertEqual(weight_minus_roots_bound((1, 1)), (2, 2))
        self.assertEqual(weight_minus_roots_bound((0, 1, 0)), (1, 2, 1))
        self.assertEqual(weight_minus_roots_bound((0, 0, 0)), (0, 0, 0))

    def test_fundamental_to_root(self):
        self.assertEqual(fundamental_to_root((1, 0)), (Fraction(2, 3), Fraction(1, 3)))

    def test_dominant_weights(self):
        self.assertEqual(dominant_weights(2, 1), [(0, 0), (1, 0), (0, 1)])
        self.assertEqual(len(dominant_weights(3, 2)), 10)

    def test_parse_weight(self):
        self.assertEqual(parse_weight('1,0,2'), (1, 0, 2))
        with self.assertRaises(WeightError):
            parse_weight('1,-1')
        with self.assertRaises(WeightError):
            parse_weight('a,b')
        with self.assertRaises(RankMismatchError):
            parse_weight('1,0', n=3)

    def test_check_weight_rejects_empty(self):
        with self.assertRaises(WeightError):
            check_weight(())

    def test_fundamental_weight_range(self):
        with self.assertRaises(WeightError):
            fundamental_weight(4, 3)


if __name__ == '__main__':
    unittest.main()
