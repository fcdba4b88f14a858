#!/usr/bin/env python3
"""Tests for exact scalar arithmetic"""

import random
import unittest
from fractions import Fraction
from math import factorial

from exact_arith import (
    ONE,
    Q,
    ZERO,
    InexactDivisionError,
    LaurentPoly,
    ZeroEvaluationPointError,
    bar_involution,
    interpolate_integer_polynomial,
    laurent_add,
    laurent_divide_exact,
    laurent_eval,
    laurent_mul,
    laurent_neg,
    laurent_pow,
    laurent_sub,
    parse_laurent,
    q_binomial,
    q_factorial,
    q_integer,
    render_laurent,
    substitute_power,
)

Q_INV = LaurentPoly.monomial(-1)


def random_poly(rng: random.Random) -> LaurentPoly:
    return LaurentPoly({rng.randint(-4, 4): rng.randint(-5, 5) for _ in range(rng.randint(0, 4))})


class LaurentArithmeticTest(unittest.TestCase):
    def test_difference_of_squares(self):
        product = laurent_mul(Q + Q_INV, Q - Q_INV)
        self.assertEqual(product, LaurentPoly({2: 1, -2: -1}))
        self.assertEqual(render_laurent(product), 'q^2 - q^-2')

    def test_additive_identity(self):
        a = LaurentPoly({3: 2, -1: -7})
        self.assertEqual(laurent_add(a, ZERO), a)

    def test_shifted_coefficient(self):
        c = LaurentPoly({0: 1, -2: -1, -4: -1, -6: 1})
        self.assertEqual(c * LaurentPoly.monomial(3), LaurentPoly({3: 1, 1: -1, -1: -1, -3: 1}))

    def test_no_zero_coefficients_stored(self):
        a = LaurentPoly({1: 1}) + LaurentPoly({1: -1, 0: 2})
        self.assertEqual(a.terms, {0: 2})
        self.assertTrue(laurent_sub(a, a).is_zero())
        self.assertEqual(LaurentPoly({5: 0}), ZERO)

    def test_ring_axioms(self):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = random_poly(rng), random_poly(rng), random_poly(rng)
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual(a + b, b + a)
            self.assertEqual(laurent_add(a, laurent_neg(a)), ZERO)

    def test_pow(self):
        self.assertEqual(laurent_pow(Q + ONE, 2), LaurentPoly({2: 1, 1: 2, 0: 1}))
        self.assertEqual(laurent_pow(Q, 0), ONE)


class EvaluationTest(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(laurent_eval(Q + Q_INV, 1), 2)
        self.assertEqual(laurent_eval(LaurentPoly.monomial(2), 3), 9)
        self.assertEqual(laurent_eval(Q - Q_INV, 1), 0)
        self.assertEqual(laurent_eval(Q_INV, Fraction(1, 2)), 2)

    def test_zero_point(self):
        with self.assertRaises(ZeroEvaluationPointError):
            laurent_eval(Q, 0)

    def test_homomorphism(self):
        rng = random.Random(11)
        for _ in range(100):
            a, b = random_poly(rng), random_poly(rng)
            x = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
            self.assertEqual(laurent_eval(a * b, x), laurent_eval(a, x) * laurent_eval(b, x))
            self.assertEqual(laurent_eval(a + b, x), laurent_eval(a, x) + laurent_eval(b, x))


class QuantumNumberTest(unittest.TestCase):
    def test_q_integer(self):
        self.assertEqual(q_integer(2), Q + Q_INV)
        self.assertEqual(q_integer(1), ONE)
        self.assertEqual(q_integer(0), ZERO)

    def test_q_factorial(self):
        expected = LaurentPoly({2: 1, 0: 1, -2: 1}) * (Q + Q_INV)
        self.assertEqual(q_factorial(3), expected)
        self.assertEqual(render_laurent(q_factorial(3)), 'q^3 + 2*q + 2*q^-1 + q^-3')
        self.assertEqual(q_factorial(0), ONE)

    def test_q_binomial(self):
        self.assertEqual(q_binomial(2, 1), Q + Q_INV)
        self.assertEqual(q_binomial(5, 0), ONE)
        for m in range(7):
            for k in range(m + 1):
                self.assertEqual(q_binomial(m, k) * q_factorial(k) * q_factorial(m - k), q_factorial(m))

    def test_q_binomial_rejects_k_above_m(self):
        with self.assertRaises(ValueError):
            q_binomial(1, 2)

    def test_classical_limits(self):
        for m in range(8):
            self.assertEqual(laurent_eval(q_integer(m), 1), m)
            self.assertEqual(laurent_eval(q_factorial(m), 1), factorial(m))

    def test_bar_invariance(self):
        for m in range(6):
            self.assertEqual(bar_involution(q_factorial(m)), q_factorial(m))


class DivisionAndInterpolationTest(unittest.TestCase):
    def test_exact_division(self):
        self.assertEqual(laurent_divide_exact(LaurentPoly({2: 1, -2: -1}), Q - Q_INV), Q + Q_INV)
        self.assertEqual(laurent_divide_exact(q_factorial(4), q_factorial(3)), q_integer(4))

    def test_inexact_division(self):
        with self.assertRaises(InexactDivisionError):
            laurent_divide_exact(LaurentPoly({2: 1, 0: 1}), Q + ONE)
        with self.assertRaises(InexactDivisionError):
            laurent_divide_exact(Q, LaurentPoly.constant(2))

    def test_interpolation(self):
        self.assertEqual(interpolate_integer_polynomial([(2, 3), (3, 4)]), LaurentPoly({0: 1, 1: 1}))
        self.assertEqual(interpolate_integer_polynomial([(2, 7), (3, 13), (5, 31)]), LaurentPoly({0: 1, 1: 1, 2: 1}))
        self.assertEqual(interpolate_integer_polynomial([(2, 1), (3, 1), (5, 1)]), ONE)

    def test_interpolation_needs_integer_coefficients(self):
        with self.assertRaises(InexactDivisionError):
            interpolate_integer_polynomial([(0, 0), (2, 1)])

    def test_substitution(self):
        self.assertEqual(substitute_power(LaurentPoly({0: 1, 1: 1}), 2), LaurentPoly({0: 1, 2: 1}))


class RenderingTest(unittest.TestCase):
    def test_render(self):
        self.assertEqual(render_laurent(ZERO), '0')
        self.assertEqual(render_laurent(LaurentPoly({0: -3})), '-3')
        self.assertEqual(render_laurent(LaurentPoly({1: -1, -1: 1})), '-q + q^-1')

    def test_parse_inverts_render(self):
        for text in ['q^2 - q^-2', 'q^3 + 2*q + 2*q^-1 + q^-3', '-q + q^-1', '5', '0']:
            self.assertEqual(render_laurent(parse_laurent(text)), text)

    def test_parse_rejects_other_variables(self):
        with self.assertRaises(ValueError):
            parse_laurent('x^2 + 1')


if __name__ == '__main__':
    unittest.main()
