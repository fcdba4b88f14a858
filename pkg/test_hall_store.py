#!/usr/bin/env python3
"""Tests for the persistent Hall polynomial store"""

import os
import tempfile
import unittest

from exact_arith import LaurentPoly
from fflv_polytope import ExponentVector
from hall_store import class_key, decode_polynomial, encode_polynomial, init_store
from root_system import PositiveRoot

S1 = ExponentVector.unit(PositiveRoot(1, 1))
S2 = ExponentVector.unit(PositiveRoot(2, 2))
P1 = ExponentVector.unit(PositiveRoot(1, 2))


class EncodingTest(unittest.TestCase):
    def test_class_key_is_canonical(self):
        a = ExponentVector({PositiveRoot(2, 2): 1, PositiveRoot(1, 1): 1})
        b = S1 + S2
        self.assertEqual(class_key(a), class_key(b))
        self.assertEqual(class_key(a), '{"1,1":1,"2,2":1}')

    def test_polynomial_encoding(self):
        polynomial = LaurentPoly({0: 1, 1: -2, 3: 5})
        self.assertEqual(decode_polynomial(encode_polynomial(polynomial)), polynomial)
        self.assertEqual(decode_polynomial(encode_polynomial(LaurentPoly())), LaurentPoly())


class StoreTest(unittest.TestCase):
    def setUp(self):
        self.store = init_store('sqlite://')

    def test_missing(self):
        self.assertIsNone(self.store.get(2, S1, S2, P1))

    def test_put_get(self):
        self.store.put(2, S1, S2, P1, LaurentPoly({0: 1}), 1, 5)
        self.assertEqual(self.store.get(2, S1, S2, P1), LaurentPoly({0: 1}))
        self.assertIsNone(self.store.get(2, S2, S1, P1))
        self.assertIsNone(self.store.get(3, S1, S2, P1))

    def test_put_overwrites(self):
        self.store.put(2, S1, S1, S1 + S1, LaurentPoly({0: 1}), 0, 3)
        self.store.put(2, S1, S1, S1 + S1, LaurentPoly({0: 1, 1: 1}), 1, 5)
        self.assertEqual(self.store.get(2, S1, S1, S1 + S1), LaurentPoly({0: 1, 1: 1}))
        self.assertEqual(self.store.stats(), {2: 1})

    def test_stats_and_clear(self):
        self.store.put(2, S1, S2, P1, LaurentPoly({0: 1}), 1, 5)
        self.store.put(2, S2, S1, S1 + S2, LaurentPoly({0: 1}), 1, 5)
        self.store.put(3, S1, S2, P1, LaurentPoly({0: 1}), 1, 5)
        self.assertEqual(self.store.stats(), {2: 2, 3: 1})
        self.assertEqual(self.store.clear(3), 1)
        self.assertEqual(self.store.stats(), {2: 2})
        self.assertEqual(self.store.clear(), 2)
        self.assertEqual(self.store.stats(), {})

    def test_file_database(self):
        with tempfile.TemporaryDirectory() as tmp:
            url = f"sqlite:///{os.path.join(tmp, 'hall.db')}"
            init_store(url).put(2, S1, S2, P1, LaurentPoly({0: 1}), 1, 5)
            reopened = init_store(url)
            self.assertEqual(reopened.get(2, S1, S2, P1), LaurentPoly({0: 1}))
            reopened.engine.dispose()


if __name__ == '__main__':
    unittest.main()
