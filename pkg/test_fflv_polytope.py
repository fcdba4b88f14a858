#!/usr/bin/env python3
"""Tests for Dyck paths, the polytope and its lattice points"""

import random
import unittest

from fflv_polytope import (
    DyckPathError,
    ExponentVector,
    catalan,
    dyck_paths,
    ff_degree,
    in_polytope,
    lattice_points,
    length_degree,
    minimal_non_members,
    minkowski_check,
    polytope,
    sum_set,
    validate_dyck_path,
)
from root_system import PositiveRoot, dominant_weights, positive_roots, weyl_dim


def e(*pairs):
    """e((1, 2), (2, 3)) -> e12 + e23; a third entry is the multiplicity."""
    mapping = {}
    for pair in pairs:
        root = PositiveRoot(pair[0], pair[1])
        mapping[root] = mapping.get(root, 0) + (pair[2] if len(pair) > 2 else 1)
    return ExponentVector(mapping)


SL4_GENERATORS = {
    e((1, 1)), e((3, 3)),
    e((1, 2, 2)), e((1, 3, 2)), e((2, 2, 2)), e((2, 3, 2)),
    e((1, 2), (1, 3)), e((1, 2), (2, 2)), e((1, 2), (2, 3)), e((1, 3), (2, 3)), e((2, 2), (2, 3)),
}


class ExponentVectorTest(unittest.TestCase):
    def test_zero_entries_dropped(self):
        self.assertEqual(ExponentVector({PositiveRoot(1, 1): 0}), ExponentVector.zero())
        self.assertTrue(ExponentVector.zero().is_zero())

    def test_arithmetic(self):
        s = e((1, 2), (2, 3))
        self.assertEqual(s + e((1, 2)), e((1, 2, 2), (2, 3)))
        self.assertEqual(s - e((2, 3)), e((1, 2)))
        with self.assertRaises(ValueError):
            s - e((1, 1))
        self.assertTrue(e((1, 2)).divides(s))
        self.assertEqual(s.scale(3).total(), 6)

    def test_json(self):
        s = e((1, 3), (2, 2, 2))
        self.assertEqual(s.to_json(), {'1,3': 1, '2,2': 2})
        self.assertEqual(ExponentVector.from_json(s.to_json()), s)

    def test_json_rejects_non_integers(self):
        for bad in ([1, 2], {'1,2': None}, {'1,1': 1.9}, {'1,1': True}, {'1,1': '1'}):
            with self.assertRaises(ValueError, msg=repr(bad)):
                ExponentVector.from_json(bad)

    def test_str(self):
        self.assertEqual(str(e((1, 3), (2, 2))), 'e13 + e22')
        self.assertEqual(str(e((3, 3, 2))), '2*e33')
        self.assertEqual(str(ExponentVector.zero()), '0')


class DyckPathTest(unittest.TestCase):
    def test_single_root_path(self):
        paths = dyck_paths(2, 2, 3)
        self.assertEqual(len(paths), 1)
        self.assertEqual(paths[0].roots, (PositiveRoot(2, 2),))

    def test_short_path(self):
        (path,) = dyck_paths(1, 2, 2)
        self.assertEqual(path.roots, (PositiveRoot(1, 1), PositiveRoot(1, 2), PositiveRoot(2, 2)))

    def test_counts_are_catalan(self):
        for i in range(1, 6):
            for j in range(i, 6):
                self.assertEqual(len(dyck_paths(i, j, 5)), catalan(j - i))

    def test_reversed_endpoints(self):
        with self.assertRaises(DyckPathError):
            dyck_paths(2, 1, 3)

    def test_validate(self):
        path = validate_dyck_path([(1, 1), (1, 2), (2, 2)])
        self.assertEqual((path.start, path.end), (1, 2))
        with self.assertRaises(DyckPathError):
            validate_dyck_path([(1, 1), (2, 2)])
        with self.assertRaises(DyckPathError):
            validate_dyck_path([(1, 2)])


class PolytopeTest(unittest.TestCase):
    def test_rank_one(self):
        description = polytope((3,))
        self.assertEqual(len(description.inequalities), 1)
        self.assertEqual(description.inequalities[0][1], 3)

    def test_rank_two_bounds(self):
        bounds = {tuple(r.key for r in path.roots): bound for path, bound in polytope((1, 1)).inequalities}
        self.assertEqual(bounds, {('1,1',): 1, ('2,2',): 1, ('1,1', '1,2', '2,2'): 2})

    def test_zero_weight(self):
        self.assertTrue(all(bound == 0 for _, bound in polytope((0, 0, 0)).inequalities))
        self.assertEqual(lattice_points((0, 0, 0)), (ExponentVector.zero(),))

    def test_bounds_are_additive(self):
        a, b = (1, 0, 2), (0, 1, 1)
        total = tuple(x + y for x, y in zip(a, b))
        for (path, x), (_, y), (_, z) in zip(polytope(a).inequalities, polytope(b).inequalities,
                                             polytope(total).inequalities):
            self.assertEqual(x + y, z)

    def test_fundamental_points(self):
        points = set(lattice_points((0, 1, 0)))
        expected = {ExponentVector.zero(), e((1, 2)), e((1, 3)), e((2, 2)), e((2, 3)), e((1, 3), (2, 2))}
        self.assertEqual(points, expected)
        self.assertEqual(len(lattice_points((1, 0, 0))), 4)
        self.assertEqual(len(lattice_points((1, 1))), 8)

    def test_point_count_is_weyl_dimension(self):
        for n in range(1, 5):
            for weight in dominant_weights(n, 3):
                self.assertEqual(len(lattice_points(weight)), weyl_dim(weight), weight)

    def test_membership_agrees_with_enumeration(self):
        points = set(lattice_points((1, 1)))
        for s in (e((1, 1)), e((1, 2)), e((1, 1), (2, 2)), e((1, 2, 2)), e((1, 1), (1, 2), (2, 2))):
            self.assertEqual(in_polytope(s, (1, 1)), s in points)
        self.assertFalse(in_polytope(e((3, 3)), (1, 1)))


class MinkowskiTest(unittest.TestCase):
    def test_small_pairs(self):
        for n in range(1, 4):
            weights = dominant_weights(n, 2)
            for a in weights:
                for b in weights:
                    if sum(a) + sum(b) <= 3:
                        self.assertTrue(minkowski_check(a, b), (a, b))

    def test_sum_lands_inside(self):
        a, b = (1, 0, 1), (0, 1, 0)
        total = frozenset(lattice_points((1, 1, 1)))
        self.assertTrue(sum_set(lattice_points(a), lattice_points(b)) <= total)


class DegreeTest(unittest.TestCase):
    def test_rank_three_root_degrees(self):
        expected = {(1, 1): 3, (1, 2): 4, (1, 3): 3, (2, 2): 2, (2, 3): 2, (3, 3): 1}
        for root in positive_roots(3):
            self.assertEqual(ff_degree(ExponentVector.unit(root), 3), expected[tuple(root)])

    def test_examples(self):
        self.assertEqual(ff_degree(ExponentVector.zero(), 3), 0)
        self.assertEqual(ff_degree(e((2, 2), (3, 3, 2)), 3), 4)
        self.assertEqual(ff_degree(e((1, 3), (2, 2)), 3), 5)
        self.assertEqual(length_degree(e((1, 3), (2, 2, 2))), 3)

    def test_additivity(self):
        rng = random.Random(3)
        roots = positive_roots(4)
        for _ in range(50):
            s = ExponentVector.from_sequence([rng.randint(0, 2) for _ in roots], 4)
            t = ExponentVector.from_sequence([rng.randint(0, 2) for _ in roots], 4)
            self.assertEqual(ff_degree(s + t, 4), ff_degree(s, 4) + ff_degree(t, 4))


class IdealGeneratorTest(unittest.TestCase):
    def test_fundamental_rank_three(self):
        generators = minimal_non_members((0, 1, 0))
        self.assertEqual(len(generators), 11)
        self.assertEqual(set(generators), SL4_GENERATORS)

    def test_generators_sit_just_outside(self):
        weight = (1, 1)
        points = set(lattice_points(weight))
        for g in minimal_non_members(weight):
            self.assertNotIn(g, points)
            for root in g.support():
                self.assertIn(g - ExponentVector.unit(root), points)


if __name__ == '__main__':
    unittest.main()
