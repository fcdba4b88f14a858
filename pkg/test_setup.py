#!/usr/bin/env python3
"""Tests for the environment checker"""

import io
import os
import unittest
from contextlib import redirect_stdout
from unittest import mock

import setup

GOOD_ENV = {
    'PBW_MAX_RANK': '8',
    'PBW_PRIMES': '2,3,5,7,11,13,17,19',
    'PBW_LOG_LEVEL': 'info',
    'HALL_DATABASE_URL': 'sqlite://',
}


def quietly(check):
    with redirect_stdout(io.StringIO()):
        return check()


class VersionTest(unittest.TestCase):
    def test_version_tuple(self):
        self.assertEqual(setup.version_tuple('1.26.4'), (1, 26, 4))
        self.assertEqual(setup.version_tuple('2.0.25rc1'), (2, 0, 25))
        self.assertEqual(setup.version_tuple('1.0.dev0'), (1, 0))

    def test_installed_requirements(self):
        self.assertTrue(quietly(setup.check_packages))

    def test_wrong_numpy_is_reported(self):
        with mock.patch.object(setup.metadata, 'version', return_value='2.1.0'):
            self.assertFalse(quietly(setup.check_packages))


class SettingsTest(unittest.TestCase):
    def test_good_settings(self):
        with mock.patch.dict(os.environ, GOOD_ENV):
            self.assertTrue(quietly(setup.check_settings))

    def test_bad_settings(self):
        for var, value in [('PBW_MAX_RANK', '0'), ('PBW_MAX_TOTAL_DIM', 'six'),
                           ('PBW_PRIMES', '2,4,5'), ('PBW_PRIMES', '2,3,23'), ('PBW_PRIMES', '2'),
                           ('PBW_LOG_LEVEL', 'loud')]:
            with mock.patch.dict(os.environ, {**GOOD_ENV, var: value}):
                self.assertFalse(quietly(setup.check_settings), (var, value))


class StoreAndSmokeTest(unittest.TestCase):
    def test_store_opens(self):
        with mock.patch.dict(os.environ, {'HALL_DATABASE_URL': 'sqlite://'}):
            self.assertTrue(quietly(setup.check_store))

    def test_store_failure(self):
        with mock.patch.dict(os.environ, {'HALL_DATABASE_URL': 'nosuchdialect://x'}):
            self.assertFalse(quietly(setup.check_store))

    def test_sample_computations(self):
        self.assertTrue(quietly(setup.check_smoke))


class MainTest(unittest.TestCase):
    def test_exit_codes(self):
        with mock.patch.dict(os.environ, GOOD_ENV):
            self.assertEqual(quietly(setup.main), 0)
        with mock.patch.dict(os.environ, {**GOOD_ENV, 'PBW_LOG_LEVEL': 'loud'}):
            self.assertEqual(quietly(setup.main), 1)


if __name__ == '__main__':
    unittest.main()
