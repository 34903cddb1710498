from unittest import TestCase

import attr
import numpy as np

from rairs.config import load_scenario
from rairs.service.oracle import (OracleSuite, brute_force_assignment, brute_force_epoch, check_cascade,
                                  check_chained_routing, check_direct_normalization, check_flight_range,
                                  check_literal_cascade, check_los_formula, check_solve_assignment,
                                  check_solve_epoch)
from rairs.utils import substream


class TestBruteForce(TestCase):
    def test_epoch(self):
        gains = np.array([[3.0, 1.0], [1.0, 2.0]])
        self.assertEqual(0.0, brute_force_epoch(gains, 0))
        self.assertEqual(2.0, brute_force_epoch(gains, 1))
        self.assertEqual(3.0, brute_force_epoch(gains, 2))

    def test_assignment(self):
        self.assertEqual(2.0, brute_force_assignment(np.array([[1.0, 5.0], [5.0, 1.0]])))


class TestChecks(TestCase):
    def setUp(self):
        self.scenario = load_scenario()

    def test_cascade(self):
        for k in (0.0, 10.0):
            result = check_cascade(16, k, 50_000, substream(5, int(k)))
            self.assertTrue(result.passed, result.detail)

    def test_literal_cascade_breaks_bound(self):
        self.assertTrue(check_literal_cascade(2304, 10.0).passed)

    def test_direct_normalization(self):
        result = check_direct_normalization(10.0, 200_000, substream(5, 1))
        self.assertTrue(result.passed, result.detail)

    def test_los_formula(self):
        self.assertTrue(all(r.passed for r in check_los_formula()))

    def test_flight_range(self):
        self.assertTrue(check_flight_range(self.scenario.platform).passed)

    def test_flight_range_out_of_bounds(self):
        platform = attr.evolve(self.scenario.platform, battery=1e7)
        self.assertFalse(check_flight_range(platform).passed)

    def test_solvers(self):
        rng = substream(5, 2)
        self.assertTrue(check_solve_epoch(30, rng).passed)
        self.assertTrue(check_solve_assignment(10, rng, n=5).passed)
        self.assertTrue(check_chained_routing(5, self.scenario.geometry, self.scenario.platform, rng).passed)


class TestOracleSuite(TestCase):
    def test_failures_are_logged(self):
        scenario = load_scenario()
        scenario = attr.evolve(scenario, platform=attr.evolve(scenario.platform, battery=1e7))
        with self.assertLogs('rairs.service.oracle', 'ERROR') as cm:
            results = OracleSuite(scenario).run()
        self.assertFalse(next(r for r in results if r.name == 'flight range').passed)
        self.assertTrue(any('FAIL flight range' in line for line in cm.output))

    def test_default_run_checks_hundred_assignments(self):
        results = OracleSuite(load_scenario()).run()
        assignment = next(r for r in results if r.name.startswith('solve_assignment'))
        self.assertEqual('solve_assignment vs permutations (100 7x7)', assignment.name)
        self.assertTrue(assignment.passed, assignment.detail)
