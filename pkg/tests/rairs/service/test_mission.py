from unittest import TestCase

import attr

from rairs.config import load_scenario
from rairs.service.mission import MissionService


class TestMissionService(TestCase):
    def setUp(self):
        self.scenario = load_scenario()

    def test_default_report(self):
        with self.assertLogs('rairs', 'WARNING'):
            report = MissionService(self.scenario).report()
        self.assertAlmostEqual(4.5, report['mass_total_kg'])
        self.assertAlmostEqual(432_000.0, report['e_grasp_J'])
        self.assertAlmostEqual(38_880.0, report['e_reflect_J'])
        self.assertAlmostEqual(12_946.37, report['flight_range_m'], places=2)
        self.assertTrue(report['flight_feasible'])
        self.assertAlmostEqual(10.5, report['d_min_m'])
        self.assertEqual(2304, report['configured_n_irs'])
        self.assertFalse(report['configured_compliant'])
        self.assertEqual(44, report['sized_n_r'])
        self.assertEqual(1936, report['sized_n_irs'])
        self.assertLessEqual(report['sized_fraunhofer_m'], 10.5)

    def test_compliant_surface(self):
        radio = attr.evolve(self.scenario.radio, n_elements=1936)
        report = MissionService(attr.evolve(self.scenario, radio=radio)).report()
        self.assertTrue(report['configured_compliant'])

    def test_no_admissible_size(self):
        geometry = attr.evolve(self.scenario.geometry, h_site_ut=0.05, h_site_bs=0.05)
        with self.assertLogs('rairs.service.mission', 'WARNING') as cm:
            report = MissionService(attr.evolve(self.scenario, geometry=geometry)).report()
        self.assertNotIn('sized_n_r', report)
        self.assertTrue(any('No admissible IRS size' in line for line in cm.output))

    def test_battery_too_small(self):
        platform = attr.evolve(self.scenario.platform, battery=1000.0)
        report = MissionService(attr.evolve(self.scenario, platform=platform)).report()
        self.assertFalse(report['flight_feasible'])
        self.assertEqual(0.0, report['flight_range_m'])
