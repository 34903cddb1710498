import math
from unittest import TestCase

import numpy as np

from rairs.errors import InvalidArgumentError
from rairs.model.geometry import build_layout, check_area, compute_distances, min_irs_distance

HEIGHTS = (8.5, 2.0, 10.5)


class TestBuildLayout(TestCase):
    def setUp(self):
        self.layout = build_layout(9, 9, 20.0, HEIGHTS)

    def test_counts(self):
        self.assertEqual(81, self.layout.grid_count)
        self.assertEqual(100, self.layout.site_count)
        self.assertEqual((81, 2), self.layout.cell_centers.shape)
        self.assertEqual((100, 2), self.layout.candidate_sites.shape)

    def test_positions(self):
        np.testing.assert_allclose([10.0, 10.0], self.layout.cell_centers[0])
        np.testing.assert_allclose([30.0, 10.0], self.layout.cell_centers[1])
        np.testing.assert_allclose([0.0, 0.0], self.layout.candidate_sites[0])
        np.testing.assert_allclose([180.0, 180.0], self.layout.candidate_sites[99])
        np.testing.assert_allclose([90.0, 90.0], self.layout.bs_position)

    def test_index_helpers(self):
        self.assertEqual((1, 1), self.layout.grid_cell(10))
        self.assertEqual((1, 1), self.layout.site_vertex(11))
        self.assertEqual((8, 8), self.layout.grid_cell(80))

    def test_read_only(self):
        with self.assertRaises(ValueError):
            self.layout.cell_centers[0, 0] = 1.0

    def test_invalid_grid(self):
        with self.assertRaises(InvalidArgumentError):
            build_layout(0, 9, 20.0, HEIGHTS)

    def test_invalid_cell_side(self):
        with self.assertRaises(InvalidArgumentError):
            build_layout(9, 9, -1.0, HEIGHTS)

    def test_invalid_heights(self):
        with self.assertRaises(InvalidArgumentError):
            build_layout(9, 9, 20.0, (8.5, 0.0, 10.5))


class TestDistances(TestCase):
    def setUp(self):
        self.layout = build_layout(9, 9, 20.0, HEIGHTS)
        self.distances = compute_distances(self.layout)

    def test_shapes(self):
        self.assertEqual((81,), self.distances.l_bs_ut.shape)
        self.assertEqual((100,), self.distances.r_bs_site.shape)
        self.assertEqual((81, 100), self.distances.d_site_ut.shape)

    def test_center_cell_under_bs(self):
        self.assertEqual(0.0, self.distances.d2_bs_ut[40])
        self.assertAlmostEqual(8.5, self.distances.l_bs_ut[40])

    def test_heights_enter_3d_distances(self):
        self.assertAlmostEqual(math.sqrt(200.0 + 2.0 ** 2), self.distances.r_bs_site.min())
        self.assertAlmostEqual(math.sqrt(200.0 + 10.5 ** 2), self.distances.d_site_ut[0, 0])

    def test_point_reflection_about_bs(self):
        # grid i maps to 80 - i and site j to 99 - j
        np.testing.assert_allclose(self.distances.l_bs_ut[::-1], self.distances.l_bs_ut)
        np.testing.assert_allclose(self.distances.d2_bs_ut[::-1], self.distances.d2_bs_ut)
        np.testing.assert_allclose(self.distances.r_bs_site[::-1], self.distances.r_bs_site)
        np.testing.assert_allclose(self.distances.d_site_ut[::-1, ::-1], self.distances.d_site_ut)

    def test_min_irs_distance(self):
        self.assertAlmostEqual(10.5, min_irs_distance(self.layout, self.distances))

    def test_check_area_mismatch(self):
        with self.assertLogs('rairs.model.geometry', 'WARNING'):
            check_area(self.layout, 160.0)
