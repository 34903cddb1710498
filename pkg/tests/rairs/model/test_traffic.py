import math
from unittest import TestCase

import attr
import numpy as np

from rairs.model import TrafficModel
from rairs.model.traffic import default_profile, field_from_normals, gate_gain, sample_traffic, standard_normals


def model(**kwargs) -> TrafficModel:
    values = dict(base_mean=702.0, sigma_log=2.8, threshold_fraction=0.01, epochs=12)
    values.update(kwargs)
    return TrafficModel(**values)


class TestProfile(TestCase):
    def test_default_profile_range(self):
        profile = default_profile(12)
        self.assertEqual(12, len(profile))
        self.assertAlmostEqual(1.1, profile[0])
        self.assertAlmostEqual(1.4, profile[3])
        self.assertAlmostEqual(0.8, profile[9])

    def test_custom_profile(self):
        m = model(epochs=2, epoch_profile=[0.8, 1.4])
        np.testing.assert_allclose([561.6, 982.8], m.epoch_means)

    def test_profile_length(self):
        with self.assertRaises(ValueError):
            model(epochs=2, epoch_profile=[1.0])

    def test_profile_bounds(self):
        with self.assertRaises(ValueError):
            model(epochs=1, epoch_profile=[1.5])

    def test_invalid_sigma(self):
        with self.assertRaises(ValueError):
            model(sigma_log=0.0)

    def test_invalid_threshold(self):
        with self.assertRaises(ValueError):
            model(threshold_fraction=1.0)

    def test_epoch_label(self):
        m = model()
        self.assertEqual('08:00', m.epoch_label(0))
        self.assertEqual('19:00', m.epoch_label(11))
        self.assertEqual('00:00', m.epoch_label(16))


class TestField(TestCase):
    def test_median_at_zero_normal(self):
        m = model(epochs=1, epoch_profile=[1.0])
        field = field_from_normals(m, np.zeros((1, 3)))
        np.testing.assert_allclose(702.0 * math.exp(-2.8 ** 2 / 2), field.demand[0])
        np.testing.assert_allclose([7.02], field.threshold)

    def test_mean_preserved(self):
        m = model(sigma_log=1.0)
        field = sample_traffic(m, 20_000, np.random.default_rng(11))
        np.testing.assert_allclose(m.epoch_means, field.demand.mean(axis=1), rtol=0.05)

    def test_lognormal_spread_and_median(self):
        field = sample_traffic(model(epochs=1, epoch_profile=[1.0]), 100_000, np.random.default_rng(5))
        log_demand = np.log(field.demand[0])
        self.assertAlmostEqual(2.8, float(np.std(log_demand)), delta=0.02 * 2.8)
        median = 702.0 * math.exp(-2.8 ** 2 / 2)
        self.assertAlmostEqual(median, float(np.median(field.demand[0])), delta=0.05 * median)

    def test_threshold_tracks_epoch_mean(self):
        field = sample_traffic(model(), 81, np.random.default_rng(3))
        np.testing.assert_allclose(0.01, field.threshold / field.mean)
        np.testing.assert_allclose(model().epoch_means, field.mean)

    def test_shapes(self):
        field = sample_traffic(model(), 81, np.random.default_rng(1))
        self.assertEqual((12, 81), field.demand.shape)
        self.assertEqual(12, field.epochs)
        self.assertTrue(np.all(field.demand > 0))

    def test_larger_sigma_spreads_field(self):
        z = standard_normals(model(), 81, np.random.default_rng(1))
        narrow = field_from_normals(model(sigma_log=1.8), z)
        wide = field_from_normals(model(sigma_log=3.6), z)
        self.assertGreater(np.std(np.log(wide.demand)), np.std(np.log(narrow.demand)))

    def test_temporal_correlation(self):
        m = attr.evolve(model(), temporal_rho=0.9)
        z = standard_normals(m, 20_000, np.random.default_rng(2))
        self.assertAlmostEqual(0.9, float(np.corrcoef(z[0], z[1])[0, 1]), delta=0.02)
        self.assertAlmostEqual(1.0, float(np.std(z[11])), delta=0.03)

    def test_independent_epochs_by_default(self):
        z = standard_normals(model(), 20_000, np.random.default_rng(2))
        self.assertAlmostEqual(0.0, float(np.corrcoef(z[0], z[1])[0, 1]), delta=0.03)


class TestGate(TestCase):
    def test_below_threshold(self):
        self.assertEqual(1.0, gate_gain(2.0, 5.0, 10.0))

    def test_at_threshold(self):
        self.assertEqual(2.0, gate_gain(2.0, 10.0, 10.0))

    def test_broadcast(self):
        np.testing.assert_array_equal([1.0, 3.0], gate_gain(np.array([2.0, 3.0]), np.array([1.0, 20.0]), 10.0))
