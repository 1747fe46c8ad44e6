# System imports
import unittest
from math import pi, sqrt

# NumPy imports
import numpy

# mvlab imports
from mvlab.errors import DomainError, DimensionError
from mvlab.measure import DiscreteMeasure, Sphere, HyperplanePatch, \
    GraphPatch, ball_mass, restrict, sample_hypersurface, segment_measure, \
    cantor_ad_set, densities, ad_regularity_check, measure_from_dict


def _pair():
    return DiscreteMeasure(2, [[-0.5, 0.0], [0.5, 0.0]], [1.0, 1.0],
                           'pair')


class TestDiscreteMeasure(unittest.TestCase):
    def test_construction(self):
        mu = _pair()
        self.assertEqual(len(mu), 2)
        self.assertEqual(mu.total_mass(), 2.0)
        self.assertEqual(mu.label, 'pair')
        self.assertFalse(mu.points.flags.writeable)
        self.assertFalse(mu.weights.flags.writeable)

    def test_rejected(self):
        with self.assertRaises(DomainError):
            DiscreteMeasure(2, [[0.0, 0.0]], [-1.0])
        with self.assertRaises(DomainError):
            DiscreteMeasure(2, [[0.0, 0.0]], [0.0])
        with self.assertRaises(ValueError):
            DiscreteMeasure(2, [[0.0, 0.0]], [1.0, 2.0])
        with self.assertRaises(DimensionError):
            DiscreteMeasure(3, [[0.0, 0.0]], [1.0])

    def test_diameter(self):
        self.assertAlmostEqual(_pair().diameter(), 1.0, places = 15)
        circle = sample_hypersurface(Sphere(2, (0.0, 0.0), 1.0), 1000)
        self.assertAlmostEqual(circle.diameter(), 2.0, places = 5)


class TestBallMass(unittest.TestCase):
    def test_open_ball(self):
        mu = _pair()
        self.assertEqual(ball_mass(mu, (0.0, 0.0), 0.6), 2.0)
        self.assertEqual(ball_mass(mu, (0.0, 0.0), 0.5), 0.0)

    def test_segment(self):
        mu = segment_measure(2, 1.0, 10000)
        self.assertAlmostEqual(mu.total_mass(), 2.0, places = 12)
        self.assertLessEqual(abs(ball_mass(mu, (0.0, 0.0), 0.25) - 0.5),
                             2.0 * 2.0 / 10000)

    def test_monotone(self):
        mu = cantor_ad_set(2, 1, 5)
        for index in (0, 17, 500):
            masses = [ball_mass(mu, mu.points[index], e)
                      for e
                      in numpy.linspace(0.01, 1.5, 40)]
            self.assertTrue(all(b >= a for a, b in zip(masses[:-1],
                                                       masses[1:])))

    def test_bad_input(self):
        with self.assertRaises(DomainError):
            ball_mass(_pair(), (0.0, 0.0), 0.0)
        with self.assertRaises(DimensionError):
            ball_mass(_pair(), (0.0, 0.0, 0.0), 1.0)


class TestRestrict(unittest.TestCase):
    def test_half(self):
        restricted = restrict(_pair(), lambda p: p[:, 0] >= 0)
        self.assertEqual(len(restricted), 1)
        self.assertEqual(list(restricted.points[0]), [0.5, 0.0])

    def test_identity(self):
        mu = _pair()
        same = restrict(mu, lambda p: numpy.ones(len(p), dtype = bool))
        self.assertEqual(same.points.tolist(), mu.points.tolist())
        self.assertEqual(same.weights.tolist(), mu.weights.tolist())

    def test_consistency(self):
        mu = segment_measure(2, 1.0, 1000)
        inside = restrict(mu, lambda p: p[:, 0] >= 0)
        outside = restrict(mu, lambda p: p[:, 0] < 0)
        for eps in (0.1, 0.5, 0.9):
            self.assertEqual(ball_mass(inside, (0.0, 0.0), eps) +
                             ball_mass(outside, (0.0, 0.0), eps),
                             ball_mass(mu, (0.0, 0.0), eps))
        self.assertAlmostEqual(ball_mass(inside, (0.0, 0.0), 0.5), 0.5,
                               places = 12)

    def test_trivial(self):
        with self.assertRaises(ValueError):
            restrict(_pair(), lambda p: p[:, 0] > 10)


class TestSurfaces(unittest.TestCase):
    def test_sphere_area(self):
        sphere = Sphere(3, (0.0, 0.0, 0.0), 1.0)
        for resolution in (64, 128):
            mu = sample_hypersurface(sphere, resolution)
            self.assertLess(abs(mu.total_mass() - 4.0 * pi), 0.01 * 4.0 * pi)
            radii = numpy.sqrt(numpy.sum(mu.points ** 2, axis = 1))
            self.assertTrue(numpy.allclose(radii, 1.0, rtol = 0,
                                           atol = 1e-14))

    def test_sphere_convergence(self):
        sphere = Sphere(3, (1.0, 2.0, 3.0), 2.0)
        gaps = [abs(sample_hypersurface(sphere, q).total_mass() -
                    sphere.area())
                for q
                in (16, 32, 64)]
        self.assertLessEqual(gaps[1], gaps[0] / 2.0)
        self.assertLessEqual(gaps[2], gaps[1] / 2.0)

    def test_circle_exact(self):
        mu = sample_hypersurface(Sphere(2, (0.0, 0.0), 2.0), 100)
        self.assertAlmostEqual(mu.total_mass(), 4.0 * pi, places = 12)

    def test_hyperplane(self):
        patch = HyperplanePatch(2, (0.0, 0.0), [[1.0, 0.0]], 1.0)
        mu = sample_hypersurface(patch, 50)
        self.assertAlmostEqual(mu.total_mass(), 2.0, places = 13)
        self.assertTrue(numpy.all(mu.points[:, 1] == 0.0))

    def test_hyperplane_frame(self):
        with self.assertRaises(DomainError):
            HyperplanePatch(3, (0.0, 0.0, 0.0),
                            [[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]], 1.0)
        with self.assertRaises(DomainError):
            HyperplanePatch(2, (0.0, 0.0), [[1.0, 0.0]], 0.0)

    def test_graph(self):
        patch = GraphPatch(2, lambda t: t[:, 0], [(0.0, 1.0)])
        mu = sample_hypersurface(patch, 1000)
        self.assertLess(abs(mu.total_mass() - sqrt(2.0)), 1e-3)

    def test_resolution(self):
        with self.assertRaises(DomainError):
            sample_hypersurface(Sphere(2, (0.0, 0.0), 1.0), 1)


class TestCantor(unittest.TestCase):
    def test_level_one(self):
        mu = cantor_ad_set(2, 1, 1)
        self.assertEqual(len(mu), 4)
        self.assertEqual(sorted(map(tuple, mu.points.tolist())),
                         [(0.125, 0.125), (0.125, 0.875), (0.875, 0.125),
                          (0.875, 0.875)])
        self.assertTrue(numpy.all(mu.weights == 0.25))

    def test_level_three(self):
        mu = cantor_ad_set(2, 1, 3)
        self.assertEqual(len(mu), 64)
        self.assertAlmostEqual(mu.total_mass(), 1.0, places = 14)

    def test_ball_masses(self):
        mu = cantor_ad_set(2, 1, 7)
        for index in (0, 1000, 16383):
            for m in (1, 2, 3, 4):
                eps = 4.0 ** -m
                mass = ball_mass(mu, mu.points[index], eps)
                self.assertLessEqual(mass, 8.0 * eps)
                self.assertGreaterEqual(mass, eps / 8.0)

    def test_unsupported(self):
        with self.assertRaises(DomainError):
            cantor_ad_set(3, 1, 2)
        with self.assertRaises(DomainError):
            cantor_ad_set(2, 1.5, 2)
        with self.assertRaises(DomainError):
            cantor_ad_set(2, 1, 13)


class TestDensities(unittest.TestCase):
    def setUp(self):
        self.segment = segment_measure(2, 1.0, 10000)

    def test_length(self):
        estimate = densities(self.segment, 1.0, (0.0, 0.0),
                             [0.2, 0.1, 0.05])
        self.assertLess(abs(estimate.upper - 1.0), 0.02)
        self.assertLess(abs(estimate.lower - 1.0), 0.02)
        self.assertLessEqual(estimate.lower, estimate.upper)

    def test_overcritical(self):
        estimate = densities(self.segment, 2.0, (0.0, 0.0),
                             [0.2, 0.1, 0.05])
        self.assertTrue(all(f > 1.5 for f in estimate.growth_factors()))

    def test_off_set(self):
        estimate = densities(self.segment, 1.0, (0.0, 0.5),
                             [0.4, 0.2, 0.1])
        self.assertEqual(estimate.upper, 0.0)
        self.assertEqual(estimate.lower, 0.0)

    def test_radii(self):
        with self.assertRaises(ValueError):
            densities(self.segment, 1.0, (0.0, 0.0), [])
        with self.assertRaises(DomainError):
            densities(self.segment, 1.0, (0.0, 0.0), [0.1, 0.2])
        with self.assertRaises(DomainError):
            densities(self.segment, 1.0, (0.0, 0.0), [0.1, 1e-4])


class TestAdRegularity(unittest.TestCase):
    def test_circle(self):
        circle = sample_hypersurface(Sphere(2, (0.0, 0.0), 1.0), 4096)
        report = ad_regularity_check(circle, 1.0, 16,
                                     [0.5, 0.25, 0.125, 0.0625, 0.03125])
        self.assertTrue(report.passed)
        self.assertGreaterEqual(report.c0_lower, 1.9)
        self.assertLessEqual(report.c0_upper, 2.2)
        self.assertEqual(report.sampled_points, 16)

    def test_cantor(self):
        mu = cantor_ad_set(2, 1, 10)
        report = ad_regularity_check(mu, 1.0, 16,
                                     [4.0 ** -m for m in range(2, 7)])
        self.assertTrue(report.passed)
        self.assertTrue(numpy.isfinite(report.c0))

    def test_segment_wrong_dimension(self):
        mu = segment_measure(2, 1.0, 10000)
        report = ad_regularity_check(mu, 2.0, 8, [0.4, 0.2, 0.1, 0.05, 0.025])
        self.assertFalse(report.passed)

    def test_clamped(self):
        corners = DiscreteMeasure(2, cantor_ad_set(2, 1, 1).points,
                                  [0.25] * 4)
        report = ad_regularity_check(corners, 1.0, 10, [0.5])
        self.assertTrue(report.clamped)
        self.assertEqual(report.sampled_points, 4)

    def test_radius_above_diameter(self):
        with self.assertRaises(DomainError):
            ad_regularity_check(_pair(), 1.0, 2, [5.0])


class TestJson(unittest.TestCase):
    def test_round_trip(self):
        mu = DiscreteMeasure(2, [[0.1, 1.0 / 3.0], [2.0 ** -40, -7.25]],
                             [0.3, 1e-17], 'atoms', 0.01)
        copy = measure_from_dict(mu.to_dict())
        self.assertEqual(copy.points.tolist(), mu.points.tolist())
        self.assertEqual(copy.weights.tolist(), mu.weights.tolist())
        self.assertEqual(copy.label, 'atoms')
        self.assertEqual(copy.validity_radius, 0.01)

    def test_generators(self):
        sphere = measure_from_dict({'generator': 'sphere', 'dim': 2,
                                    'center': [0, 0], 'radius': 1,
                                    'resolution': 64})
        self.assertEqual(len(sphere), 64)
        segment = measure_from_dict({'generator': 'segment', 'dim': 3,
                                     'half_length': 0.5, 'resolution': 10})
        self.assertAlmostEqual(segment.total_mass(), 1.0, places = 14)
        cantor = measure_from_dict({'generator': 'cantor', 'level': 2})
        self.assertEqual(len(cantor), 16)
        patch = measure_from_dict({'generator': 'hyperplane-patch', 'dim': 2,
                                   'basepoint': [0, 1], 'frame': [[0, 1]],
                                   'extent': 1, 'resolution': 8})
        self.assertAlmostEqual(patch.total_mass(), 2.0, places = 14)

    def test_malformed(self):
        for document in ([], {'atoms': []}, {'generator': 'torus'},
                         {'generator': 'sphere', 'dim': 2}):
            with self.assertRaises(ValueError):
                measure_from_dict(document)


# Run the tests if this is the main module
if __name__ == '__main__':
    unittest.main()
