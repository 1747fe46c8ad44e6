# System imports
import unittest
from math import log, sqrt

# NumPy imports
import numpy

# mvlab imports
from mvlab.errors import DomainError, HypothesisError
from mvlab.algebra import NEG_INF, POS_INF
from mvlab.kernel import kernel_g
from mvlab.measure import DiscreteMeasure, Sphere, sample_hypersurface
from mvlab.potential import Linear, PlanarPower, RieszFunction, evaluate_at
from mvlab.meanvalue import MASS_HYPOTHESIS, NULL_SET_HYPOTHESIS, \
    EpsSchedule, mean_value, convergence_study, f_eps, ProofBoundConfig, \
    proof_bounds_check, comparison_check, density_condition, \
    density_comparison_check, density_mean_value_check
from mvlab.scenarios import segment, segment_scenario, singular_scenario, \
    sphere_scenario, cantor_scenario, segment_proof_scenario, \
    single_atom_scenario, hypersurface_comparison, cantor_comparison, \
    codim2_comparison, shipped_riesz_functions, MEAN_VALUE_SCENARIOS


def _pair(dim = 2):
    points = numpy.zeros((2, dim))
    points[:, 0] = [-0.5, 0.5]
    return DiscreteMeasure(dim, points, [1.0, 1.0], 'pair')


def _study(scenario):
    return convergence_study(scenario.u, scenario.mu, scenario.x0,
                             scenario.schedule, scenario.target, scenario.tol)


def _density_radii():
    return [0.25 * 0.5 ** j for j in range(8)]


class TestSchedule(unittest.TestCase):
    def test_values(self):
        schedule = EpsSchedule(0.4, 0.5, 3)
        self.assertEqual(schedule.values(), [0.4, 0.2, 0.1])
        self.assertEqual(schedule.to_dict(),
                         {'start': 0.4, 'factor': 0.5, 'steps': 3})

    def test_rejected(self):
        for arguments in ((0.0, 0.5, 3), (0.4, 1.0, 3), (0.4, 0.5, 0)):
            with self.assertRaises(DomainError):
                EpsSchedule(*arguments)

    def test_validity(self):
        with self.assertRaises(DomainError):
            EpsSchedule(0.1, 0.5, 5).check(segment(2, 1.0, 1000))


class TestMeanValue(unittest.TestCase):
    def test_odd(self):
        mu = segment(2, 1.0, 1000)
        self.assertAlmostEqual(mean_value(Linear((1.0, 0.0)), mu, (0.0, 0.0),
                                          0.5),
                               0.0, places = 14)

    def test_quadratic(self):
        mu = segment(2, 1.0, 100000)
        for eps in EpsSchedule(0.4, 0.5, 10).values():
            self.assertAlmostEqual(
                mean_value(PlanarPower(2), mu, (0.0, 0.0), eps),
                eps * eps / 3.0,
                delta = 0.05 * eps * eps / 3.0
            )

    def test_sentinel(self):
        mu = DiscreteMeasure(2, [[0.0, 0.0], [0.1, 0.0]], [1.0, 1.0])
        rf = RieszFunction(2, [[0.0, 0.0]], [1.0])
        self.assertEqual(mean_value(rf, mu, (0.0, 0.0), 0.5), NEG_INF)

    def test_empty_ball(self):
        with self.assertRaises(HypothesisError) as context:
            mean_value(Linear((1.0, 0.0)), _pair(), (0.0, 0.0), 0.5)
        self.assertEqual(context.exception.hypothesis, MASS_HYPOTHESIS)

    def test_validity(self):
        with self.assertRaises(DomainError):
            mean_value(Linear((1.0, 0.0)), segment(2, 1.0, 1000), (0.0, 0.0),
                       0.01)


class TestConvergence(unittest.TestCase):
    def test_segment(self):
        report = _study(segment_scenario())
        self.assertTrue(report.converged)
        self.assertTrue(report.passed)
        for eps, error in zip(report.eps_values, report.errors):
            self.assertAlmostEqual(error, eps * eps / 3.0,
                                   delta = 0.05 * eps * eps / 3.0)
        self.assertEqual(len(report.rows()), 10)

    def test_singular(self):
        report = _study(singular_scenario())
        self.assertTrue(report.converged)
        self.assertEqual(report.crossed, [True, True])
        for a, b in zip(report.means[:-1], report.means[1:]):
            self.assertLessEqual(b, a)
        self.assertAlmostEqual(report.means[0], 50.0 * (log(0.4) - 1.0),
                               delta = 0.01)

    def test_sphere(self):
        report = _study(sphere_scenario())
        self.assertTrue(report.converged)
        self.assertLess(report.errors[-1], 1e-2)

    def test_cantor(self):
        report = _study(cantor_scenario())
        self.assertTrue(report.converged)

    def test_unreached_target(self):
        scenario = segment_scenario()
        report = convergence_study(scenario.u, scenario.mu, scenario.x0,
                                   scenario.schedule, 1.0, 1e-3)
        self.assertFalse(report.passed)


class TestUpperSemicontinuity(unittest.TestCase):
    # The limit of the means never exceeds the value at the center
    def test_scenarios(self):
        for name, factory in MEAN_VALUE_SCENARIOS.items():
            scenario = factory()
            report = _study(scenario)
            if scenario.target == NEG_INF:
                for a, b in zip(report.means[:-1], report.means[1:]):
                    self.assertLessEqual(b, a, name)
                self.assertLess(report.limit_estimate,
                                min(report.thresholds), name)
            else:
                self.assertLessEqual(report.limit_estimate,
                                     scenario.target + scenario.tol, name)

    def test_riesz_functions(self):
        schedule = EpsSchedule(0.1, 0.5, 8)
        for name, rf in shipped_riesz_functions().items():
            n = rf.dim.n
            x0 = numpy.zeros(n)
            target = evaluate_at(rf, x0)
            report = convergence_study(rf, segment(n), x0, schedule, target,
                                       1e-3)
            tail = report.means[len(report.means) // 2:]
            if target == NEG_INF:
                for a, b in zip(tail[:-1], tail[1:]):
                    self.assertLessEqual(b, a, name)
            else:
                self.assertLessEqual(max(tail), target + 1e-3, name)


class TestKernelAverage(unittest.TestCase):
    def test_pair(self):
        self.assertAlmostEqual(f_eps(_pair(), (0.0, 0.0), 1.0, (0.0, 1.0), 2),
                               -log(sqrt(1.25)), places = 14)

    def test_far(self):
        value = f_eps(_pair(3), (0.0, 0.0, 0.0), 1.0, (0.0, 0.0, 10.0), 3)
        self.assertAlmostEqual(value, 0.1, delta = 0.01)

    def test_single_atom(self):
        mu = DiscreteMeasure(2, [[0.2, 0.1]], [3.0])
        self.assertAlmostEqual(f_eps(mu, (0.0, 0.0), 0.5, (1.0, 1.0), 2),
                               kernel_g(2, sqrt(0.64 + 0.81)), places = 14)

    def test_on_atom(self):
        self.assertEqual(f_eps(_pair(), (0.0, 0.0), 1.0, (0.5, 0.0), 2),
                         POS_INF)

    def test_empty_ball(self):
        with self.assertRaises(HypothesisError):
            f_eps(_pair(), (0.0, 0.0), 0.5, (0.0, 1.0), 2)


class TestProofBounds(unittest.TestCase):
    def _check(self, scenario):
        return proof_bounds_check(scenario.mu, scenario.x0, 2,
                                  scenario.config, scenario.gauge,
                                  scenario.w_samples, scenario.eps_samples)

    def test_config(self):
        self.assertEqual(ProofBoundConfig(2.0, 1.5, 1.0, 2.0, 1.0).c, 9.0)
        for arguments in ((1.0, 1.5, 1.0, 2.0, 1.0),
                          (2.0, 1.5, 2.0, 1.0, 1.0),
                          (2.0, 1.5, 1.0, 2.0, 0.0)):
            with self.assertRaises(DomainError):
                ProofBoundConfig(*arguments)

    def test_segment(self):
        report = self._check(segment_proof_scenario())
        self.assertTrue(report.precondition_ok)
        self.assertTrue(report.passed)
        self.assertGreater(len(report.entries), 0)
        self.assertIsNotNone(report.worst_case_1)
        self.assertIsNotNone(report.worst_case_2)
        for entry in report.entries:
            self.assertGreaterEqual(entry[6], -1e-9)
        self.assertLess(report.identity_error, 1e-12)

    def test_single_atom(self):
        report = self._check(single_atom_scenario())
        self.assertTrue(report.passed)
        for entry in report.entries:
            self.assertGreaterEqual(entry[6], -1e-9)

    def test_collinear(self):
        # Case 1 for a point mass: the gap is g((p - 1) / p |w|) - g(|w|)
        scenario = single_atom_scenario()
        report = proof_bounds_check(scenario.mu, scenario.x0, 2,
                                    scenario.config, scenario.gauge,
                                    [[0.5, 0.0]], [0.1])
        index, eps, distance, case, value, bound, margin = report.entries[0]
        self.assertEqual(case, 1)
        self.assertAlmostEqual(value, kernel_g(2, 0.5), places = 15)
        self.assertAlmostEqual(margin, kernel_g(2, 0.25) - kernel_g(2, 0.5),
                               places = 14)

    def test_precondition(self):
        scenario = segment_proof_scenario()
        report = proof_bounds_check(scenario.mu, scenario.x0, 2,
                                    ProofBoundConfig(2.0, 1.5, 100.0, 200.0,
                                                     9.0),
                                    scenario.gauge, scenario.w_samples,
                                    scenario.eps_samples)
        self.assertFalse(report.precondition_ok)
        self.assertFalse(report.passed)
        self.assertEqual(report.entries, [])
        self.assertGreater(len(report.diagnostics), 0)

    def test_skipped(self):
        scenario = single_atom_scenario()
        report = proof_bounds_check(scenario.mu, scenario.x0, 2,
                                    scenario.config, scenario.gauge,
                                    [[0.0, 0.0]], [0.1, 0.2])
        self.assertEqual(report.skipped, 2)
        self.assertEqual(report.entries, [])


class TestComparison(unittest.TestCase):
    def _check(self, scenario, u = None, v = None, null_set = None):
        return comparison_check(
            scenario.u if u is None else u,
            scenario.v if v is None else v,
            scenario.mu,
            scenario.null_set if null_set is None else null_set,
            scenario.check_points,
            scenario.schedule
        )

    def test_identical(self):
        scenario = hypersurface_comparison()
        report = self._check(scenario, u = scenario.v)
        self.assertTrue(report.passed)
        for point in report.points:
            self.assertEqual(point['u_means'], point['v_means'])

    def test_hypersurface(self):
        report = self._check(hypersurface_comparison())
        self.assertTrue(report.audit_passed)
        self.assertTrue(report.conclusion_holds)
        self.assertTrue(report.passed)
        self.assertEqual(len(report.points), 10)

    def test_cantor(self):
        report = self._check(cantor_comparison())
        self.assertTrue(report.passed)

    def test_codimension_two(self):
        report = self._check(codim2_comparison())
        self.assertTrue(report.audit_passed)
        self.assertFalse(report.conclusion_holds)
        self.assertFalse(report.passed)
        self.assertEqual(report.failed_points, [[0.0, 0.0, 0.0]])
        point = report.points[0]
        self.assertTrue(point['means_ordered'])
        self.assertEqual(point['u_value'], -2.0)
        self.assertGreater(point['v_value'], -1.0)

        # Only the last link of the chain breaks: lim M_v = -2 < v(0)
        self.assertTrue(point['u_bounds_limit'])
        self.assertAlmostEqual(point['v_limit'], -2.0, delta = 1e-12)
        self.assertFalse(point['v_limit_matches'])
        self.assertEqual(point['failed_link'], 'lim M_v = v(x0)')

    def test_links_when_conclusion_holds(self):
        report = self._check(hypersurface_comparison())
        self.assertEqual(report.link_tolerance, 1e-2)
        for point in report.points:
            self.assertTrue(point['conclusion'])
            self.assertIsNone(point['failed_link'])

    def test_audit(self):
        scenario = hypersurface_comparison()
        report = self._check(scenario, u = scenario.v, v = scenario.u)
        self.assertFalse(report.audit_passed)
        self.assertFalse(report.passed)
        self.assertGreater(len(report.audit_violations), 0)
        self.assertEqual(report.points, [])

    def test_null_mass(self):
        scenario = hypersurface_comparison()
        everything = lambda p: numpy.ones(len(p), dtype = bool)
        with self.assertRaises(HypothesisError) as context:
            self._check(scenario, null_set = everything)
        self.assertEqual(context.exception.hypothesis, NULL_SET_HYPOTHESIS)


class TestDensityCondition(unittest.TestCase):
    def test_off_support(self):
        mu = segment(2, 1.0, 100000)
        rf = RieszFunction(2, [[0.0, 0.6]], [1.0])
        value, finite = density_condition(rf, mu, 1.0, (0.0, 0.0),
                                          _density_radii())
        self.assertEqual(value, 0.0)
        self.assertTrue(finite)

    def test_on_support(self):
        mu = segment(2, 1.0, 100000)
        rf = RieszFunction(2, [[0.5, 0.0]], [2.0])
        value, finite = density_condition(rf, mu, 1.0, (0.0, 0.0),
                                          _density_radii())
        self.assertTrue(finite)
        self.assertAlmostEqual(value, 2.0, delta = 0.04)

    def test_space(self):
        mu = segment(3, 1.0, 100000)
        rf = RieszFunction(3, [[0.5, 0.0, 0.0]], [1.0])
        value, finite = density_condition(rf, mu, 1.5, (0.0, 0.0, 0.0),
                                          _density_radii())
        self.assertTrue(finite)
        self.assertGreater(value, 0.0)

    def test_singular(self):
        mu = segment(2, 1.0, 100000)
        rf = RieszFunction(2, [[0.0, 0.0]], [1.0])
        report = density_condition(rf, mu, 1.0, (0.0, 0.0), _density_radii())
        self.assertFalse(report.finite)
        self.assertTrue(report.singular)
        self.assertEqual(report.value, POS_INF)

    def test_rejected(self):
        mu = segment(3, 1.0, 100000)
        rf = RieszFunction(3, [[0.5, 0.0, 0.0]], [1.0])
        with self.assertRaises(DomainError):
            density_condition(rf, mu, 1.0, (0.0, 0.0, 0.0), _density_radii())
        with self.assertRaises(HypothesisError):
            density_condition(rf, mu, 1.5, (0.0, 0.6, 0.0), _density_radii())

    def test_comparison(self):
        scenario = hypersurface_comparison()
        radii = [0.5 * 0.5 ** j for j in range(5)]
        report = density_comparison_check(
            scenario.u, scenario.v, scenario.mu, scenario.null_set,
            scenario.check_points, scenario.schedule, 1.0, radii
        )
        self.assertIsNotNone(report.comparison)
        self.assertTrue(report.passed)
        for _, condition in report.conditions:
            self.assertEqual(condition.value, 0.0)

    def test_singular_comparison(self):
        circle = sample_hypersurface(Sphere(2, (0.0, 0.0), 1.0), 4096)
        atom = circle.points[0]
        v = RieszFunction(2, [atom], [1.0], domain_radius = 2.0)
        report = density_comparison_check(
            v, v, circle, lambda p: numpy.zeros(len(p), dtype = bool),
            [atom], EpsSchedule(0.4, 0.5, 3), 1.0,
            [0.5 * 0.5 ** j for j in range(5)]
        )
        self.assertIsNone(report.comparison)
        self.assertFalse(report.passed)

    def test_mean_value_follow_up(self):
        mu = segment(2, 1.0, 100000)
        rf = RieszFunction(2, [[0.5, 0.0]], [2.0])
        report = density_mean_value_check(rf, mu, 1.0, (0.0, 0.0),
                                          _density_radii(),
                                          EpsSchedule(0.4, 0.5, 10))
        self.assertTrue(report.condition.finite)
        self.assertIsNotNone(report.study)
        self.assertTrue(report.study.converged)
        self.assertEqual(report.study.target, evaluate_at(rf, (0.0, 0.0)))
        self.assertTrue(report.passed)
        self.assertEqual(len(report.rows()), 10)

    def test_mean_value_singular(self):
        mu = segment(2, 1.0, 100000)
        rf = RieszFunction(2, [[0.0, 0.0]], [1.0])
        report = density_mean_value_check(rf, mu, 1.0, (0.0, 0.0),
                                          _density_radii(),
                                          EpsSchedule(0.4, 0.5, 10))
        self.assertIsNone(report.study)
        self.assertFalse(report.passed)
        self.assertIsNone(report.to_dict()["study"])


# Run the tests if this is the main module
if __name__ == '__main__':
    unittest.main()
