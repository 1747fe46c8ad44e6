"""Shipped scenarios: measures, functions and schedules reproducing the mean
value theorem, its corollaries for hypersurfaces and Ahlfors-David regular
sets, and the failure of the comparison theorem in co-dimension 2.

Every scenario is a fixed deterministic construction.
"""


# System imports
from collections import namedtuple
from functools import partial
from math import pi

# NumPy imports
import numpy

# mvlab imports
from mvlab.algebra import NEG_INF
from mvlab.kernel import Dimension, as_points
from mvlab.measure import DiscreteMeasure, Sphere, segment_measure, \
    cantor_ad_set, restrict, sample_hypersurface
from mvlab.potential import Constant, Linear, PlanarPower, RieszFunction, \
    evaluate_at
from mvlab.admissible import Power, PowerLog, Scaled, GaugeSum, Table
from mvlab.meanvalue import EpsSchedule, ProofBoundConfig
from mvlab.counterexample import DIM as COUNTEREXAMPLE_DIM, \
    CounterexampleConfig, u_tilde


# Set up default exports
__all__ = [
    'MeanValueScenario',
    'ComparisonScenario',
    'ProofBoundScenario',
    'segment',
    'segment_scenario',
    'singular_scenario',
    'sphere_scenario',
    'cantor_scenario',
    'segment_proof_scenario',
    'single_atom_scenario',
    'shipped_riesz_functions',
    'shipped_gauges',
    'hypersurface_comparison',
    'cantor_comparison',
    'codim2_comparison',
    'MEAN_VALUE_SCENARIOS',
    'COMPARISON_SCENARIOS',
    'PROOF_BOUND_SCENARIOS',
]


# A convergence study: function, measure, center, schedule, limit, tolerance
MeanValueScenario = namedtuple('MeanValueScenario',
                               ['u', 'mu', 'x0', 'schedule', 'target', 'tol'])

# A comparison: dominating u, dominated v, measure, null set, check points
ComparisonScenario = namedtuple('ComparisonScenario',
                                ['u', 'v', 'mu', 'null_set', 'check_points',
                                 'schedule'])

# A proof bound grid: measure, center, constants, gauge, w and eps samples
ProofBoundScenario = namedtuple('ProofBoundScenario',
                                ['mu', 'x0', 'config', 'gauge', 'w_samples',
                                 'eps_samples'])


def segment(dim, half_length = 1.0, resolution = 100000):
    """Returns the length measure of the x-axis segment
    [-half_length, half_length] in R^dim.
    """
    return segment_measure(dim, half_length, resolution)


def segment_scenario(resolution = 100000):
    """Mean values of x^2 - y^2 over the x-axis segment around the origin,
    where M(eps) = eps^2 / 3.
    """
    return MeanValueScenario(
        PlanarPower(2, 're'),
        segment(2, 1.0, resolution),
        numpy.zeros(2),
        EpsSchedule(0.4, 0.5, 10),
        0.0,
        1e-3
    )


def _singular_function():
    # 50 log|x|, -inf at the origin
    return RieszFunction(2, [[0.0, 0.0]], [2.0 * pi * 50.0],
                         domain_radius = 2.0)


def singular_scenario(resolution = 100000):
    """Mean values of 50 log|x| over the x-axis segment, diverging to -inf.
    """
    return MeanValueScenario(
        _singular_function(),
        segment(2, 1.0, resolution),
        numpy.zeros(2),
        EpsSchedule(0.4, 0.5, 10),
        NEG_INF,
        1e-3
    )


def _sphere_function():
    return RieszFunction(
        3,
        [[0.0, 0.0, 0.3], [0.0, 0.0, 1.8], [1.5, 0.0, 0.0]],
        [1.0, 1.2, 0.8],
        Linear((0.1, -0.2, 0.3)),
        2.5
    )


def sphere_scenario(resolution = 256):
    """Surface means on the unit sphere of R^3 around its north pole, for a
    Riesz function with one atom inside and two outside the sphere.
    """
    rf = _sphere_function()
    x0 = numpy.array([0.0, 0.0, 1.0])
    return MeanValueScenario(
        rf,
        sample_hypersurface(Sphere(3, (0.0, 0.0, 0.0), 1.0), resolution),
        x0,
        EpsSchedule(0.5, 0.8, 7),
        evaluate_at(rf, x0),
        1e-2
    )


def _cantor_function():
    # Atoms sit in the central gap and outside the unit square
    return RieszFunction(
        2,
        [[0.5, 0.5], [-0.5, 0.2]],
        [1.0, 0.5],
        Linear((0.2, 0.1)),
        3.0
    )


def cantor_scenario(level = 10):
    """Mean values over the four-corner Cantor set around its corner
    (0, 0), with radii 4^-1 down to 4^-4.
    """
    rf = _cantor_function()
    return MeanValueScenario(
        rf,
        cantor_ad_set(2, 1, level),
        numpy.zeros(2),
        EpsSchedule(0.25, 0.25, 4),
        evaluate_at(rf, (0.0, 0.0)),
        2e-2
    )


def _w_grid(count, start, ratio):
    angles = 0.7 * numpy.arange(count)
    radii = start * ratio ** numpy.arange(count)
    return numpy.column_stack((radii * numpy.cos(angles),
                               radii * numpy.sin(angles)))


def segment_proof_scenario(resolution = 10000, points = 20):
    """The two-case bound on the plane segment of half length 1 with
    h(r) = r, A = 1.5, B = 2.5 and M = c = 9.
    """
    return ProofBoundScenario(
        segment(2, 1.0, resolution),
        numpy.zeros(2),
        ProofBoundConfig(2.0, 1.5, 1.5, 2.5, 9.0),
        Power(1.0),
        _w_grid(points, 0.02, 1.25),
        list(numpy.geomspace(0.01, 0.4, points))
    )


def single_atom_scenario(points = 20):
    """The two-case bound for a unit point mass at the origin of the plane
    with h(r) = r^0.1, A = 1, B = 1.6 and M = 9^0.1 / 0.1.
    """
    return ProofBoundScenario(
        DiscreteMeasure(2, [[0.0, 0.0]], [1.0], 'atom'),
        numpy.zeros(2),
        ProofBoundConfig(2.0, 1.5, 1.0, 1.6, 9.0 ** 0.1 / 0.1),
        Power(0.1),
        _w_grid(points, 0.02, 1.25),
        list(numpy.geomspace(0.01, 0.4, points))
    )


def _circle_function():
    return RieszFunction(
        2,
        [[0.2, 0.1], [-0.3, 0.4], [1.6, 0.0]],
        [1.0, 0.5, 0.7],
        Linear((0.3, -0.2)),
        2.0
    )


def shipped_riesz_functions():
    """Returns every shipped RieszFunction, keyed by scenario name.
    """
    return {
        'singular': _singular_function(),
        'sphere': _sphere_function(),
        'cantor': _cantor_function(),
        'circle': _circle_function(),
    }


def shipped_gauges(n):
    """Returns the eight shipped gauges for dimension n, keyed by name.
    """
    n = Dimension(n).n
    grid = numpy.geomspace(1e-7, 10.0, 141)
    return {
        'power(n-1.5)': Power(n - 1.5),
        'power(n-1)': Power(n - 1),
        'power(n)': Power(n),
        'power(n-2)': Power(n - 2),
        'power-log(n-1)': PowerLog(n - 1),
        'scaled(3, power(n-1))': Scaled(3.0, Power(n - 1)),
        'power(n-1) + power(n)': GaugeSum([Power(n - 1), Power(n)]),
        'table(r^(n-0.5))': Table(grid, grid ** (n - 0.5)),
    }


class _Ramp(object):
    """The vectorized handle v + weight * max(0, x_1 - offset), which
    dominates v and is subharmonic with it.
    """

    def __init__(self, v, weight, offset = 0.0):
        self._v = v
        self._weight = weight
        self._offset = offset

    def __call__(self, points):
        points = as_points(points)
        return self._v(points) + \
            self._weight * numpy.maximum(0.0, points[:, 0] - self._offset)


class _NearPoint(object):
    """Vectorized predicate marking the points within tol of a point.
    """

    def __init__(self, point, tol = 1e-12):
        self._point = numpy.asarray(point, dtype = numpy.float64)
        self._tol = tol

    def __call__(self, points):
        points = as_points(points)
        return numpy.sqrt(numpy.sum((points - self._point) ** 2, axis = 1)) \
            <= self._tol


def _with_null_atom(mu, point, label):
    # Zero-weight atoms never contribute to ball masses or means
    return DiscreteMeasure(
        mu.dim,
        numpy.vstack((mu.points, [point])),
        numpy.append(mu.weights, 0.0),
        label,
        mu.validity_radius
    )


def hypersurface_comparison(resolution = 4096):
    """Comparison on the unit circle with a mu-null exceptional point.

    v is a Riesz function and u = v + max(0, x_1) / 2; the check points are
    ten points of the circle, the exceptional point among them.
    """
    angle = 0.3
    null_point = numpy.array([numpy.cos(angle), numpy.sin(angle)])
    circle = sample_hypersurface(Sphere(2, (0.0, 0.0), 1.0), resolution)
    mu = _with_null_atom(circle, null_point, circle.label + ' + null point')
    angles = angle + 2.0 * pi * numpy.arange(10) / 10.0
    v = _circle_function()
    return ComparisonScenario(
        _Ramp(v, 0.5),
        v,
        mu,
        _NearPoint(null_point),
        numpy.column_stack((numpy.cos(angles), numpy.sin(angles))),
        EpsSchedule(0.4, 0.5, 5)
    )


def cantor_comparison(level = 6):
    """Comparison on the four-corner Cantor set, with the corner (0, 0) as
    the exceptional point.
    """
    cantor = cantor_ad_set(2, 1, level)
    mu = _with_null_atom(cantor, (0.0, 0.0), cantor.label + ' + null point')
    count = len(cantor)
    picks = [0, count // 3, (2 * count) // 3, count - 1]
    v = _cantor_function()
    return ComparisonScenario(
        _Ramp(v, 0.5, 0.5),
        v,
        mu,
        _NearPoint((0.0, 0.0)),
        numpy.vstack(([[0.0, 0.0]], cantor.points[picks])),
        EpsSchedule(0.25, 0.25, 3)
    )


def codim2_comparison(N = 1000, half_length = 0.1, resolution = 10000):
    """The comparison setting on the x-axis of R^3, where it fails.

    The line measure is restricted to |s| >= 1/N, where the clamped series
    equals its clamp, and a zero-weight atom at the origin forms the null
    set.  The dominating function is the constant clamp, the dominated one
    the clamped series: u >= v holds off the null set, yet u(0) < v(0).
    """
    cfg = CounterexampleConfig(N)
    line = segment(COUNTEREXAMPLE_DIM, half_length, resolution)
    cutoff = 1.0 / cfg.N
    clamped = restrict(line, lambda p: numpy.abs(p[:, 0]) >= cutoff,
                       line.label + ' with |s| >= 1/N')
    origin = numpy.zeros(COUNTEREXAMPLE_DIM)
    mu = _with_null_atom(clamped, origin, clamped.label + ' + origin')
    return ComparisonScenario(
        Constant(cfg.clamp),
        partial(u_tilde, cfg),
        mu,
        _NearPoint(origin),
        origin[numpy.newaxis, :],
        EpsSchedule(0.08, 0.5, 4)
    )


# Named scenarios reachable from the command line
MEAN_VALUE_SCENARIOS = {
    'segment': segment_scenario,
    'singular': singular_scenario,
    'sphere': sphere_scenario,
    'cantor': cantor_scenario,
}

COMPARISON_SCENARIOS = {
    'hypersurface': hypersurface_comparison,
    'cantor': cantor_comparison,
    'codim2': codim2_comparison,
}

PROOF_BOUND_SCENARIOS = {
    'segment': segment_proof_scenario,
    'single-atom': single_atom_scenario,
}
