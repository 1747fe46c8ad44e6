"""Provides subharmonic functions in Riesz form,

    u(x) = -(1 / riesz_normalization(n)) * sum_j g(|x - w_j|) m_j + phi(x),

with atomic Riesz measure (points w_j, masses m_j >= 0) and a polynomial
harmonic part phi, together with sphere means, sub-mean certification and the
discrete layer-cake identity.

Every function handle in mvlab is vectorized: it takes an (m, n) array of
points and returns an array of m extended reals.  HarmonicSpec and
RieszFunction instances are such handles.
"""


# System imports
from math import fsum, sqrt, pi
from functools import lru_cache

# NumPy imports
import numpy
from numpy.polynomial.legendre import leggauss

# Six imports
from six import integer_types

# mvlab imports
from mvlab.errors import DomainError, DimensionError, HypothesisError
from mvlab.algebra import NEG_INF, POS_INF, weighted_mean
from mvlab.kernel import Dimension, as_point, as_points, kernel_g, \
    kernel_g_array, riesz_normalization
from mvlab.report import Report


# Set up default exports
__all__ = [
    'DEFAULT_QUAD_ORDER',
    'HarmonicSpec',
    'Constant',
    'Linear',
    'PlanarPower',
    'HarmonicSum',
    'RieszFunction',
    'evaluate_at',
    'eval_riesz',
    'harmonic_eval',
    'laplacian_residual',
    'sphere_mean',
    'sphere_mean_error',
    'submean_check',
    'verify_layer_cake',
    'riesz_mass_bound',
    'harmonic_from_dict',
    'riesz_from_dict',
    'function_from_dict',
]


# Default number of quadrature nodes per angular direction
DEFAULT_QUAD_ORDER = 64

# Coarsest accepted quadrature order
MIN_QUAD_ORDER = 8

# Default tolerance of the sub-mean inequality
DEFAULT_SUBMEAN_TOLERANCE = 1e-6

# Relative tolerance of the layer-cake identity
LAYER_CAKE_TOLERANCE = 1e-12


def evaluate_at(f, x):
    """Evaluates a vectorized function handle at a single point.

    Args:
        f: The function handle
        x: The point

    Returns:
        The value as a float.
    """
    x = as_point(x)
    return float(numpy.asarray(f(x[numpy.newaxis, :])).reshape(-1)[0])


class HarmonicSpec(object):
    """Abstract base class for the polynomial harmonic parts of Riesz-form
    functions.

    Implementers must override `__call__`, `dimension` and `to_dict`.
    """

    def __call__(self, points):
        """Evaluates the harmonic function.

        Args:
            points: An (m, n) array of points

        Returns:
            An array of m values.
        """
        raise NotImplementedError('abstract method')

    def dimension(self):
        """Returns the dimension this harmonic function is tied to, or None
        if it can be evaluated in any dimension.
        """
        raise NotImplementedError('abstract method')

    def check_dimension(self, n):
        """Raises a DimensionError if the function cannot be evaluated in
        dimension n.
        """
        required = self.dimension()
        if required is not None and required != int(n):
            raise DimensionError('harmonic part {0!r} lives in dimension {1}, '
                                 'not {2}'.format(self.to_dict(), required,
                                                  int(n)))

    def to_dict(self):
        """Returns the JSON document representation.
        """
        raise NotImplementedError('abstract method')

    def __add__(self, other):
        return HarmonicSum([self, other])


class Constant(HarmonicSpec):
    def __init__(self, value):
        self._value = float(value)
        if not numpy.isfinite(self._value):
            raise DomainError('constant harmonic part must be finite')

    def __call__(self, points):
        points = as_points(points)
        return numpy.full(points.shape[0], self._value)

    def dimension(self):
        return None

    def to_dict(self):
        return {'kind': 'constant', 'value': self._value}


class Linear(HarmonicSpec):
    """The linear function x -> <a, x>.
    """

    def __init__(self, coefficients):
        self._coefficients = as_point(coefficients)
        if len(self._coefficients) < 2:
            raise DimensionError('linear harmonic part needs at least two '
                                 'coefficients')

    def __call__(self, points):
        points = as_points(points, len(self._coefficients))
        return points.dot(self._coefficients)

    def dimension(self):
        return len(self._coefficients)

    def to_dict(self):
        return {
            'kind': 'linear',
            'coefficients': [float(c) for c in self._coefficients],
        }


class PlanarPower(HarmonicSpec):
    """The real or imaginary part of (x + iy)^m in the plane.
    """

    def __init__(self, m, part = 're'):
        if isinstance(m, bool) or not isinstance(m, integer_types) or m < 1:
            raise DomainError('planar power exponent must be a positive '
                              'integer')
        if part not in ('re', 'im'):
            raise DomainError('planar power part must be "re" or "im"')
        self._m = m
        self._part = part

    def __call__(self, points):
        points = as_points(points, 2)
        base = points[:, 0] + 1j * points[:, 1]

        # Repeated multiplication keeps integer-valued inputs exact
        value = base.copy()
        for _ in range(self._m - 1):
            value = value * base

        return value.real.copy() if self._part == 're' else value.imag.copy()

    def dimension(self):
        return 2

    def to_dict(self):
        return {'kind': 'planar-power', 'm': self._m, 'part': self._part}


class HarmonicSum(HarmonicSpec):
    def __init__(self, terms):
        self._terms = tuple(terms)
        if len(self._terms) == 0:
            raise ValueError('harmonic sum needs at least one term')
        dimensions = set(t.dimension() for t in self._terms) - set([None])
        if len(dimensions) > 1:
            raise DimensionError('harmonic sum mixes dimensions {0}'.format(
                sorted(dimensions)
            ))

    def __call__(self, points):
        result = self._terms[0](points)
        for term in self._terms[1:]:
            result = result + term(points)
        return result

    def dimension(self):
        dimensions = set(t.dimension() for t in self._terms) - set([None])
        return dimensions.pop() if dimensions else None

    def to_dict(self):
        return {'kind': 'sum', 'terms': [t.to_dict() for t in self._terms]}


def harmonic_eval(h, x):
    """Evaluates a HarmonicSpec at a single point.

    Args:
        h: The HarmonicSpec
        x: The point

    Returns:
        The exact polynomial value.
    """
    x = as_point(x)
    h.check_dimension(len(x))
    return evaluate_at(h, x)


def laplacian_residual(h, x, step = 1e-3):
    """Computes the 2n-point discrete Laplacian of a function at a point.

    Args:
        h: The vectorized function handle
        x: The point
        step: The difference step

    Returns:
        sum_i (h(x + s e_i) + h(x - s e_i) - 2 h(x)) / s^2.
    """
    x = as_point(x)
    n = len(x)
    offsets = numpy.vstack((numpy.eye(n), -numpy.eye(n))) * step
    values = numpy.asarray(h(x + offsets), dtype = numpy.float64)
    center = evaluate_at(h, x)
    return float((numpy.sum(values) - 2.0 * n * center) / (step * step))


class RieszFunction(object):
    """A subharmonic function on the ball U = B(0, domain_radius) given by its
    Riesz data.

    Instances are immutable and are vectorized function handles.
    """

    def __init__(self, dim, nu_points = (), masses = (), harmonic = None,
                 domain_radius = 1.0):
        """Initializes a new instance of the RieszFunction class.

        Args:
            dim: The Dimension
            nu_points: The positions of the Riesz measure atoms
            masses: The nonnegative masses of the Riesz measure atoms
            harmonic: The HarmonicSpec, defaulting to zero
            domain_radius: The radius of the ball of validity
        """
        self._dim = Dimension(dim)
        n = self._dim.n
        if not domain_radius > 0:
            raise DomainError('domain radius must be positive')
        self._domain_radius = float(domain_radius)

        # Validate the Riesz measure
        points = numpy.array(nu_points, dtype = numpy.float64).reshape(-1, n)
        masses = numpy.array(masses, dtype = numpy.float64).reshape(-1)
        if points.shape[0] != masses.shape[0]:
            raise ValueError('Riesz measure has {0} points but {1} '
                             'masses'.format(points.shape[0], masses.shape[0]))
        if not numpy.all(numpy.isfinite(points)):
            raise DomainError('Riesz measure atoms must be finite')
        if not numpy.all(numpy.isfinite(masses)) or numpy.any(masses < 0):
            raise DomainError('Riesz measure masses must be finite and '
                              'nonnegative')
        if numpy.any(numpy.sqrt(numpy.sum(points ** 2, axis = 1)) >=
                     self._domain_radius):
            raise DomainError('Riesz measure atoms must lie inside the ball '
                              'of radius {0!r}'.format(self._domain_radius))
        points.setflags(write = False)
        masses.setflags(write = False)
        self._nu_points = points
        self._masses = masses

        # Validate the harmonic part
        self._harmonic = Constant(0.0) if harmonic is None else harmonic
        self._harmonic.check_dimension(n)

        # Cache the normalization
        self._normalization = riesz_normalization(self._dim)

    @property
    def dim(self):
        return self._dim

    @property
    def nu_points(self):
        return self._nu_points

    @property
    def masses(self):
        return self._masses

    @property
    def harmonic(self):
        return self._harmonic

    @property
    def domain_radius(self):
        return self._domain_radius

    def inside(self, points):
        """Returns a boolean mask of the points inside the ball of validity.
        """
        points = as_points(points, self._dim)
        return numpy.sqrt(numpy.sum(points ** 2, axis = 1)) < \
            self._domain_radius

    def potential(self, points):
        """Evaluates the potential part -(1 / normalization) sum_j g m_j.

        Args:
            points: An (m, n) array of points

        Returns:
            An array of m values in [-inf, +inf).
        """
        points = as_points(points, self._dim)
        total = numpy.zeros(points.shape[0])
        for atom, mass in zip(self._nu_points, self._masses):
            if mass == 0:
                continue
            distances = numpy.sqrt(numpy.sum((points - atom) ** 2, axis = 1))
            hit = distances == 0
            kernel = numpy.where(
                hit,
                POS_INF,
                kernel_g_array(self._dim, numpy.where(hit, 1.0, distances))
            )
            total = total + mass * kernel
        return -total / self._normalization

    def __call__(self, points):
        points = as_points(points, self._dim)
        if not numpy.all(self.inside(points)):
            raise DomainError('point outside the ball of validity (radius '
                              '{0!r})'.format(self._domain_radius))
        return self.potential(points) + self._harmonic(points)

    def to_dict(self):
        """Returns the JSON document representation.
        """
        return {
            'dim': self._dim.n,
            'domain_radius': self._domain_radius,
            'nu': [{'p': [float(c) for c in p], 'm': float(m)}
                   for p, m
                   in zip(self._nu_points, self._masses)],
            'harmonic': self._harmonic.to_dict(),
        }


def eval_riesz(rf, x):
    """Evaluates a RieszFunction at a single point.

    Args:
        rf: The RieszFunction
        x: The point, inside the ball of validity

    Returns:
        The value, or NEG_INF when x coincides with an atom of positive mass.
    """
    return evaluate_at(rf, as_point(x, rf.dim))


@lru_cache(maxsize = 64)
def _sphere_rule(n, order, rule):
    # Returns read-only unit-sphere nodes and weights summing to one
    if n == 2:
        angles = numpy.arange(order) * (2.0 * pi / order)
        nodes = numpy.column_stack((numpy.cos(angles), numpy.sin(angles)))
        weights = numpy.full(order, 1.0 / order)
    elif n == 3 and rule == 'product':
        # Gauss-Legendre in height (area is uniform in height) times equal
        # angles
        heights, height_weights = leggauss(order)
        angles = (numpy.arange(2 * order) + 0.5) * (pi / order)
        heights, angles = numpy.meshgrid(heights, angles, indexing = 'ij')
        radii = numpy.sqrt(1.0 - heights ** 2)
        nodes = numpy.column_stack(((radii * numpy.cos(angles)).reshape(-1),
                                    (radii * numpy.sin(angles)).reshape(-1),
                                    heights.reshape(-1)))
        weights = numpy.outer(height_weights / 2.0,
                              numpy.full(2 * order, 0.5 / order)).reshape(-1)
    elif n == 3 and rule == 'spiral':
        # Golden-angle spiral, symmetrized under x -> -x
        count = order * order
        index = numpy.arange(count)
        heights = 1.0 - (2.0 * index + 1.0) / count
        angles = index * (pi * (3.0 - sqrt(5.0)))
        radii = numpy.sqrt(1.0 - heights ** 2)
        half = numpy.column_stack((radii * numpy.cos(angles),
                                   radii * numpy.sin(angles),
                                   heights))
        nodes = numpy.vstack((half, -half))
        weights = numpy.full(2 * count, 0.5 / count)
    elif n == 3:
        raise DomainError('unknown sphere rule {0!r} (expected "product" or '
                          '"spiral")'.format(rule))
    else:
        raise DomainError('sphere means are supported in dimensions 2 and 3 '
                          'only')
    nodes.setflags(write = False)
    weights.setflags(write = False)
    return nodes, weights


def sphere_mean(f, x, r, quad_order = DEFAULT_QUAD_ORDER, rule = 'product'):
    """Approximates the average of f over the sphere of radius r around x.

    In the plane the nodes are quad_order equally spaced angles (trapezoid
    rule).  In space the default rule takes quad_order Gauss-Legendre heights
    times 2 * quad_order equal angles; rule = 'spiral' uses an antipodally
    symmetric golden-angle spiral of 2 * quad_order^2 equal-weight nodes.

    Args:
        f: The vectorized function handle
        x: The center
        r: The radius, positive
        quad_order: The quadrature order, at least 8
        rule: The n = 3 node construction, 'product' or 'spiral'

    Returns:
        The approximate mean (NEG_INF if any node value is -inf).
    """
    if quad_order < MIN_QUAD_ORDER:
        raise DomainError('quadrature order {0} is too coarse (minimum '
                          '{1})'.format(quad_order, MIN_QUAD_ORDER))
    if not r > 0:
        raise DomainError('sphere radius must be positive')
    x = as_point(x)
    nodes, weights = _sphere_rule(len(x), int(quad_order), rule)
    values = numpy.asarray(f(x + r * nodes), dtype = numpy.float64)
    return weighted_mean(values.reshape(-1), weights)


def sphere_mean_error(f, x, r, quad_order = DEFAULT_QUAD_ORDER,
                      rule = 'product'):
    """Computes a sphere mean together with its order-doubling error
    estimate.

    Returns:
        A tuple (mean at 2 * quad_order, |mean at 2q - mean at q|).
    """
    coarse = sphere_mean(f, x, r, quad_order, rule)
    fine = sphere_mean(f, x, r, 2 * quad_order, rule)
    if numpy.isinf(coarse) or numpy.isinf(fine):
        error = 0.0 if coarse == fine else POS_INF
    else:
        error = abs(fine - coarse)
    return fine, error


class SubmeanReport(Report):
    """Result of a sub-mean-value certification at one center.
    """

    kind = 'submean'

    columns = ('radius', 'mean', 'margin', 'quadrature_error')

    def __init__(self, x, value, radii, means, errors, tolerance):
        self.x = x
        self.value = value
        self.radii = list(radii)
        self.means = list(means)
        self.quadrature_errors = list(errors)
        self.tolerance = tolerance
        self.vacuous = value == NEG_INF
        if self.vacuous:
            self.margins = [POS_INF] * len(self.means)
        else:
            self.margins = [m - value for m in self.means]
        self.worst_margin = min(self.margins)
        self.quadrature_warning = any(e >= tolerance / 2.0
                                      for e
                                      in self.quadrature_errors)

    @property
    def passed(self):
        return self.vacuous or self.worst_margin >= -self.tolerance

    def rows(self):
        return list(zip(self.radii, self.means, self.margins,
                        self.quadrature_errors))

    def to_dict(self):
        return {
            'x': [float(c) for c in self.x],
            'value': self.value,
            'radii': self.radii,
            'means': self.means,
            'margins': self.margins,
            'quadrature_errors': self.quadrature_errors,
            'worst_margin': self.worst_margin,
            'tolerance': self.tolerance,
            'vacuous': self.vacuous,
            'quadrature_warning': self.quadrature_warning,
            'pass': self.passed,
        }


def submean_check(rf, x, radii, quad_order = DEFAULT_QUAD_ORDER,
                  tol = DEFAULT_SUBMEAN_TOLERANCE, rule = 'product'):
    """Certifies the sub-mean-value inequality u(x) <= mean of u over
    spheres around x.

    Args:
        rf: The RieszFunction (or any vectorized function handle)
        x: The center
        radii: The sphere radii, all spheres inside the domain of rf
        quad_order: The quadrature order
        tol: The tolerance of the inequality
        rule: The n = 3 node construction

    Returns:
        A SubmeanReport; a center where u = -inf passes vacuously and is
        flagged.
    """
    x = as_point(x)
    radii = [float(r) for r in radii]
    if len(radii) == 0:
        raise ValueError('sub-mean check needs at least one radius')
    value = evaluate_at(rf, x)
    results = [sphere_mean_error(rf, x, r, quad_order, rule) for r in radii]
    return SubmeanReport(x, value, radii, [m for m, _ in results],
                         [e for _, e in results], tol)


class LayerCakeReport(Report):
    """Both sides of the discrete layer-cake identity.

    Unpacks as the tuple (lhs, rhs, gap).
    """

    kind = 'layer-cake'

    columns = ('lhs', 'rhs', 'gap', 'relative_gap')

    def __init__(self, lhs, rhs):
        self.lhs = lhs
        self.rhs = rhs
        self.gap = abs(lhs - rhs)
        self.relative_gap = self.gap / lhs if lhs > 0 else self.gap

    def __iter__(self):
        return iter((self.lhs, self.rhs, self.gap))

    @property
    def passed(self):
        return self.relative_gap <= LAYER_CAKE_TOLERANCE

    def to_dict(self):
        return {
            'lhs': self.lhs,
            'rhs': self.rhs,
            'gap': self.gap,
            'relative_gap': self.relative_gap,
            'pass': self.passed,
        }


def verify_layer_cake(f, mu):
    """Evaluates both sides of int f dmu = int_0^inf mu({f >= t}) dt.

    The right-hand side is integrated exactly: sorted by value, the level set
    measure is a step function whose steps are suffix sums of the weights.

    Args:
        f: A vectorized function handle, nonnegative on every atom
        mu: The DiscreteMeasure

    Returns:
        A LayerCakeReport.
    """
    values = numpy.asarray(f(mu.points), dtype = numpy.float64).reshape(-1)
    if not numpy.all(numpy.isfinite(values)):
        raise DomainError('layer-cake integrand must be finite on every atom')
    if numpy.any(values < 0):
        raise HypothesisError('nonnegative integrand',
                              'integrand is negative at {0} atoms'.format(
                                  int(numpy.sum(values < 0))
                              ))
    weights = mu.weights

    # Left-hand side
    lhs = fsum(weights * values)

    # Right-hand side: steps (v_(k) - v_(k-1)) times mu({f >= v_(k)})
    order = numpy.argsort(values, kind = 'mergesort')
    sorted_values = values[order]
    sorted_weights = weights[order]
    suffix = numpy.cumsum(sorted_weights[::-1])[::-1]
    steps = numpy.diff(numpy.concatenate(([0.0], sorted_values)))
    rhs = fsum(steps * suffix)

    return LayerCakeReport(lhs, rhs)


class RieszMassBoundReport(Report):
    """Checks nu(B(x0, delta)) g(delta) <= sum_w g(|x0 - w|) m(w) over the
    Riesz atoms inside B(x0, 1).
    """

    kind = 'riesz-mass-bound'

    columns = ('delta', 'mass', 'lhs', 'rhs', 'margin')

    def __init__(self, x0, deltas, masses, lhs, rhs):
        self.x0 = x0
        self.deltas = list(deltas)
        self.masses = list(masses)
        self.lhs = list(lhs)
        self.rhs = rhs
        self.margins = [rhs - l for l in self.lhs]
        self.vacuous = rhs == POS_INF

    @property
    def passed(self):
        return all(m >= -1e-12 * max(1.0, abs(self.rhs))
                   for m
                   in self.margins)

    def rows(self):
        return [(d, m, l, self.rhs, g)
                for d, m, l, g
                in zip(self.deltas, self.masses, self.lhs, self.margins)]

    def to_dict(self):
        return {
            'x0': [float(c) for c in self.x0],
            'deltas': self.deltas,
            'masses': self.masses,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margins': self.margins,
            'vacuous': self.vacuous,
            'pass': self.passed,
        }


def riesz_mass_bound(rf, x0, deltas):
    """Checks the Riesz mass bound nu(B(x0, delta)) g(delta) <=
    sum_{w in B(x0, 1)} g(|x0 - w|) m(w) for 0 < delta < 1.

    Every term is nonnegative because g is positive on (0, 1).  An atom at x0
    makes the right-hand side infinite and the bound vacuous.

    Args:
        rf: The RieszFunction
        x0: The center
        deltas: Radii in (0, 1)

    Returns:
        A RieszMassBoundReport.
    """
    x0 = as_point(x0, rf.dim)
    deltas = [float(d) for d in deltas]
    if len(deltas) == 0 or any(not 0 < d < 1 for d in deltas):
        raise DomainError('mass bound radii must lie in (0, 1)')

    # Atoms of positive mass in the unit ball around x0
    distances = numpy.sqrt(numpy.sum((rf.nu_points - x0) ** 2, axis = 1))
    active = (distances < 1.0) & (rf.masses > 0)
    distances = distances[active]
    masses = rf.masses[active]

    # Right-hand side
    if numpy.any(distances == 0):
        rhs = POS_INF
    else:
        rhs = fsum(m * kernel_g(rf.dim, d) for d, m in zip(distances, masses))

    # Left-hand side per radius
    ball_masses = [fsum(masses[distances < d]) for d in deltas]
    lhs = [m * kernel_g(rf.dim, d) for d, m in zip(deltas, ball_masses)]

    return RieszMassBoundReport(x0, deltas, ball_masses, lhs, rhs)


def harmonic_from_dict(document):
    """Builds a HarmonicSpec from its JSON document.
    """
    if not isinstance(document, dict):
        raise ValueError('harmonic document must be a JSON object')
    kind = document.get('kind')
    try:
        if kind == 'constant':
            return Constant(document['value'])
        elif kind == 'linear':
            return Linear(document['coefficients'])
        elif kind == 'planar-power':
            return PlanarPower(document['m'], document.get('part', 're'))
        elif kind == 'sum':
            return HarmonicSum([harmonic_from_dict(t)
                                for t
                                in document['terms']])
    except KeyError as e:
        raise ValueError('harmonic document is missing key {0}'.format(e))
    except (TypeError, AttributeError, IndexError) as e:
        raise ValueError('malformed harmonic document: {0}'.format(e))
    raise ValueError('unknown harmonic kind {0!r}'.format(kind))


def riesz_from_dict(document):
    """Builds a RieszFunction from its JSON document.
    """
    if not isinstance(document, dict):
        raise ValueError('Riesz function document must be a JSON object')
    try:
        dim = Dimension(document['dim'])
        atoms = document.get('nu', [])
        harmonic = document.get('harmonic')
        return RieszFunction(
            dim,
            numpy.array([a['p'] for a in atoms],
                        dtype = numpy.float64).reshape(-1, dim.n),
            [a['m'] for a in atoms],
            None if harmonic is None else harmonic_from_dict(harmonic),
            document['domain_radius']
        )
    except KeyError as e:
        raise ValueError('Riesz function document is missing key {0}'.format(
            e
        ))
    except (TypeError, AttributeError, IndexError) as e:
        raise ValueError('malformed Riesz function document: {0}'.format(
            e
        ))


def function_from_dict(document):
    """Builds a function handle from a JSON document, either a Riesz function
    document or a bare harmonic document (recognized by its "kind" key).
    """
    if isinstance(document, dict) and 'kind' in document:
        return harmonic_from_dict(document)
    return riesz_from_dict(document)
