"""Provides finite atom-cloud measures: surface measures on hypersurface
patches, the four-corner Cantor measure, and the ball-mass, restriction,
density and Ahlfors-David regularity queries built on them.

Balls are open everywhere: an atom at distance exactly eps from a center does
not belong to B(center, eps).

Every generated measure carries a validity radius, the smallest radius at
which its ball masses are trustworthy (atom spacing times VALIDITY_FACTOR).
Density and regularity checks refuse radii below it.
"""


# System imports
from math import fsum, pi, sqrt

# NumPy imports
import numpy

# SciPy imports
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

# Six imports
from six import string_types

# mvlab imports
from mvlab.errors import DomainError, DimensionError
from mvlab.kernel import Dimension, as_point, as_points
from mvlab.report import Report


# Set up default exports
__all__ = [
    'VALIDITY_FACTOR',
    'DiscreteMeasure',
    'SurfaceSpec',
    'Sphere',
    'HyperplanePatch',
    'GraphPatch',
    'DensityEstimate',
    'AdReport',
    'ball_mass',
    'restrict',
    'sample_hypersurface',
    'segment_measure',
    'cantor_ad_set',
    'densities',
    'ad_regularity_check',
    'measure_from_dict',
]


# Safety factor between atom spacing and the smallest trustworthy radius
VALIDITY_FACTOR = 10.0

# Default fraction of a radius schedule treated as its tail
DEFAULT_TAIL_FRACTION = 0.5

# Default tolerance on the fitted log-log slope in regularity checks
DEFAULT_SLOPE_TOLERANCE = 0.5

# Largest supported Cantor construction level
MAX_CANTOR_LEVEL = 12


def _read_only(array):
    array.setflags(write = False)
    return array


class DiscreteMeasure(object):
    """Represents a finite weighted atom cloud in R^n.

    Instances are immutable.
    """

    def __init__(self, dim, points, weights, label = '',
                 validity_radius = 0.0):
        """Initializes a new instance of the DiscreteMeasure class.

        Args:
            dim: The Dimension (or an integer >= 2)
            points: An (m, n) array-like of atom positions
            weights: A length-m array-like of nonnegative weights with
                positive sum
            label: A text tag describing the underlying set
            validity_radius: The smallest radius at which ball masses of this
                measure are trustworthy
        """
        # Validate and store dimension
        self._dim = Dimension(dim)

        # Validate and store atoms
        points = numpy.array(points, dtype = numpy.float64)
        if points.ndim == 1 and points.shape[0] == 0:
            points = points.reshape(0, self._dim.n)
        points = as_points(points, self._dim)
        weights = numpy.array(weights, dtype = numpy.float64).reshape(-1)
        if points.shape[0] != weights.shape[0]:
            raise ValueError('measure has {0} points but {1} weights'.format(
                points.shape[0],
                weights.shape[0]
            ))
        if points.shape[0] == 0:
            raise ValueError('measure must have at least one atom')
        if not numpy.all(numpy.isfinite(points)):
            raise DomainError('atom coordinates must be finite')
        if not numpy.all(numpy.isfinite(weights)) or numpy.any(weights < 0):
            raise DomainError('atom weights must be finite and nonnegative')
        self._points = _read_only(points)
        self._weights = _read_only(weights)
        self._total = fsum(weights)
        if not self._total > 0:
            raise DomainError('measure must have positive total mass')

        # Store metadata
        self._label = label
        if validity_radius < 0:
            raise DomainError('validity radius must be nonnegative')
        self._validity_radius = float(validity_radius)

    @property
    def dim(self):
        """Returns the Dimension of the ambient space.
        """
        return self._dim

    @property
    def points(self):
        """Returns the read-only (m, n) array of atom positions.
        """
        return self._points

    @property
    def weights(self):
        """Returns the read-only array of atom weights.
        """
        return self._weights

    @property
    def label(self):
        """Returns the text tag describing the underlying set.
        """
        return self._label

    @property
    def validity_radius(self):
        """Returns the smallest trustworthy ball radius.
        """
        return self._validity_radius

    def __len__(self):
        return self._points.shape[0]

    def total_mass(self):
        """Returns the total mass (the sum of all weights).
        """
        return self._total

    def ball_mask(self, center, eps):
        """Returns a boolean mask of the atoms in the open ball B(center, eps).

        Args:
            center: The ball center, with the measure's dimension
            eps: The ball radius, which must be positive
        """
        if not eps > 0:
            raise DomainError('ball radius must be positive, got {0}'.format(
                eps
            ))
        center = as_point(center, self._dim)
        offsets = self._points - center
        return numpy.einsum('ij,ij->i', offsets, offsets) < eps * eps

    def diameter(self):
        """Returns the diameter of the atom cloud.

        The exact pairwise maximum is taken over the convex hull vertices.
        Degenerate clouds with more than 4096 atoms fall back to the bounding
        box diagonal, which is an upper bound.
        """
        points = self._points
        if len(points) < 2:
            return 0.0
        candidates = None
        if len(points) > self._dim.n + 1:
            try:
                candidates = points[ConvexHull(points).vertices]
            except Exception:
                candidates = None
        if candidates is None and len(points) <= 4096:
            candidates = points
        if candidates is None or len(candidates) > 4096:
            extent = points.max(axis = 0) - points.min(axis = 0)
            return float(sqrt(numpy.dot(extent, extent)))
        return float(numpy.max(pdist(candidates)))

    def with_label(self, label):
        """Returns a copy of the measure with a different label.
        """
        return DiscreteMeasure(self._dim, self._points, self._weights, label,
                               self._validity_radius)

    def to_dict(self):
        """Returns the JSON document representation of the measure.
        """
        return {
            'dim': self._dim.n,
            'label': self._label,
            'validity_radius': self._validity_radius,
            'atoms': [
                {'p': [float(c) for c in p], 'w': float(w)}
                for p, w
                in zip(self._points, self._weights)
            ],
        }


def ball_mass(mu, center, eps):
    """Computes the mass of the open ball B(center, eps).

    The sum is correctly rounded (math.fsum), so it does not depend on the
    order or partitioning of the atoms.

    Args:
        mu: The DiscreteMeasure
        center: The ball center
        eps: The ball radius, which must be positive

    Returns:
        The total weight of atoms strictly closer than eps to center.
    """
    return fsum(mu.weights[mu.ball_mask(center, eps)])


def restrict(mu, member, label = None):
    """Restricts a measure to a set given by a membership predicate.

    Args:
        mu: The DiscreteMeasure
        member: A vectorized predicate taking an (m, n) array of points and
            returning a length-m boolean array
        label: The label of the result, defaulting to a derived label

    Returns:
        A DiscreteMeasure keeping exactly the atoms satisfying member.
    """
    keep = numpy.asarray(member(mu.points), dtype = bool).reshape(-1)
    if keep.shape[0] != len(mu):
        raise ValueError('membership predicate must return one flag per atom')
    if not numpy.any(keep) or not fsum(mu.weights[keep]) > 0:
        raise ValueError('restriction of {0!r} is trivial (no mass '
                         'left)'.format(mu.label))
    if label is None:
        label = '{0} (restricted)'.format(mu.label)
    return DiscreteMeasure(mu.dim, mu.points[keep], mu.weights[keep], label,
                           mu.validity_radius)


class SurfaceSpec(object):
    """Abstract base class for hypersurface patches that can be sampled into
    surface measures.
    """

    def __init__(self, dim):
        """Initializes a new instance of the SurfaceSpec class.

        Subclasses **must** call this implementation if they override it.

        Args:
            dim: The Dimension of the ambient space
        """
        self._dim = Dimension(dim)

    @property
    def dim(self):
        """Returns the Dimension of the ambient space.
        """
        return self._dim

    def area(self):
        """Returns the exact area of the patch, if known, else None.
        """
        return None

    def sample(self, resolution):
        """Samples the patch into a DiscreteMeasure approximating its surface
        measure.

        Implementers must override this method.

        Args:
            resolution: The number of cells per parameter direction

        Returns:
            A DiscreteMeasure.
        """
        raise NotImplementedError('abstract method')


class Sphere(SurfaceSpec):
    """A round sphere (a circle when n = 2).
    """

    def __init__(self, dim, center, radius):
        """Initializes a new instance of the Sphere class.

        Args:
            dim: The Dimension, 2 or 3
            center: The center point
            radius: The radius, which must be positive
        """
        super(Sphere, self).__init__(dim)
        if self._dim.n not in (2, 3):
            raise DomainError('spheres are supported in dimensions 2 and 3 '
                              'only')
        self._center = as_point(center, self._dim)
        if not radius > 0:
            raise DomainError('sphere radius must be positive')
        self._radius = float(radius)

    def area(self):
        if self._dim.n == 2:
            return 2.0 * pi * self._radius
        return 4.0 * pi * self._radius ** 2

    def sample(self, resolution):
        if resolution < 2:
            raise DomainError('resolution must be at least 2')
        radius = self._radius
        if self._dim.n == 2:
            # Equal arcs, each atom at its arc midpoint with the exact arc
            # length as weight
            angles = (numpy.arange(resolution) + 0.5) * (2.0 * pi / resolution)
            unit = numpy.column_stack((numpy.cos(angles), numpy.sin(angles)))
            weights = numpy.full(resolution, 2.0 * pi * radius / resolution)
            spacing = 2.0 * pi * radius / resolution
        else:
            # Latitude-longitude cells with midpoint area weights
            d_theta = pi / resolution
            d_phi = pi / resolution
            theta = (numpy.arange(resolution) + 0.5) * d_theta
            phi = (numpy.arange(2 * resolution) + 0.5) * d_phi
            theta, phi = numpy.meshgrid(theta, phi, indexing = 'ij')
            theta = theta.reshape(-1)
            phi = phi.reshape(-1)
            unit = numpy.column_stack((numpy.sin(theta) * numpy.cos(phi),
                                       numpy.sin(theta) * numpy.sin(phi),
                                       numpy.cos(theta)))
            weights = radius ** 2 * numpy.sin(theta) * d_theta * d_phi
            spacing = radius * d_theta
        return DiscreteMeasure(
            self._dim,
            self._center + radius * unit,
            weights,
            'sphere(r={0!r}, resolution={1})'.format(radius, resolution),
            VALIDITY_FACTOR * spacing
        )


class HyperplanePatch(SurfaceSpec):
    """A flat patch basepoint + sum_i t_i e_i with |t_i| <= extent, spanned by
    an orthonormal frame of n - 1 vectors.
    """

    def __init__(self, dim, basepoint, frame, extent):
        """Initializes a new instance of the HyperplanePatch class.

        Args:
            dim: The Dimension of the ambient space
            basepoint: The center of the patch
            frame: A sequence of n - 1 orthonormal tangent vectors
            extent: The half-width of the patch along each tangent vector
        """
        super(HyperplanePatch, self).__init__(dim)
        n = self._dim.n
        self._basepoint = as_point(basepoint, n)
        frame = as_points(frame, n)
        if frame.shape[0] != n - 1:
            raise DomainError('hyperplane frame needs {0} tangent vectors, '
                              'got {1}'.format(n - 1, frame.shape[0]))
        if numpy.max(numpy.abs(frame.dot(frame.T) - numpy.eye(n - 1))) > 1e-12:
            raise DomainError('hyperplane frame must be orthonormal')
        self._frame = _read_only(frame)
        if not extent > 0:
            raise DomainError('patch extent must be positive')
        self._extent = float(extent)

    def area(self):
        return (2.0 * self._extent) ** (self._dim.n - 1)

    def sample(self, resolution):
        if resolution < 2:
            raise DomainError('resolution must be at least 2')
        n = self._dim.n
        width = 2.0 * self._extent / resolution
        centers = -self._extent + (numpy.arange(resolution) + 0.5) * width
        grids = numpy.meshgrid(*([centers] * (n - 1)), indexing = 'ij')
        parameters = numpy.column_stack([g.reshape(-1) for g in grids])
        points = self._basepoint + parameters.dot(self._frame)
        weights = numpy.full(parameters.shape[0], width ** (n - 1))
        return DiscreteMeasure(
            self._dim,
            points,
            weights,
            'hyperplane-patch(extent={0!r}, resolution={1})'.format(
                self._extent,
                resolution
            ),
            VALIDITY_FACTOR * width
        )


class GraphPatch(SurfaceSpec):
    """A graph patch {(t, f(t)) : t in box} over the first n - 1 coordinates.
    """

    # Relative step of the central differences used for the area element
    DIFFERENCE_STEP = 1e-6

    def __init__(self, dim, height, box):
        """Initializes a new instance of the GraphPatch class.

        Args:
            dim: The Dimension of the ambient space
            height: A vectorized C^1 function taking an (m, n - 1) array of
                parameters and returning m heights
            box: A sequence of n - 1 (low, high) parameter intervals
        """
        super(GraphPatch, self).__init__(dim)
        box = numpy.array(box, dtype = numpy.float64).reshape(-1, 2)
        if box.shape[0] != self._dim.n - 1:
            raise DomainError('graph patch needs {0} parameter intervals'
                              ''.format(self._dim.n - 1))
        if numpy.any(box[:, 1] <= box[:, 0]):
            raise DomainError('parameter intervals must have positive extent')
        self._height = height
        self._box = _read_only(box)

    def sample(self, resolution):
        if resolution < 2:
            raise DomainError('resolution must be at least 2')
        n = self._dim.n
        widths = (self._box[:, 1] - self._box[:, 0]) / resolution
        axes = [low + (numpy.arange(resolution) + 0.5) * w
                for (low, _), w
                in zip(self._box, widths)]
        grids = numpy.meshgrid(*axes, indexing = 'ij')
        parameters = numpy.column_stack([g.reshape(-1) for g in grids])
        heights = numpy.asarray(self._height(parameters),
                                dtype = numpy.float64).reshape(-1)

        # Area element sqrt(1 + |grad f|^2) by central differences
        gradient_squared = numpy.zeros(parameters.shape[0])
        for axis in range(n - 1):
            step = self.DIFFERENCE_STEP * max(1.0, float(numpy.max(
                numpy.abs(self._box[axis])
            )))
            shift = numpy.zeros(n - 1)
            shift[axis] = step
            forward = numpy.asarray(self._height(parameters + shift),
                                    dtype = numpy.float64).reshape(-1)
            backward = numpy.asarray(self._height(parameters - shift),
                                     dtype = numpy.float64).reshape(-1)
            gradient_squared += ((forward - backward) / (2.0 * step)) ** 2
        area_element = numpy.sqrt(1.0 + gradient_squared)

        weights = numpy.prod(widths) * area_element
        points = numpy.column_stack((parameters, heights))
        spacing = float(numpy.max(widths) * numpy.max(area_element))
        return DiscreteMeasure(
            self._dim,
            points,
            weights,
            'graph-patch(resolution={0})'.format(resolution),
            VALIDITY_FACTOR * spacing
        )


def sample_hypersurface(spec, resolution):
    """Samples a hypersurface patch into an atom measure approximating its
    surface measure.

    Args:
        spec: The SurfaceSpec
        resolution: The number of cells per parameter direction, at least 2

    Returns:
        A DiscreteMeasure whose total mass converges to the patch area.
    """
    return spec.sample(resolution)


def segment_measure(dim, half_length, resolution, axis = 0):
    """Builds the length measure of the segment [-half_length, half_length]
    along a coordinate axis, with resolution midpoint atoms.

    Args:
        dim: The Dimension
        half_length: Half the segment length, positive
        resolution: The number of atoms, at least 2
        axis: The coordinate axis carrying the segment

    Returns:
        A DiscreteMeasure with total mass 2 * half_length.
    """
    dim = Dimension(dim)
    if not half_length > 0:
        raise DomainError('segment half length must be positive')
    if resolution < 2:
        raise DomainError('resolution must be at least 2')
    if not 0 <= axis < dim.n:
        raise DimensionError('axis {0} does not exist in dimension {1}'.format(
            axis, dim.n
        ))
    width = 2.0 * half_length / resolution
    points = numpy.zeros((resolution, dim.n))
    points[:, axis] = -half_length + (numpy.arange(resolution) + 0.5) * width
    return DiscreteMeasure(
        dim,
        points,
        numpy.full(resolution, width),
        'segment(half_length={0!r}, resolution={1})'.format(half_length,
                                                             resolution),
        VALIDITY_FACTOR * width
    )


def cantor_ad_set(n, k, level):
    """Builds the four-corner Cantor measure in the plane.

    The construction keeps the four corner squares of side 1/4 of the unit
    square and recurses; level L cell centers carry weight 4^(-L) each.  The
    limit set is Ahlfors-David regular of dimension 1.

    Args:
        n: The Dimension, which must be 2
        k: The regularity dimension, which must be 1
        level: The construction level, 1 <= level <= 12

    Returns:
        A DiscreteMeasure with 4^level atoms and total mass 1.
    """
    n = Dimension(n).n
    if n != 2 or abs(k - 1.0) > 1e-12:
        raise DomainError('unsupported Ahlfors-David generator (n={0}, '
                          'k={1}); supported generators: four-corner Cantor '
                          'set (n=2, k=1)'.format(n, k))
    if level < 1 or level > MAX_CANTOR_LEVEL:
        raise DomainError('Cantor level must lie in [1, {0}]'.format(
            MAX_CANTOR_LEVEL
        ))

    # Accumulate lower-left cell corners level by level
    corners = numpy.zeros((1, 2))
    offsets = numpy.array([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0], [3.0, 3.0]])
    side = 1.0
    for _ in range(level):
        side /= 4.0
        corners = (corners[:, None, :] + offsets[None, :, :] * side)
        corners = corners.reshape(-1, 2)

    # Place atoms at cell centers
    count = corners.shape[0]
    return DiscreteMeasure(
        n,
        corners + 0.5 * side,
        numpy.full(count, 1.0 / count),
        'cantor(level={0})'.format(level),
        VALIDITY_FACTOR * 3.0 * side
    )


def _check_radii(mu, radii, decreasing = True):
    radii = numpy.array(radii, dtype = numpy.float64).reshape(-1)
    if radii.shape[0] == 0:
        raise ValueError('radius sequence must not be empty')
    if numpy.any(~(radii > 0)):
        raise DomainError('radii must be positive')
    if decreasing and numpy.any(numpy.diff(radii) >= 0):
        raise DomainError('radii must be strictly decreasing')
    if numpy.min(radii) < mu.validity_radius:
        raise DomainError('radius {0!r} is below the validity radius {1!r} of '
                          '{2!r}'.format(float(numpy.min(radii)),
                                         mu.validity_radius,
                                         mu.label))
    return radii


def _tail(sequence, fraction):
    if not 0 < fraction <= 1:
        raise ValueError('tail fraction must lie in (0, 1]')
    count = max(1, int(numpy.ceil(len(sequence) * fraction)))
    return sequence[-count:]


class DensityEstimate(Report):
    """Finite-scale estimates of the upper and lower s-densities of a measure
    at a point.
    """

    kind = 'density'

    def __init__(self, s, point, radii, ratios, tail_fraction):
        """Initializes a new instance of the DensityEstimate class.

        Args:
            s: The density exponent
            point: The point at which densities are estimated
            radii: The strictly decreasing radius schedule
            ratios: ball_mass / (2r)^s at each radius
            tail_fraction: The fraction of the schedule forming its tail
        """
        self.s = float(s)
        self.point = point
        self.radii = radii
        self.ratios = ratios
        self.tail_fraction = tail_fraction
        tail = _tail(ratios, tail_fraction)
        self.upper = float(numpy.max(tail))
        self.lower = float(numpy.min(tail))

    def growth_factors(self):
        """Returns ratio[j + 1] / ratio[j] for consecutive radii, with None
        where the earlier ratio is zero.
        """
        return [None if a == 0 else float(b / a)
                for a, b
                in zip(self.ratios[:-1], self.ratios[1:])]

    @property
    def passed(self):
        return bool(numpy.isfinite(self.upper))

    def to_dict(self):
        return {
            's': self.s,
            'point': [float(c) for c in self.point],
            'radii': [float(r) for r in self.radii],
            'ratios': [float(r) for r in self.ratios],
            'growth_factors': self.growth_factors(),
            'tail_fraction': self.tail_fraction,
            'upper': self.upper,
            'lower': self.lower,
        }


def densities(mu, s, x, radii, tail_fraction = DEFAULT_TAIL_FRACTION):
    """Estimates the upper and lower s-densities of mu at x.

    The limsup and liminf are replaced by the maximum and minimum of
    ball_mass(mu, x, r) / (2r)^s over the tail of the radius schedule.

    Args:
        mu: The DiscreteMeasure
        s: The density exponent, positive
        x: The point
        radii: A strictly decreasing sequence of radii, none below the
            measure's validity radius
        tail_fraction: The fraction of the schedule forming its tail

    Returns:
        A DensityEstimate.
    """
    if not s > 0:
        raise DomainError('density exponent must be positive')
    x = as_point(x, mu.dim)
    radii = _check_radii(mu, radii)
    ratios = numpy.array([ball_mass(mu, x, r) / (2.0 * r) ** s
                          for r
                          in radii])
    return DensityEstimate(s, x, radii, ratios, tail_fraction)


class AdReport(Report):
    """Result of an Ahlfors-David regularity check.
    """

    kind = 'ad-check'

    def __init__(self, k, radii, sample_indices, ratios, slopes, diameter,
                 clamped, slope_tolerance):
        """Initializes a new instance of the AdReport class.

        Args:
            k: The regularity dimension tested
            radii: The radii tested
            sample_indices: Indices of the sampled atoms
            ratios: (samples, radii) array of ball_mass / R^k
            slopes: Fitted log-log slope of ball mass per sampled atom
            diameter: The diameter of the atom cloud
            clamped: Whether the requested sample count was clamped
            slope_tolerance: Allowed deviation of the slopes from k
        """
        self.k = float(k)
        self.radii = radii
        self.sample_indices = sample_indices
        self.ratios = ratios
        self.slopes = slopes
        self.diameter = float(diameter)
        self.clamped = clamped
        self.slope_tolerance = slope_tolerance
        self.c0_lower = float(numpy.min(ratios))
        self.c0_upper = float(numpy.max(ratios))
        if self.c0_lower > 0:
            self.c0 = max(self.c0_upper, 1.0 / self.c0_lower)
        else:
            self.c0 = float('inf')
        self._passed = bool(
            numpy.isfinite(self.c0) and
            numpy.all(numpy.abs(slopes - self.k) <= slope_tolerance)
        )

    @property
    def passed(self):
        return self._passed

    @property
    def sampled_points(self):
        """Returns the number of sampled atoms.
        """
        return len(self.sample_indices)

    def to_dict(self):
        return {
            'k': self.k,
            'radii': [float(r) for r in self.radii],
            'c0_lower': self.c0_lower,
            'c0_upper': self.c0_upper,
            'c0': self.c0,
            'pass': self.passed,
            'sampled_points': self.sampled_points,
            'sample_count_clamped': self.clamped,
            'diameter': self.diameter,
            'slopes': [float(s) for s in self.slopes],
            'slope_tolerance': self.slope_tolerance,
        }


def ad_regularity_check(mu, k, sample_count, radii,
                        slope_tolerance = DEFAULT_SLOPE_TOLERANCE):
    """Tests the Ahlfors-David condition C0^-1 R^k <= mass <= C0 R^k on a
    deterministic sample of atoms.

    Args:
        mu: The DiscreteMeasure
        k: The regularity dimension, positive
        sample_count: The number of atoms to sample; clamped (and flagged) if
            it exceeds the number of positively-weighted atoms
        radii: The radii to test, between the validity radius and the
            diameter of the atom cloud
        slope_tolerance: Allowed deviation of the fitted log-log slopes from k

    Returns:
        An AdReport.
    """
    # Validate parameters
    if not k > 0:
        raise DomainError('regularity dimension must be positive')
    if sample_count < 1:
        raise DomainError('sample count must be positive')
    radii = numpy.sort(_check_radii(mu, radii, decreasing = False))[::-1]
    diameter = mu.diameter()
    if radii[0] > diameter:
        raise DomainError('radius {0!r} exceeds the diameter {1!r} of the '
                          'atom cloud'.format(float(radii[0]), diameter))

    # Choose evenly spaced sample atoms among those with positive weight
    candidates = numpy.nonzero(mu.weights > 0)[0]
    clamped = sample_count > len(candidates)
    count = min(sample_count, len(candidates))
    picks = numpy.unique(numpy.round(
        numpy.linspace(0, len(candidates) - 1, count)
    ).astype(int))
    indices = candidates[picks]

    # Evaluate masses
    masses = numpy.array([[ball_mass(mu, mu.points[i], r) for r in radii]
                          for i
                          in indices])
    ratios = masses / radii[None, :] ** k

    # Fit log-log slopes where there are at least two radii
    if len(radii) >= 2:
        log_radii = numpy.log(radii)
        slopes = numpy.array([numpy.polyfit(log_radii, numpy.log(m), 1)[0]
                              for m
                              in masses])
    else:
        slopes = numpy.full(len(indices), float(k))

    return AdReport(k, radii, indices, ratios, slopes, diameter, clamped,
                    slope_tolerance)


def _atom_measure(document):
    atoms = document.get('atoms')
    if not isinstance(atoms, list) or len(atoms) == 0:
        raise ValueError('measure document needs a nonempty "atoms" list')
    dim = Dimension(document.get('dim'))
    label = document.get('label', '')
    if not isinstance(label, string_types):
        raise ValueError('measure label must be a string')
    points = numpy.array([a['p'] for a in atoms], dtype = numpy.float64)
    weights = [a['w'] for a in atoms]
    return DiscreteMeasure(dim, points.reshape(len(atoms), -1), weights,
                           label, document.get('validity_radius', 0.0))


def measure_from_dict(document):
    """Builds a DiscreteMeasure from a JSON document.

    Two kinds of documents are accepted: atom documents
    {"dim", "label", "atoms": [{"p": [...], "w": w}, ...]} and generator
    documents {"generator": "sphere" | "hyperplane-patch" | "segment" |
    "cantor", ...}.
    Graph patches need a height function and cannot be described in JSON.

    Args:
        document: The parsed JSON document

    Returns:
        A DiscreteMeasure.
    """
    if not isinstance(document, dict):
        raise ValueError('measure document must be a JSON object')
    generator = document.get('generator')
    try:
        if generator is None:
            return _atom_measure(document)
        if generator == 'sphere':
            spec = Sphere(document['dim'], document['center'],
                          document['radius'])
        elif generator == 'hyperplane-patch':
            spec = HyperplanePatch(document['dim'], document['basepoint'],
                                   document['frame'], document['extent'])
        elif generator == 'segment':
            return segment_measure(document['dim'], document['half_length'],
                                   int(document['resolution']),
                                   document.get('axis', 0))
        elif generator == 'cantor':
            return cantor_ad_set(document.get('dim', 2),
                                 document.get('k', 1.0),
                                 document['level'])
        else:
            raise ValueError('unknown measure generator {0!r}'.format(
                generator
            ))
        return sample_hypersurface(spec, int(document['resolution']))
    except KeyError as e:
        raise ValueError('measure document is missing key {0}'.format(e))
    except (TypeError, AttributeError, IndexError) as e:
        raise ValueError('malformed measure document: {0}'.format(e))
