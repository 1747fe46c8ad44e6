"""Provides the dimension-dependent Riesz kernel g, its inverse, and the
normalization constants of the Riesz decomposition.

The kernel is

    g(r) = -log(r)      (n = 2)
    g(r) = r**(2 - n)   (n > 2)

and the decomposition prefactor is max(1, n - 2) times the area of the unit
sphere in R^n.  Everything here is a pure function.
"""


# System imports
from math import pi, log, exp

# NumPy imports
import numpy

# SciPy imports
from scipy.special import gamma

# Six imports
from six import integer_types

# mvlab imports
from mvlab.errors import DomainError, DimensionError


# Set up default exports
__all__ = [
    'Dimension',
    'as_point',
    'as_points',
    'kernel_g',
    'kernel_g_array',
    'kernel_g_inv',
    'unit_sphere_area',
    'riesz_normalization',
]


class Dimension(object):
    """Represents the ambient dimension n >= 2.
    """

    def __init__(self, n):
        """Initializes a new instance of the Dimension class.

        Args:
            n: The ambient dimension, an integer >= 2
        """
        if isinstance(n, Dimension):
            n = n.n
        if isinstance(n, bool) or not isinstance(n, integer_types + (
                numpy.integer,)):
            raise DomainError('dimension must be an integer')
        if n < 2:
            raise DomainError('dimension must be at least 2, got {0}'.format(
                n
            ))
        self._n = int(n)

    @property
    def n(self):
        """Returns the dimension as a plain integer.
        """
        return self._n

    def __int__(self):
        return self._n

    def __index__(self):
        return self._n

    def __eq__(self, other):
        if isinstance(other, Dimension):
            return self._n == other._n
        if isinstance(other, integer_types):
            return self._n == other
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(('Dimension', self._n))

    def __repr__(self):
        return 'Dimension({0})'.format(self._n)


def _dimension(n):
    # Accept plain integers wherever a Dimension is expected
    return n if isinstance(n, Dimension) else Dimension(n)


def as_point(x, dim = None):
    """Converts a coordinate sequence to a read-only float64 vector.

    Args:
        x: The coordinate sequence
        dim: If provided, the required number of coordinates

    Returns:
        A one-dimensional NumPy array.
    """
    result = numpy.array(x, dtype = numpy.float64).reshape(-1)
    if dim is not None and result.shape[0] != int(dim):
        raise DimensionError('point has {0} coordinates, expected {1}'.format(
            result.shape[0],
            int(dim)
        ))
    if not numpy.all(numpy.isfinite(result)):
        raise DomainError('point coordinates must be finite')
    result.setflags(write = False)
    return result


def as_points(points, dim = None):
    """Converts a point or sequence of points to an (m, n) float64 array.

    Args:
        points: A single point or a sequence of points
        dim: If provided, the required number of coordinates

    Returns:
        A two-dimensional NumPy array with one point per row.
    """
    result = numpy.atleast_2d(numpy.asarray(points, dtype = numpy.float64))
    if result.ndim != 2:
        raise DimensionError('points must form a two-dimensional array')
    if dim is not None and result.shape[1] != int(dim):
        raise DimensionError('points have {0} coordinates, expected '
                             '{1}'.format(result.shape[1], int(dim)))
    return result


def kernel_g(n, r):
    """Evaluates the kernel g at a single positive radius.

    Args:
        n: The Dimension (or an integer >= 2)
        r: The radius, which must be positive

    Returns:
        -log(r) for n = 2, r**(2 - n) for n > 2.
    """
    n = _dimension(n).n
    if not r > 0:
        raise DomainError('kernel g is only defined for r > 0, got '
                          '{0}'.format(r))
    if n == 2:
        return -log(r)
    return float(r) ** (2 - n)


def kernel_g_array(n, r):
    """Evaluates the kernel g element-wise on an array of positive radii.

    Args:
        n: The Dimension (or an integer >= 2)
        r: An array of radii, all of which must be positive

    Returns:
        An array of kernel values with the shape of r.
    """
    n = _dimension(n).n
    r = numpy.asarray(r, dtype = numpy.float64)
    if numpy.any(~(r > 0)):
        raise DomainError('kernel g is only defined for r > 0')
    if n == 2:
        return -numpy.log(r)
    return r ** (2 - n)


def kernel_g_inv(n, t):
    """Evaluates the inverse of the kernel g.

    Args:
        n: The Dimension (or an integer >= 2)
        t: The kernel value; any real for n = 2, positive for n > 2

    Returns:
        The unique radius r > 0 with g(r) = t.
    """
    n = _dimension(n).n
    if n == 2:
        return exp(-t)
    if not t > 0:
        raise DomainError('kernel g inverse requires t > 0 when n > 2, got '
                          '{0}'.format(t))
    return float(t) ** (-1.0 / (n - 2))


def unit_sphere_area(n):
    """Returns the area of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2).

    Args:
        n: The Dimension (or an integer >= 2)
    """
    n = _dimension(n).n
    return float(2.0 * pi ** (n / 2.0) / gamma(n / 2.0))


def riesz_normalization(n):
    """Returns the Riesz decomposition prefactor max(1, n - 2) times the unit
    sphere area.

    Args:
        n: The Dimension (or an integer >= 2)
    """
    n = _dimension(n).n
    return max(1, n - 2) * unit_sphere_area(n)
