"""Provides the closed-form co-dimension 2 counterexample in R^3.

For i >= 2 let mu_i be the length measure on the two axis intervals
[-i, -1/i] and [1/i, i], with Newtonian potential

    p_i(x) = -int |x - w|^-1 dmu_i(w),

normalized as u_i = -p_i / p_i(0), so that u_i(0) = -1 and u_i = -inf on the
support of mu_i.  The truncated series

    u = sum_{i=2}^N 2^-(i-1) u_i

is subharmonic and -inf on the axis points 1/N <= |s| <= N, so the clamped
function max(u, -2) equals -2 there while its value at the origin is close to
-1.  Mean values over the axis therefore cannot recover the value at the
origin: the axis has co-dimension 2.

Every integral is evaluated in closed form (asinh off the axis, logarithms on
it).
"""


# NumPy imports
import numpy

# mvlab imports
from mvlab.errors import DomainError
from mvlab.algebra import NEG_INF, maximum, weighted_mean
from mvlab.kernel import as_points
from mvlab.measure import segment_measure
from mvlab.report import Report


# Set up default exports
__all__ = [
    'DIM',
    'CounterexampleConfig',
    'CounterexampleReport',
    'p_mu_i',
    'u_i',
    'u_truncated',
    'u_tilde',
    'counterexample_demo',
]


# The construction is carried out in R^3
DIM = 3

# Default clamp level
DEFAULT_CLAMP = -2.0


class CounterexampleConfig(object):
    """Truncation and clamp of the counterexample series.
    """

    def __init__(self, N, clamp = DEFAULT_CLAMP):
        """Initializes a new instance of the CounterexampleConfig class.

        Args:
            N: The last series index, at least 2
            clamp: The clamp level, below -1
        """
        if isinstance(N, bool) or int(N) != N or N < 2:
            raise DomainError('series truncation N must be an integer >= 2')
        if not clamp < -1:
            raise DomainError('clamp must lie below -1 to be inactive at the '
                              'origin')
        self.N = int(N)
        self.clamp = float(clamp)

    @property
    def tail_bound(self):
        """Returns the weight 2^(1-N) of the dropped series terms at the
        origin.
        """
        return 2.0 ** (1 - self.N)

    def to_dict(self):
        return {'N': self.N, 'clamp': self.clamp}


def _interval_integral(a, b, s, rho):
    """Evaluates int_a^b dt / sqrt((t - s)^2 + rho^2) element-wise.
    """
    result = numpy.empty(s.shape[0])

    # Off the axis
    off = rho > 0
    result[off] = numpy.arcsinh((b - s[off]) / rho[off]) - \
        numpy.arcsinh((a - s[off]) / rho[off])

    # On the axis, infinite on the interval itself
    on = ~off
    s_on = s[on]
    inside = (s_on >= a) & (s_on <= b)
    near = numpy.abs(numpy.where(inside, 1.0, a - s_on))
    far = numpy.abs(numpy.where(inside, 1.0, b - s_on))
    result[on] = numpy.where(inside, numpy.inf, numpy.abs(numpy.log(far /
                                                                    near)))

    return result


def _potential(i, points):
    s = points[:, 0]
    rho = numpy.sqrt(points[:, 1] ** 2 + points[:, 2] ** 2)
    lower = 1.0 / i
    return -(_interval_integral(-float(i), -lower, s, rho) +
             _interval_integral(lower, float(i), s, rho))


def _origin_potential(i):
    return float(_potential(i, numpy.zeros((1, DIM)))[0])


def _unwrap(points, values):
    # Scalars in, scalars out
    if points.ndim == 1:
        return float(values[0])
    return values


def _as_input(x):
    points = numpy.asarray(x, dtype = numpy.float64)
    return points, as_points(points, DIM)


def _check_index(i):
    if int(i) != i or i < 2:
        raise DomainError('series index must be an integer >= 2')
    return int(i)


def p_mu_i(i, x):
    """Evaluates the potential of mu_i.

    Args:
        i: The index, an integer >= 2
        x: A point of R^3 or an (m, 3) array of points

    Returns:
        The potential, NEG_INF on the support of mu_i.
    """
    i = _check_index(i)
    raw, points = _as_input(x)
    return _unwrap(raw, _potential(i, points))


def u_i(i, x):
    """Evaluates the normalized potential -p_i(x) / p_i(0).

    Args:
        i: The index, an integer >= 2
        x: A point of R^3 or an (m, 3) array of points

    Returns:
        Values in [-inf, 0], exactly -1 at the origin.
    """
    i = _check_index(i)
    raw, points = _as_input(x)
    return _unwrap(raw, -_potential(i, points) / _origin_potential(i))


def _truncated(cfg, points):
    total = numpy.zeros(points.shape[0])
    active = numpy.ones(points.shape[0], dtype = bool)
    for i in range(2, cfg.N + 1):
        if not numpy.any(active):
            break
        values = -_potential(i, points[active]) / _origin_potential(i)
        total[active] += 0.5 ** (i - 1) * values
        active[active] = numpy.isfinite(values)
    total[~active] = NEG_INF
    return total


def u_truncated(cfg, x):
    """Evaluates the truncated series sum_{i=2}^N 2^-(i-1) u_i.

    Args:
        cfg: The CounterexampleConfig
        x: A point of R^3 or an (m, 3) array of points

    Returns:
        Values in [-inf, 0].
    """
    raw, points = _as_input(x)
    return _unwrap(raw, _truncated(cfg, points))


def u_tilde(cfg, x):
    """Evaluates the clamped function max(u_truncated, clamp).

    Args:
        cfg: The CounterexampleConfig
        x: A point of R^3 or an (m, 3) array of points

    Returns:
        Values in [clamp, 0].
    """
    raw, points = _as_input(x)
    return _unwrap(raw, maximum(_truncated(cfg, points), cfg.clamp))


class CounterexampleReport(Report):
    """Line mean of the clamped function against its value at the origin.
    """

    kind = 'counterexample'

    columns = ('N', 'eps', 'resolution', 'line_mean', 'value_at_0', 'gap')

    def __init__(self, cfg, eps, resolution, line_mean, value_at_0,
                 window_fraction):
        self.cfg = cfg
        self.eps = eps
        self.resolution = resolution
        self.line_mean = line_mean
        self.value_at_0 = value_at_0
        self.gap = value_at_0 - line_mean
        self.window_fraction = window_fraction
        self.delta = abs(cfg.clamp) * window_fraction
        self.mean_bound_holds = line_mean <= cfg.clamp + self.delta
        self.value_bound_holds = value_at_0 >= -1.0 + cfg.tail_bound - 1e-12

    @property
    def passed(self):
        return self.gap > 0 and self.mean_bound_holds and \
            self.value_bound_holds

    def rows(self):
        return [(self.cfg.N, self.eps, self.resolution, self.line_mean,
                 self.value_at_0, self.gap)]

    def to_dict(self):
        return {
            'N': self.cfg.N,
            'clamp': self.cfg.clamp,
            'eps': self.eps,
            'resolution': self.resolution,
            'line_mean': self.line_mean,
            'value_at_0': self.value_at_0,
            'gap': self.gap,
            'delta': self.delta,
            'window_fraction': self.window_fraction,
            'tail_bound': self.cfg.tail_bound,
            'mean_bound_holds': self.mean_bound_holds,
            'value_bound_holds': self.value_bound_holds,
            'pass': self.passed,
        }


def counterexample_demo(cfg, eps, line_resolution):
    """Averages the clamped function over the axis segment [-eps, eps] and
    compares the result with its value at the origin.

    The mean is bounded by clamp + delta with delta = |clamp| times the mass
    fraction of the window (-1/N, 1/N) where the clamp may be inactive.

    Args:
        cfg: The CounterexampleConfig
        eps: The half length of the segment, greater than 1/N
        line_resolution: The number of segment atoms

    Returns:
        A CounterexampleReport.
    """
    if not eps > 1.0 / cfg.N:
        raise DomainError('eps must exceed 1/N = {0!r} for the clamp to '
                          'dominate the segment'.format(1.0 / cfg.N))
    line = segment_measure(DIM, eps, int(line_resolution))
    values = u_tilde(cfg, line.points)
    line_mean = weighted_mean(values, line.weights)
    value_at_0 = u_tilde(cfg, numpy.zeros(DIM))
    window = numpy.abs(line.points[:, 0]) < 1.0 / cfg.N
    window_fraction = float(numpy.sum(line.weights[window]) /
                            line.total_mass())
    return CounterexampleReport(cfg, float(eps), int(line_resolution),
                                line_mean, value_at_0, window_fraction)
