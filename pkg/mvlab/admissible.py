"""Provides gauge functions h and the finite-grid tests of membership in the
admissible family: gauges for which

    int_0^(c eps) h(r) / r^(n-1) dr <= M h(eps) / eps^(n-2)

for all small eps and some c > 4.

Power and power-log gauges integrate in closed form.  Tabulated gauges are
integrated with scipy's adaptive quadrature over dyadic pieces toward 0, which
also detects divergence.
"""


# System imports
from math import log, exp

# NumPy imports
import numpy

# SciPy imports
from scipy.integrate import quad

# Six imports
from six import string_types

# mvlab imports
from mvlab.errors import DomainError
from mvlab.algebra import POS_INF
from mvlab.kernel import Dimension
from mvlab.report import Report


# Set up default exports
__all__ = [
    'GaugeFunction',
    'Power',
    'PowerLog',
    'Scaled',
    'GaugeSum',
    'Table',
    'AdmissibilityReport',
    'StarReport',
    'gauge_eval',
    'admissible_integral',
    'check_admissible',
    'check_star',
    'gauge_combine',
    'gauge_scale',
    'gauge_from_dict',
    'default_eps_grid',
]


# Tail growth factor separating bounded from growing ratio sequences
GROWTH_THRESHOLD = 1.05

# Number of consecutive non-shrinking dyadic pieces that signal divergence
DIVERGENCE_DYADS = 8

# Hard limit on the number of dyadic pieces
MAX_DYADS = 4096

# Relative size below which a dyadic piece ends the summation
DYAD_CUTOFF = 1e-17

# Smallest number of grid points accepted
MIN_GRID_POINTS = 8


class GaugeFunction(object):
    """Abstract base class for gauge functions h: (0, inf) -> (0, inf).

    Implementers must override `evaluate`, `integral` and `to_dict`.
    """

    def evaluate(self, r):
        """Evaluates the gauge at a positive radius.

        Implementers must override this method.
        """
        raise NotImplementedError('abstract method')

    def integral(self, n, upper):
        """Evaluates int_0^upper h(r) / r^(n-1) dr.

        Implementers must override this method.

        Args:
            n: The ambient dimension as an integer
            upper: The upper limit, positive

        Returns:
            The integral, or POS_INF if it diverges at 0.
        """
        raise NotImplementedError('abstract method')

    def factor(self):
        """Splits the gauge as coefficient * base gauge.

        Returns:
            A tuple (coefficient, base).
        """
        return 1.0, self

    def to_dict(self):
        """Returns the JSON document representation.

        Implementers must override this method.
        """
        raise NotImplementedError('abstract method')

    def __call__(self, r):
        return self.evaluate(r)

    def __repr__(self):
        return 'GaugeFunction({0!r})'.format(self.to_dict())


class Power(GaugeFunction):
    """The gauge r^k.
    """

    def __init__(self, k):
        self._k = float(k)

    @property
    def k(self):
        return self._k

    def evaluate(self, r):
        return float(r) ** self._k

    def integral(self, n, upper):
        exponent = self._k - n + 2
        if exponent <= 0:
            return POS_INF
        return float(upper) ** exponent / exponent

    def to_dict(self):
        return {'form': 'power', 'k': self._k}


class PowerLog(GaugeFunction):
    """The gauge r^k |log r|.
    """

    def __init__(self, k):
        self._k = float(k)

    @property
    def k(self):
        return self._k

    def evaluate(self, r):
        return float(r) ** self._k * abs(log(r))

    def integral(self, n, upper):
        b = self._k - n + 2
        if b <= 0:
            return POS_INF
        upper = float(upper)
        power = upper ** b
        if upper <= 1.0:
            return power * (-log(upper) / b + 1.0 / (b * b))
        return 2.0 / (b * b) + power * log(upper) / b - power / (b * b)

    def to_dict(self):
        return {'form': 'power-log', 'k': self._k}


class Scaled(GaugeFunction):
    """The gauge a * h for a > 0.
    """

    def __init__(self, a, inner):
        if not a > 0:
            raise DomainError('gauge scale factor must be positive, got '
                              '{0!r}'.format(a))
        self._a = float(a)
        self._inner = inner

    def evaluate(self, r):
        return self._a * self._inner.evaluate(r)

    def integral(self, n, upper):
        return self._a * self._inner.integral(n, upper)

    def factor(self):
        coefficient, base = self._inner.factor()
        return self._a * coefficient, base

    def to_dict(self):
        return {'form': 'scaled', 'a': self._a, 'inner': self._inner.to_dict()}


class GaugeSum(GaugeFunction):
    def __init__(self, terms):
        self._terms = tuple(terms)
        if len(self._terms) == 0:
            raise ValueError('gauge sum needs at least one term')

    def evaluate(self, r):
        return sum(t.evaluate(r) for t in self._terms)

    def integral(self, n, upper):
        values = [t.integral(n, upper) for t in self._terms]
        if any(v == POS_INF for v in values):
            return POS_INF
        return sum(values)

    def to_dict(self):
        return {'form': 'sum', 'terms': [t.to_dict() for t in self._terms]}


def _dyadic_integral(integrand, upper, breakpoints = ()):
    """Integrates a positive integrand over (0, upper] as a sum of dyadic
    pieces [upper 2^-(j+1), upper 2^-j].

    Returns:
        The integral, or POS_INF when DIVERGENCE_DYADS consecutive pieces
        fail to shrink by GROWTH_THRESHOLD.
    """
    total = 0.0
    previous = None
    stalled = 0
    high = float(upper)
    for _ in range(MAX_DYADS):
        low = 0.5 * high
        inside = [b for b in breakpoints if low < b < high]
        piece, _ = quad(integrand, low, high, points = inside or None,
                        epsabs = 0.0, epsrel = 1e-13, limit = 200)
        total += piece

        # Divergence test
        if previous is not None and previous > 0 and \
                piece >= previous / GROWTH_THRESHOLD:
            stalled += 1
            if stalled >= DIVERGENCE_DYADS:
                return POS_INF
        else:
            stalled = 0

        # Convergence test
        if piece <= DYAD_CUTOFF * total:
            return total
        previous = piece
        high = low

    # Close a slowly converging geometric tail
    if previous is not None and previous > 0 and piece < previous:
        q = piece / previous
        total += piece * q / (1.0 - q)
    return total


class Table(GaugeFunction):
    """A gauge sampled on a strictly increasing radius grid, interpolated
    linearly in log-log space.

    Below the smallest radius the integral continues the power law of the
    first segment; evaluation outside the grid is an error.
    """

    def __init__(self, r, h):
        r = numpy.array(r, dtype = numpy.float64).reshape(-1)
        h = numpy.array(h, dtype = numpy.float64).reshape(-1)
        if r.shape != h.shape or len(r) < 2:
            raise DomainError('gauge table needs matching radius and value '
                              'lists with at least two entries')
        if numpy.any(~(r > 0)) or numpy.any(numpy.diff(r) <= 0):
            raise DomainError('gauge table radii must be positive and '
                              'strictly increasing')
        if numpy.any(~(h > 0)) or not numpy.all(numpy.isfinite(h)):
            raise DomainError('gauge table values must be positive and '
                              'finite')
        self._r = r
        self._h = h
        self._log_r = numpy.log(r)
        self._log_h = numpy.log(h)
        self._slope = (self._log_h[1] - self._log_h[0]) / \
            (self._log_r[1] - self._log_r[0])

    @property
    def r_min(self):
        return float(self._r[0])

    @property
    def r_max(self):
        return float(self._r[-1])

    def evaluate(self, r):
        if not self._r[0] <= r <= self._r[-1]:
            raise DomainError('radius {0!r} outside the gauge table range '
                              '[{1!r}, {2!r}]'.format(r, self.r_min,
                                                      self.r_max))
        return float(exp(numpy.interp(log(r), self._log_r, self._log_h)))

    def _extended(self, r):
        if r < self._r[0]:
            return float(self._h[0] * (r / self._r[0]) ** self._slope)
        return self.evaluate(r)

    def integral(self, n, upper):
        if upper > self._r[-1]:
            raise DomainError('integral limit {0!r} beyond the gauge table '
                              'range'.format(upper))
        return _dyadic_integral(lambda r: self._extended(r) / r ** (n - 1),
                                upper,
                                [float(b) for b in self._r])

    def to_dict(self):
        return {
            'form': 'table',
            'r': [float(r) for r in self._r],
            'h': [float(h) for h in self._h],
        }


def gauge_eval(h, r):
    """Evaluates a gauge at a positive radius.

    Args:
        h: The GaugeFunction
        r: The radius, positive and within range for tabulated gauges

    Returns:
        h(r).
    """
    if not r > 0:
        raise DomainError('gauges are defined for r > 0, got {0!r}'.format(r))
    return h.evaluate(r)


def admissible_integral(h, n, upper):
    """Evaluates int_0^upper h(r) / r^(n-1) dr.

    Args:
        h: The GaugeFunction
        n: The Dimension
        upper: The upper limit, positive

    Returns:
        The integral, or POS_INF on divergence.
    """
    n = Dimension(n).n
    if not upper > 0:
        raise DomainError('integral limit must be positive')
    return h.integral(n, upper)


def default_eps_grid(start = 0.1, steps = 16):
    """Returns the geometric grid start * 2^-j, j = 0 .. steps - 1.
    """
    return [start * 0.5 ** j for j in range(steps)]


def _check_parameters(c, eps_grid):
    if not c > 4:
        raise DomainError('c must exceed 4, got {0!r} (hypothesis: '
                          'admissibility constant c > 4)'.format(c))
    eps_grid = [float(e) for e in eps_grid]
    if len(eps_grid) < MIN_GRID_POINTS:
        raise DomainError('eps grid needs at least {0} points'.format(
            MIN_GRID_POINTS
        ))
    if any(not e > 0 for e in eps_grid) or \
            any(b >= a for a, b in zip(eps_grid[:-1], eps_grid[1:])):
        raise DomainError('eps grid must be positive and strictly '
                          'decreasing')
    return float(c), eps_grid


def _verdict(ratios, divergent):
    """Classifies a ratio sequence as pass, fail or inconclusive from its
    tail behavior.
    """
    if divergent:
        return 'fail', []
    tail = ratios[len(ratios) // 2:]
    factors = [b / a for a, b in zip(tail[:-1], tail[1:])]
    if all(f <= GROWTH_THRESHOLD for f in factors):
        return 'pass', factors
    if all(f > GROWTH_THRESHOLD for f in factors):
        return 'fail', factors
    return 'inconclusive', factors


class AdmissibilityReport(Report):
    """Finite-grid test of the admissibility inequality.
    """

    kind = 'admissible'

    columns = ('eps', 'ratio')

    def __init__(self, gauge, n, c, eps_grid, ratios, divergent):
        self.gauge = gauge
        self.n = n
        self.c = c
        self.eps_grid = eps_grid
        self.ratios = ratios
        self.divergent = divergent
        self.verdict, self.growth_factors = _verdict(ratios, divergent)
        self.m_estimate = POS_INF if divergent else max(ratios)

    @property
    def passed(self):
        return self.verdict == 'pass'

    def rows(self):
        return list(zip(self.eps_grid, self.ratios))

    def to_dict(self):
        return {
            'gauge': self.gauge.to_dict(),
            'dim': self.n,
            'c': self.c,
            'eps_grid': self.eps_grid,
            'ratios': self.ratios,
            'growth_factors': self.growth_factors,
            'm_estimate': self.m_estimate,
            'divergent': self.divergent,
            'verdict': self.verdict,
        }


def _ratios(h, n, c, eps_grid, star):
    # The positive coefficient of scaled gauges cancels in every ratio
    _, base = h.factor()
    ratios = []
    for eps in eps_grid:
        value = base.evaluate(eps)
        if not value > 0:
            raise DomainError('gauge vanishes at eps = {0!r}'.format(eps))
        integral = base.integral(n, c * eps)
        if integral == POS_INF:
            return [POS_INF] * len(eps_grid), True
        if star:
            ratios.append((integral / (c * eps)) / (value / eps ** (n - 1)))
        else:
            ratios.append(integral * eps ** (n - 2) / value)
    return ratios, False


def check_admissible(h, n, c, eps_grid):
    """Tests the admissibility inequality on a decreasing eps grid.

    Args:
        h: The GaugeFunction
        n: The Dimension
        c: The constant c, which must exceed 4
        eps_grid: A strictly decreasing grid of at least 8 radii

    Returns:
        An AdmissibilityReport.
    """
    n = Dimension(n).n
    c, eps_grid = _check_parameters(c, eps_grid)
    ratios, divergent = _ratios(h, n, c, eps_grid, False)
    return AdmissibilityReport(h, n, c, eps_grid, ratios, divergent)


class StarReport(AdmissibilityReport):
    """Finite-grid test of the asymptotic one-dimensional mean value property
    of F(r) = h(r) / r^(n-1), cross-checked against the admissibility test.
    """

    kind = 'star'

    def __init__(self, gauge, n, c, eps_grid, ratios, divergent,
                 admissible_verdict):
        super(StarReport, self).__init__(gauge, n, c, eps_grid, ratios,
                                         divergent)
        self.admissible_verdict = admissible_verdict
        self.consistent = self.verdict == admissible_verdict

    def to_dict(self):
        result = super(StarReport, self).to_dict()
        result['admissible_verdict'] = self.admissible_verdict
        result['consistent'] = self.consistent
        return result


def check_star(h, n, c, eps_grid):
    """Tests the ratio [(1 / (c eps)) int_0^(c eps) F] / F(eps) for
    F(r) = h(r) / r^(n-1).

    Membership in the admissible family is equivalent to this property, so
    the verdict is compared with check_admissible and any disagreement is
    reported as an inconsistency.

    Returns:
        A StarReport.
    """
    n = Dimension(n).n
    c, eps_grid = _check_parameters(c, eps_grid)
    ratios, divergent = _ratios(h, n, c, eps_grid, True)
    admissible = check_admissible(h, n, c, eps_grid)
    return StarReport(h, n, c, eps_grid, ratios, divergent,
                      admissible.verdict)


def gauge_combine(a, b, op = 'sum'):
    """Combines two gauges; the admissible family is closed under sums.
    """
    if op != 'sum':
        raise ValueError('unsupported gauge combination {0!r}'.format(op))
    return GaugeSum([a, b])


def gauge_scale(a, factor):
    """Scales a gauge by a positive factor.
    """
    return Scaled(factor, a)


def gauge_from_dict(document):
    """Builds a GaugeFunction from its JSON document.
    """
    if not isinstance(document, dict):
        raise ValueError('gauge document must be a JSON object')
    form = document.get('form')
    if not isinstance(form, string_types):
        raise ValueError('gauge document needs a "form" string')
    try:
        if form == 'power':
            return Power(document['k'])
        elif form == 'power-log':
            return PowerLog(document['k'])
        elif form == 'scaled':
            return Scaled(document['a'], gauge_from_dict(document['inner']))
        elif form == 'sum':
            return GaugeSum([gauge_from_dict(t) for t in document['terms']])
        elif form == 'table':
            return Table(document['r'], document['h'])
    except KeyError as e:
        raise ValueError('gauge document is missing key {0}'.format(e))
    except (TypeError, AttributeError, IndexError) as e:
        raise ValueError('malformed gauge document: {0}'.format(e))
    raise ValueError('unknown gauge form {0!r}'.format(form))
