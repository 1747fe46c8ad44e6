"""Provides the shrinking-ball mean value functional

    M(eps) = (1 / mu(K n B(x0, eps))) int_{K n B(x0, eps)} u dmu

and the checks built on it: convergence studies toward u(x0), the comparison
chain for pairs of subharmonic functions, the quantitative bounds used to
prove convergence, and the density condition under which the mean value limit
holds with the Riesz measure.
"""


# System imports
from math import fsum

# NumPy imports
import numpy

# mvlab imports
from mvlab.errors import DomainError, HypothesisError
from mvlab.algebra import NEG_INF, POS_INF, weighted_mean
from mvlab.kernel import Dimension, as_point, as_points, kernel_g, \
    kernel_g_array
from mvlab.measure import ball_mass, densities, DEFAULT_TAIL_FRACTION
from mvlab.potential import evaluate_at
from mvlab.report import Report


# Set up default exports
__all__ = [
    'EpsSchedule',
    'ConvergenceReport',
    'ProofBoundConfig',
    'ProofBoundsReport',
    'ComparisonReport',
    'DensityConditionReport',
    'DensityComparisonReport',
    'DensityMeanValueReport',
    'mean_value',
    'convergence_study',
    'f_eps',
    'proof_bounds_check',
    'comparison_check',
    'density_condition',
    'density_comparison_check',
    'density_mean_value_check',
]


# The hypothesis violated by an empty ball
MASS_HYPOTHESIS = 'condition 1 of the mean value theorem: ' \
    'mu(K n B(x0, eps)) >= A h(eps)'

# The hypothesis violated by a non-null exceptional set
NULL_SET_HYPOTHESIS = 'condition 1 of the comparison theorem: mu(N) = 0'

# The hypothesis violated by a vanishing lower density
DENSITY_HYPOTHESIS = 'positive lower s-density of mu at x0'

# Default thresholds a mean must cross when the target is -inf
DEFAULT_THRESHOLDS = (-10.0, -100.0)

# Default tolerance on the final error of a density mean value study
DEFAULT_STUDY_TOLERANCE = 1e-3

# Default tolerance of the proof bounds
DEFAULT_BOUND_TOLERANCE = 1e-9

# Default tolerance when comparing finite-scale limit estimates with point
# values
DEFAULT_LINK_TOLERANCE = 1e-2

# Number of atoms sampled when auditing the upper mass condition
MASS_AUDIT_SAMPLES = 16


class EpsSchedule(object):
    """A geometric radius schedule eps_j = start * factor^j, j < steps.
    """

    def __init__(self, start, factor, steps):
        if not start > 0:
            raise DomainError('schedule start must be positive')
        if not 0 < factor < 1:
            raise DomainError('schedule factor must lie in (0, 1)')
        if steps < 1:
            raise DomainError('schedule needs at least one step')
        self.start = float(start)
        self.factor = float(factor)
        self.steps = int(steps)

    def values(self):
        """Returns the strictly decreasing list of radii.
        """
        return [self.start * self.factor ** j for j in range(self.steps)]

    def check(self, mu):
        """Raises a DomainError if the smallest radius is below the validity
        radius of mu.
        """
        smallest = self.values()[-1]
        if smallest < mu.validity_radius:
            raise DomainError('smallest schedule radius {0!r} is below the '
                              'validity radius {1!r} of {2!r}'.format(
                                  smallest,
                                  mu.validity_radius,
                                  mu.label
                              ))

    def to_dict(self):
        return {'start': self.start, 'factor': self.factor,
                'steps': self.steps}


def _ball(mu, x0, eps):
    # Positively weighted atoms of the open ball, with the empty-ball check
    if eps < mu.validity_radius:
        raise DomainError('radius {0!r} is below the validity radius {1!r} '
                          'of {2!r}'.format(eps, mu.validity_radius,
                                            mu.label))
    mask = mu.ball_mask(x0, eps) & (mu.weights > 0)
    if not numpy.any(mask):
        raise HypothesisError(MASS_HYPOTHESIS,
                              'ball of radius {0!r} around {1} carries no '
                              'mass'.format(eps, list(as_point(x0))))
    return mu.points[mask], mu.weights[mask]


def _mean(u, mu, x0, eps):
    points, weights = _ball(mu, x0, eps)
    values = numpy.asarray(u(points), dtype = numpy.float64).reshape(-1)
    return weighted_mean(values, weights), len(weights)


def mean_value(u, mu, x0, eps):
    """Computes the average of u over the atoms of mu in B(x0, eps).

    Args:
        u: The vectorized function handle
        mu: The DiscreteMeasure
        x0: The center
        eps: The radius, at least the validity radius of mu

    Returns:
        The weighted mean, NEG_INF if u is -inf on a contributing atom.
    """
    return _mean(u, mu, as_point(x0, mu.dim), eps)[0]


class ConvergenceReport(Report):
    """Mean values along a radius schedule, compared with a target value.
    """

    kind = 'convergence'

    columns = ('eps', 'mean', 'target', 'error', 'atoms_in_ball')

    def __init__(self, x0, eps_values, means, atoms_in_ball, target, tol,
                 thresholds):
        self.x0 = x0
        self.eps_values = list(eps_values)
        self.means = list(means)
        self.atoms_in_ball = list(atoms_in_ball)
        self.target = target
        self.tolerance = tol
        self.thresholds = sorted(thresholds, reverse = True)
        self.limit_estimate = self.means[-1]

        if target == NEG_INF:
            # Means must keep decreasing through every threshold
            self.errors = [POS_INF if m != NEG_INF else 0.0
                           for m
                           in self.means]
            self.crossed = [any(m < t for m in self.means)
                            for t
                            in self.thresholds]
            self.converged = bool(
                all(b <= a for a, b in zip(self.means[:-1], self.means[1:]))
                and all(self.crossed)
            )
        else:
            self.errors = [abs(m - target) if numpy.isfinite(m) else POS_INF
                           for m
                           in self.means]
            self.crossed = []
            tail = self.errors[len(self.errors) // 2:]
            self.converged = bool(
                all(b <= a for a, b in zip(tail[:-1], tail[1:])) and
                self.errors[-1] < tol
            )

    @property
    def passed(self):
        return self.converged

    def rows(self):
        return [(e, m, self.target, err, count)
                for e, m, err, count
                in zip(self.eps_values, self.means, self.errors,
                       self.atoms_in_ball)]

    def to_dict(self):
        return {
            'x0': [float(c) for c in self.x0],
            'eps_values': self.eps_values,
            'means': self.means,
            'target': self.target,
            'errors': self.errors,
            'atoms_in_ball': self.atoms_in_ball,
            'limit_estimate': self.limit_estimate,
            'tolerance': self.tolerance,
            'thresholds': self.thresholds,
            'thresholds_crossed': self.crossed,
            'converged': self.converged,
        }


def convergence_study(u, mu, x0, sched, target, tol,
                      thresholds = DEFAULT_THRESHOLDS):
    """Evaluates mean values along a schedule and tests convergence to a
    target.

    With a finite target, convergence means the errors do not increase over
    the second half of the schedule and the final error is below tol.  With a
    -inf target, the means must be non-increasing and drop below every
    threshold.

    Args:
        u: The vectorized function handle
        mu: The DiscreteMeasure
        x0: The center
        sched: The EpsSchedule
        target: The expected limit u(x0), possibly NEG_INF
        tol: The tolerance on the final error
        thresholds: Finite levels the means must cross for a -inf target

    Returns:
        A ConvergenceReport.
    """
    x0 = as_point(x0, mu.dim)
    sched.check(mu)
    results = [_mean(u, mu, x0, eps) for eps in sched.values()]
    return ConvergenceReport(x0, sched.values(), [m for m, _ in results],
                             [c for _, c in results], float(target), tol,
                             thresholds)


def f_eps(mu, x0, eps, w, n):
    """Averages the kernel g(|x - w|) over the atoms of mu in B(x0, eps).

    Args:
        mu: The DiscreteMeasure
        x0: The ball center
        eps: The ball radius
        w: The evaluation point
        n: The Dimension

    Returns:
        The average, or POS_INF when w coincides with a contributing atom.
    """
    n = Dimension(n)
    w = as_point(w, mu.dim)
    points, weights = _ball(mu, as_point(x0, mu.dim), eps)
    distances = numpy.sqrt(numpy.sum((points - w) ** 2, axis = 1))
    if numpy.any(distances == 0):
        return POS_INF
    return weighted_mean(kernel_g_array(n, distances), weights)


class ProofBoundConfig(object):
    """Constants of the two-case bound on f_eps.

    The constant c = 2 gamma (1 + p) exceeds 4 automatically.
    """

    def __init__(self, p, gamma, A, B, M, eps1 = 1.0):
        if not p > 1 or not gamma > 1:
            raise DomainError('p and gamma must exceed 1')
        if not 0 < A <= B:
            raise DomainError('mass constants must satisfy 0 < A <= B')
        if not M > 0 or not eps1 > 0:
            raise DomainError('M and eps1 must be positive')
        self.p = float(p)
        self.gamma = float(gamma)
        self.A = float(A)
        self.B = float(B)
        self.M = float(M)
        self.eps1 = float(eps1)

    @property
    def c(self):
        return 2.0 * self.gamma * (1.0 + self.p)

    def to_dict(self):
        return {'p': self.p, 'gamma': self.gamma, 'c': self.c, 'A': self.A,
                'B': self.B, 'M': self.M, 'eps1': self.eps1}


def _case_two_constant(n, cfg):
    return (2.0 * cfg.gamma * cfg.p) ** (n - 2) * max(1, n - 2) * cfg.B * \
        cfg.M / cfg.A


def _identity_error(n, p, r):
    # g((p - 1) / p r) against its rewriting in terms of g(r)
    q = (p - 1.0) / p
    lhs = kernel_g(n, q * r)
    if n == 2:
        rhs = kernel_g(n, r) + kernel_g(n, q)
    else:
        rhs = q ** (2 - n) * kernel_g(n, r)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


class ProofBoundsReport(Report):
    """Margins of the two-case bound on f_eps over a (w, eps) grid.
    """

    kind = 'proof-bounds'

    columns = ('w_index', 'eps', 'distance', 'case', 'f_eps', 'bound',
               'margin')

    def __init__(self, cfg, tolerance, diagnostics, entries, skipped,
                 identity_error):
        self.cfg = cfg
        self.tolerance = tolerance
        self.diagnostics = diagnostics
        self.precondition_ok = len(diagnostics) == 0
        self.entries = entries
        self.skipped = skipped
        self.identity_error = identity_error
        margins_1 = [e[6] for e in entries if e[3] == 1]
        margins_2 = [e[6] for e in entries if e[3] == 2]
        self.worst_case_1 = min(margins_1) if margins_1 else None
        self.worst_case_2 = min(margins_2) if margins_2 else None

    @property
    def passed(self):
        return self.precondition_ok and \
            all(e[6] >= -self.tolerance for e in self.entries)

    def rows(self):
        return self.entries

    def to_dict(self):
        return {
            'config': self.cfg.to_dict(),
            'tolerance': self.tolerance,
            'precondition_ok': self.precondition_ok,
            'diagnostics': self.diagnostics,
            'checked': len(self.entries),
            'skipped': self.skipped,
            'worst_case_1': self.worst_case_1,
            'worst_case_2': self.worst_case_2,
            'identity_error': self.identity_error,
            'entries': [list(e) for e in self.entries],
            'pass': self.passed,
        }


def _mass_diagnostics(mu, x0, cfg, h, eps_samples):
    diagnostics = []

    # Lower bound at the center
    for eps in eps_samples:
        mass = ball_mass(mu, x0, eps)
        if mass < cfg.A * h.evaluate(eps):
            diagnostics.append('lower mass condition fails at eps={0!r}: '
                               'mass {1!r} < A h(eps) = {2!r}'.format(
                                   eps, mass, cfg.A * h.evaluate(eps)
                               ))

    # Upper bound at evenly spaced atoms of the largest ball
    candidates = numpy.nonzero(mu.ball_mask(x0, max(eps_samples)) &
                               (mu.weights > 0))[0]
    if len(candidates) > 0:
        picks = numpy.unique(numpy.round(numpy.linspace(
            0,
            len(candidates) - 1,
            min(MASS_AUDIT_SAMPLES, len(candidates))
        )).astype(int))
        for index in candidates[picks]:
            for eps in eps_samples:
                mass = ball_mass(mu, mu.points[index], eps)
                if mass > cfg.B * h.evaluate(eps):
                    diagnostics.append(
                        'upper mass condition fails at atom {0} and '
                        'eps={1!r}: mass {2!r} > B h(eps) = {3!r}'.format(
                            int(index), eps, mass, cfg.B * h.evaluate(eps)
                        )
                    )
    return diagnostics


def proof_bounds_check(mu, x0, n, cfg, h, w_samples, eps_samples,
                       tol = DEFAULT_BOUND_TOLERANCE):
    """Checks the two-case bound on f_eps(w):

        |w - x0| > p eps:  f_eps(w) <= g((p - 1) / p |w - x0|)
        |w - x0| <= p eps: f_eps(w) <= g(|w - x0|)
                           + (2 gamma p)^(n-2) max(1, n-2) B M
                             / (A |w - x0|^(n-2))

    The two-sided mass condition A h(eps) <= mu(B(., eps)) <= B h(eps) is
    verified first; when it fails the report carries the diagnostics and no
    margins.  Points w at x0, or on a contributing atom, are skipped.

    Args:
        mu: The DiscreteMeasure
        x0: The center
        n: The Dimension
        cfg: The ProofBoundConfig
        h: The GaugeFunction
        w_samples: The evaluation points
        eps_samples: The radii
        tol: The tolerance on the margins

    Returns:
        A ProofBoundsReport.
    """
    n = Dimension(n).n
    x0 = as_point(x0, mu.dim)
    w_samples = as_points(w_samples, mu.dim)
    eps_samples = [float(e) for e in eps_samples]
    if len(eps_samples) == 0:
        raise ValueError('proof bounds need at least one radius')

    # Precondition
    diagnostics = _mass_diagnostics(mu, x0, cfg, h, eps_samples)
    if diagnostics:
        return ProofBoundsReport(cfg, tol, diagnostics, [], 0, 0.0)

    # Margins
    constant = _case_two_constant(n, cfg)
    entries = []
    skipped = 0
    identity_error = 0.0
    for index, w in enumerate(w_samples):
        distance = float(numpy.sqrt(numpy.sum((w - x0) ** 2)))
        if distance == 0:
            skipped += len(eps_samples)
            continue
        identity_error = max(identity_error,
                             _identity_error(n, cfg.p, distance))
        for eps in eps_samples:
            value = f_eps(mu, x0, eps, w, n)
            if value == POS_INF:
                skipped += 1
                continue
            if distance > cfg.p * eps:
                case = 1
                bound = kernel_g(n, (cfg.p - 1.0) / cfg.p * distance)
            else:
                case = 2
                bound = kernel_g(n, distance) + \
                    constant / distance ** (n - 2)
            entries.append((index, eps, distance, case, value, bound,
                            bound - value))

    return ProofBoundsReport(cfg, tol, [], entries, skipped, identity_error)


class ComparisonReport(Report):
    """Hypothesis audit and mean value chain of a comparison check.
    """

    kind = 'comparison'

    columns = ('x0', 'u_value', 'v_value', 'u_limit', 'v_limit',
               'u_bounds_limit', 'means_ordered', 'v_limit_matches',
               'failed_link', 'conclusion')

    def __init__(self, tolerance, audit_violations, points,
                 link_tolerance = DEFAULT_LINK_TOLERANCE):
        self.tolerance = tolerance
        self.link_tolerance = link_tolerance
        self.audit_violations = audit_violations
        self.audit_passed = len(audit_violations) == 0
        self.points = points
        self.failed_points = [p['x0'] for p in points if not p['conclusion']]

    @property
    def conclusion_holds(self):
        return all(p['conclusion'] for p in self.points)

    @property
    def passed(self):
        return self.audit_passed and self.conclusion_holds and \
            all(p['means_ordered'] for p in self.points)

    def rows(self):
        return [(' '.join('%.17g' % c for c in p['x0']), p['u_value'],
                 p['v_value'], p['u_limit'], p['v_limit'],
                 p['u_bounds_limit'], p['means_ordered'],
                 p['v_limit_matches'], p['failed_link'], p['conclusion'])
                for p
                in self.points]

    def to_dict(self):
        return {
            'tolerance': self.tolerance,
            'link_tolerance': self.link_tolerance,
            'audit_passed': self.audit_passed,
            'audit_violations': self.audit_violations,
            'points': self.points,
            'conclusion_holds': self.conclusion_holds,
            'failed_points': self.failed_points,
            'pass': self.passed,
        }


def _close(a, b, tol):
    # Equal infinities compare as close
    return a == b or abs(a - b) <= tol


def _failed_link(u_bounds_limit, means_ordered, v_limit_matches):
    if not u_bounds_limit:
        return 'u(x0) >= lim M_u'
    if not means_ordered:
        return 'M_u >= M_v'
    if not v_limit_matches:
        return 'lim M_v = v(x0)'
    return None


def _null_mask(mu, null_set):
    mask = numpy.asarray(null_set(mu.points), dtype = bool).reshape(-1)
    if mask.shape[0] != len(mu):
        raise ValueError('null set predicate must return one flag per atom')
    return mask


def comparison_check(u, v, mu, null_set, check_points, sched,
                     tol = DEFAULT_BOUND_TOLERANCE,
                     link_tol = DEFAULT_LINK_TOLERANCE):
    """Reproduces the comparison chain u(x0) >= lim M_u(eps) >= lim M_v(eps)
    = v(x0) at a set of check points.

    Args:
        u: The vectorized function handle expected to dominate
        v: The vectorized function handle expected to be dominated
        mu: The DiscreteMeasure
        null_set: A vectorized predicate marking the exceptional set N; the
            atoms it marks must carry zero total weight
        check_points: The points x0 at which the conclusion is tested
        sched: The EpsSchedule
        tol: The comparison tolerance
        link_tol: The tolerance of the per-link flags, which compare the
            means at the smallest radius with the values at x0

    Returns:
        A ComparisonReport.  When the conclusion fails at a point, its
        failed_link names the first link of the chain that breaks.  A failed
        audit of u >= v off N is reported with the violating atoms and no
        chain.
    """
    sched.check(mu)
    check_points = as_points(check_points, mu.dim)

    # The exceptional set must be mu-null
    null = _null_mask(mu, null_set)
    null_mass = fsum(mu.weights[null])
    if null_mass > 0:
        raise HypothesisError(NULL_SET_HYPOTHESIS,
                              'exceptional set carries mass {0!r}'.format(
                                  null_mass
                              ))

    # Audit u >= v off N
    off = numpy.nonzero(~null)[0]
    u_values = numpy.asarray(u(mu.points[off]), dtype = numpy.float64)
    v_values = numpy.asarray(v(mu.points[off]), dtype = numpy.float64)
    bad = numpy.nonzero(~(u_values >= v_values - tol))[0]
    violations = [{'atom': int(off[i]),
                   'point': [float(c) for c in mu.points[off[i]]],
                   'u': float(u_values[i]),
                   'v': float(v_values[i])}
                  for i
                  in bad[:10]]
    if violations:
        return ComparisonReport(tol, violations, [], link_tol)

    # Mean value chain at each check point
    points = []
    for x0 in check_points:
        u_means = [mean_value(u, mu, x0, eps) for eps in sched.values()]
        v_means = [mean_value(v, mu, x0, eps) for eps in sched.values()]
        u_value = evaluate_at(u, x0)
        v_value = evaluate_at(v, x0)
        u_bounds_limit = u_value >= u_means[-1] - link_tol
        means_ordered = all(a >= b - tol for a, b in zip(u_means, v_means))
        v_limit_matches = _close(v_means[-1], v_value, link_tol)
        conclusion = u_value >= v_value - tol
        points.append({
            'x0': [float(c) for c in x0],
            'u_value': u_value,
            'v_value': v_value,
            'u_means': u_means,
            'v_means': v_means,
            'u_limit': u_means[-1],
            'v_limit': v_means[-1],
            'u_bounds_limit': u_bounds_limit,
            'means_ordered': means_ordered,
            'v_limit_matches': v_limit_matches,
            'failed_link': None if conclusion
            else _failed_link(u_bounds_limit, means_ordered,
                              v_limit_matches),
            'conclusion': conclusion,
        })

    return ComparisonReport(tol, [], points, link_tol)


class DensityConditionReport(Report):
    """The density sum

        (1 / lower density at x0) sum_w upper density at w * m(w)
                                        / |w - x0|^(n-2)

    over the Riesz atoms w.  Unpacks as the tuple (value, finite).
    """

    kind = 'density-condition'

    columns = ('atom', 'distance', 'upper_density', 'mass', 'term')

    def __init__(self, s, lower, terms, singular):
        self.s = s
        self.lower = lower
        self.terms = terms
        self.singular = singular
        if singular:
            self.value = POS_INF
        else:
            self.value = fsum(t['term'] for t in terms) / lower
        self.finite = bool(not singular and numpy.isfinite(self.value))

    def __iter__(self):
        return iter((self.value, self.finite))

    @property
    def passed(self):
        return self.finite

    def rows(self):
        return [(t['atom'], t['distance'], t['upper_density'], t['mass'],
                 t['term'])
                for t
                in self.terms]

    def to_dict(self):
        return {
            's': self.s,
            'lower_density_x0': self.lower,
            'terms': self.terms,
            'singular': self.singular,
            'value': self.value,
            'finite': self.finite,
        }


def density_condition(rf, mu, s, x0, radii,
                      tail_fraction = DEFAULT_TAIL_FRACTION):
    """Evaluates the density condition of the Riesz measure of rf against
    mu at x0.

    The distance in each term is |w - x0|.  A Riesz atom at x0 whose upper
    density is positive makes the sum singular.

    Args:
        rf: The RieszFunction
        mu: The DiscreteMeasure
        s: The density exponent, greater than n - 2
        x0: The center
        radii: The decreasing radius schedule for the density estimates
        tail_fraction: The fraction of the schedule forming its tail

    Returns:
        A DensityConditionReport.
    """
    n = mu.dim.n
    if not s > n - 2:
        raise DomainError('density exponent must exceed n - 2 = {0}'.format(
            n - 2
        ))
    x0 = as_point(x0, mu.dim)

    # Lower density at the center
    lower = densities(mu, s, x0, radii, tail_fraction).lower
    if not lower > 0:
        raise HypothesisError(DENSITY_HYPOTHESIS,
                              'lower density estimate at {0} is '
                              'zero'.format(list(x0)))

    # Terms over the Riesz atoms
    terms = []
    singular = False
    for index, (w, mass) in enumerate(zip(rf.nu_points, rf.masses)):
        if mass == 0:
            continue
        upper = densities(mu, s, w, radii, tail_fraction).upper
        distance = float(numpy.sqrt(numpy.sum((w - x0) ** 2)))
        if distance == 0:
            term = POS_INF if upper > 0 else 0.0
            singular = singular or upper > 0
        else:
            term = upper * mass / distance ** (n - 2)
        terms.append({'atom': index, 'distance': distance,
                      'upper_density': upper, 'mass': float(mass),
                      'term': term})

    return DensityConditionReport(float(s), lower, terms, singular)


class DensityComparisonReport(Report):
    """Density conditions at every check point followed, when they are all
    finite, by the comparison chain.
    """

    kind = 'density-comparison'

    def __init__(self, conditions, comparison):
        self.conditions = conditions
        self.comparison = comparison

    @property
    def passed(self):
        return self.comparison is not None and self.comparison.passed

    def tabular_columns(self):
        return ['x0', 'value', 'finite']

    def rows(self):
        return [(' '.join('%.17g' % v for v in x0), c.value, c.finite)
                for x0, c
                in self.conditions]

    def to_dict(self):
        return {
            'conditions': [dict(c.to_dict(), x0 = [float(v) for v in x0])
                           for x0, c
                           in self.conditions],
            'comparison': None if self.comparison is None
            else self.comparison.to_dict(),
            'pass': self.passed,
        }


def density_comparison_check(u, v, mu, null_set, check_points, sched, s,
                             radii, tol = DEFAULT_BOUND_TOLERANCE):
    """Checks the density form of the comparison theorem: the density
    condition of v's Riesz measure at every check point, then the comparison
    chain.

    Args:
        u: The vectorized function handle expected to dominate
        v: The RieszFunction expected to be dominated
        mu: The DiscreteMeasure
        null_set: The exceptional set predicate
        check_points: The check points
        sched: The EpsSchedule
        s: The density exponent
        radii: The radius schedule for density estimates
        tol: The comparison tolerance

    Returns:
        A DensityComparisonReport; the comparison is None when some density
        condition is infinite.
    """
    check_points = as_points(check_points, mu.dim)
    conditions = [(x0, density_condition(v, mu, s, x0, radii))
                  for x0
                  in check_points]
    if not all(c.finite for _, c in conditions):
        return DensityComparisonReport(conditions, None)
    return DensityComparisonReport(
        conditions,
        comparison_check(u, v, mu, null_set, check_points, sched, tol)
    )


class DensityMeanValueReport(Report):
    """The density condition at a point followed, when it is finite, by the
    convergence study of the shrinking-ball means to u(x0).
    """

    kind = 'density-mean-value'

    def __init__(self, condition, study):
        self.condition = condition
        self.study = study

    @property
    def passed(self):
        return self.study is not None and self.study.passed

    def tabular_columns(self):
        if self.study is None:
            return self.condition.tabular_columns()
        return self.study.tabular_columns()

    def rows(self):
        if self.study is None:
            return self.condition.rows()
        return self.study.rows()

    def to_dict(self):
        return {
            'condition': self.condition.to_dict(),
            'study': None if self.study is None else self.study.to_dict(),
            'pass': self.passed,
        }


def density_mean_value_check(rf, mu, s, x0, radii, sched,
                             tol = DEFAULT_STUDY_TOLERANCE,
                             tail_fraction = DEFAULT_TAIL_FRACTION):
    """Checks the density form of the mean value theorem at x0: when the
    density condition of rf's Riesz measure is finite, the means of rf over
    shrinking balls must converge to rf(x0).

    Args:
        rf: The RieszFunction
        mu: The DiscreteMeasure
        s: The density exponent, greater than n - 2
        x0: The center
        radii: The radius schedule for the density estimates
        sched: The EpsSchedule of the convergence study
        tol: The tolerance on the final error of the study
        tail_fraction: The fraction of the radius schedule forming its tail

    Returns:
        A DensityMeanValueReport; the study is None when the density
        condition is infinite.
    """
    x0 = as_point(x0, mu.dim)
    condition = density_condition(rf, mu, s, x0, radii, tail_fraction)
    if not condition.finite:
        return DensityMeanValueReport(condition, None)
    return DensityMeanValueReport(
        condition,
        convergence_study(rf, mu, x0, sched, evaluate_at(rf, x0), tol)
    )
