"""Provides the mvlab command line front end.

Every command builds one report, prints warnings for the conditions the
report flags, writes the report (JSON or CSV) atomically and exits with

    0: the check passed
    1: the check failed or a theorem hypothesis does not hold
    2: usage or input error
"""


# System imports
import argparse
import json
import os
import sys
from collections import namedtuple
from types import MappingProxyType

# NumPy imports
import numpy

# Six imports
from six import string_types

# mvlab imports
from mvlab import __version__
from mvlab.errors import HypothesisError
from mvlab.output import print_info, print_warning, print_error, atomic_write
from mvlab.module import load_function
from mvlab.kernel import as_point
from mvlab.measure import AdReport, measure_from_dict, densities, \
    ad_regularity_check, DEFAULT_TAIL_FRACTION, DEFAULT_SLOPE_TOLERANCE
from mvlab.potential import RieszFunction, evaluate_at, function_from_dict, \
    verify_layer_cake
from mvlab.admissible import StarReport, check_admissible, check_star, \
    default_eps_grid, gauge_from_dict
from mvlab.meanvalue import EpsSchedule, ProofBoundConfig, \
    ComparisonReport, DensityComparisonReport, DensityMeanValueReport, \
    ProofBoundsReport, convergence_study, comparison_check, \
    density_comparison_check, density_mean_value_check, proof_bounds_check, \
    DEFAULT_THRESHOLDS, DEFAULT_BOUND_TOLERANCE, DEFAULT_STUDY_TOLERANCE
from mvlab.counterexample import CounterexampleConfig, counterexample_demo
from mvlab.scenarios import MEAN_VALUE_SCENARIOS, COMPARISON_SCENARIOS, \
    PROOF_BOUND_SCENARIOS


# Set up default exports
__all__ = [
    'RunConfig',
    'COMMANDS',
    'build_parser',
    'config_from_arguments',
    'run',
    'main',
]


# Exit statuses
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


# An immutable run description: the command, its parameters (a read-only
# mapping), the output path (None for stdout) and the output format
RunConfig = namedtuple('RunConfig',
                       ['command', 'parameters', 'out', 'format'])


def _parse_point(text):
    try:
        return as_point([float(c) for c in text.split(',')])
    except ValueError:
        raise ValueError('invalid point {0!r}, expected comma-separated '
                         'coordinates'.format(text))


def _parse_points(text):
    return [_parse_point(p) for p in text.split(';') if p.strip()]


def _parse_floats(text):
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ValueError('invalid number list {0!r}'.format(text))


def _read_json(argument):
    """Parses a JSON argument given inline (starting with "{" or "[") or as
    a path.
    """
    if argument.lstrip().startswith(('{', '[')):
        source, text = '<inline>', argument
    else:
        with open(argument, 'r') as f:
            source, text = argument, f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError('malformed JSON in {0} at line {1}, column {2}: '
                         '{3}'.format(source, e.lineno, e.colno, e.msg))


def _load_function(argument, dim, x0 = None):
    """Loads a function handle from a Python function module or from a JSON
    document.
    """
    if isinstance(argument, string_types) and argument.endswith('.py'):
        return load_function(argument, {'dim': dim, 'x0': x0})
    function = function_from_dict(_read_json(argument))
    if isinstance(function, RieszFunction) and function.dim.n != dim:
        raise ValueError('function lives in dimension {0}, run uses '
                         '{1}'.format(function.dim.n, dim))
    return function


def _load_measure(argument, dim):
    mu = measure_from_dict(_read_json(argument))
    if mu.dim.n != dim:
        raise ValueError('measure lives in dimension {0}, run uses '
                         '{1}'.format(mu.dim.n, dim))
    return mu


def _schedule(parameters, prefix = 'eps'):
    return EpsSchedule(parameters[prefix + '_start'],
                       parameters[prefix + '_factor'],
                       parameters[prefix + '_steps'])


def _require(parameters, *names):
    missing = ['--' + n.replace('_', '-')
               for n
               in names
               if parameters.get(n) is None]
    if missing:
        raise ValueError('missing required option(s) {0}'.format(
            ', '.join(missing)
        ))


class _PointSet(object):
    """Vectorized predicate marking the points within tol of a finite point
    list.
    """

    def __init__(self, points, tol = 1e-12):
        self._points = [as_point(p) for p in points]
        self._tol = tol

    def __call__(self, points):
        points = numpy.atleast_2d(points)
        result = numpy.zeros(points.shape[0], dtype = bool)
        for p in self._points:
            result |= numpy.sqrt(numpy.sum((points - p) ** 2, axis = 1)) <= \
                self._tol
        return result


def _run_mean_value(parameters):
    if parameters['scenario'] is not None:
        scenario = MEAN_VALUE_SCENARIOS[parameters['scenario']]()
        u, mu, x0 = scenario.u, scenario.mu, scenario.x0
        schedule, target, tol = scenario.schedule, scenario.target, \
            scenario.tol
    else:
        _require(parameters, 'dim', 'function', 'measure', 'x0')
        dim = parameters['dim']
        x0 = _parse_point(parameters['x0'])
        u = _load_function(parameters['function'], dim, x0)
        mu = _load_measure(parameters['measure'], dim)
        schedule = _schedule(parameters)
        target = parameters['target']
        if target is None:
            target = evaluate_at(u, x0)
        tol = parameters['tol']
    return convergence_study(u, mu, x0, schedule, target, tol,
                             parameters['thresholds'] or DEFAULT_THRESHOLDS)


def _run_compare(parameters):
    if parameters['scenario'] is not None:
        scenario = COMPARISON_SCENARIOS[parameters['scenario']]()
        u, v, mu, null_set = scenario.u, scenario.v, scenario.mu, \
            scenario.null_set
        check_points, schedule = scenario.check_points, scenario.schedule
    else:
        _require(parameters, 'dim', 'u', 'v', 'measure', 'check_points')
        dim = parameters['dim']
        u = _load_function(parameters['u'], dim)
        v = _load_function(parameters['v'], dim)
        mu = _load_measure(parameters['measure'], dim)
        null = [] if parameters['null'] is None \
            else _read_json(parameters['null'])
        if not isinstance(null, list):
            raise ValueError('exceptional set must be a JSON list of points')
        try:
            null_set = _PointSet(null)
        except TypeError as e:
            raise ValueError('malformed exceptional set: {0}'.format(e))
        check_points = _parse_points(parameters['check_points'])
        schedule = _schedule(parameters)
    if parameters['density'] is None:
        return comparison_check(u, v, mu, null_set, check_points, schedule,
                                parameters['tol'])
    if not isinstance(v, RieszFunction):
        raise ValueError('the density comparison needs a Riesz function '
                         'document for --v')
    return density_comparison_check(u, v, mu, null_set, check_points,
                                    schedule, parameters['density'],
                                    _schedule(parameters, 'radii').values(),
                                    parameters['tol'])


def _run_admissible(parameters):
    _require(parameters, 'gauge', 'dim', 'c')
    gauge = gauge_from_dict(_read_json(parameters['gauge']))
    grid = default_eps_grid(parameters['eps_start'], parameters['eps_steps'])
    check = check_star if parameters['star'] else check_admissible
    return check(gauge, parameters['dim'], parameters['c'], grid)


def _run_ad_check(parameters):
    _require(parameters, 'measure', 'k')
    mu = measure_from_dict(_read_json(parameters['measure']))
    return ad_regularity_check(mu, parameters['k'], parameters['samples'],
                               _schedule(parameters, 'radii').values(),
                               parameters['slope_tolerance'])


def _run_density(parameters):
    _require(parameters, 'measure', 's', 'x0')
    mu = measure_from_dict(_read_json(parameters['measure']))
    x0 = _parse_point(parameters['x0'])
    radii = _schedule(parameters, 'radii').values()
    if parameters['riesz'] is None:
        return densities(mu, parameters['s'], x0, radii,
                         parameters['tail_fraction'])
    rf = _load_function(parameters['riesz'], mu.dim.n, x0)
    if not isinstance(rf, RieszFunction):
        raise ValueError('the density condition needs a Riesz function '
                         'document for --riesz')
    return density_mean_value_check(rf, mu, parameters['s'], x0, radii,
                                    _schedule(parameters), parameters['tol'],
                                    parameters['tail_fraction'])


def _run_layer_cake(parameters):
    _require(parameters, 'function', 'measure')
    mu = measure_from_dict(_read_json(parameters['measure']))
    f = _load_function(parameters['function'], mu.dim.n)
    return verify_layer_cake(f, mu)


def _run_proof_bounds(parameters):
    if parameters['scenario'] is not None:
        scenario = PROOF_BOUND_SCENARIOS[parameters['scenario']]()
        mu, x0, cfg, gauge = scenario.mu, scenario.x0, scenario.config, \
            scenario.gauge
        w_samples, eps_samples = scenario.w_samples, scenario.eps_samples
    else:
        _require(parameters, 'measure', 'gauge', 'x0', 'A', 'B', 'M',
                 'w_points', 'eps_values')
        mu = measure_from_dict(_read_json(parameters['measure']))
        gauge = gauge_from_dict(_read_json(parameters['gauge']))
        x0 = _parse_point(parameters['x0'])
        cfg = ProofBoundConfig(parameters['p'], parameters['gamma'],
                               parameters['A'], parameters['B'],
                               parameters['M'])
        w_samples = _parse_points(parameters['w_points'])
        eps_samples = _parse_floats(parameters['eps_values'])
    return proof_bounds_check(mu, x0, mu.dim, cfg, gauge, w_samples,
                              eps_samples, parameters['tol'])


def _run_counterexample(parameters):
    cfg = CounterexampleConfig(parameters['N'], parameters['clamp'])
    return counterexample_demo(cfg, parameters['eps'],
                               parameters['resolution'])


# Command handlers, each mapping a parameter mapping to a report
COMMANDS = {
    'mean-value': _run_mean_value,
    'compare': _run_compare,
    'admissible': _run_admissible,
    'ad-check': _run_ad_check,
    'density': _run_density,
    'layer-cake': _run_layer_cake,
    'proof-bounds': _run_proof_bounds,
    'counterexample': _run_counterexample,
}


def _report_warnings(report):
    """Yields the warning lines for the conditions a report flags.
    """
    if isinstance(report, AdReport) and report.clamped:
        yield 'sample count clamped to the {0} positively-weighted ' \
            'atoms'.format(report.sampled_points)
    if isinstance(report, StarReport) and not report.consistent:
        yield 'star verdict {0!r} disagrees with the admissibility verdict ' \
            '{1!r}'.format(report.verdict, report.admissible_verdict)
    if isinstance(report, ProofBoundsReport):
        for diagnostic in report.diagnostics:
            yield diagnostic
    if isinstance(report, DensityMeanValueReport) and report.study is None:
        yield 'density condition infinite, convergence study not run'
    if isinstance(report, DensityComparisonReport):
        if report.comparison is None:
            yield 'density condition infinite, comparison not run'
        else:
            report = report.comparison
    if isinstance(report, ComparisonReport):
        for violation in report.audit_violations:
            yield 'u < v at atom {0} off the exceptional set ' \
                '(u = {1!r}, v = {2!r})'.format(violation['atom'],
                                                violation['u'],
                                                violation['v'])
        for point in report.points:
            if not point['conclusion']:
                yield 'comparison conclusion fails at {0} (broken link: ' \
                    '{1})'.format(point['x0'], point['failed_link'])


def _add_schedule(parser, prefix, start, factor, steps):
    flag = '--' + prefix
    parser.add_argument(flag + '-start', type = float, default = start,
                        help = 'first radius of the geometric schedule')
    parser.add_argument(flag + '-factor', type = float, default = factor,
                        help = 'ratio of consecutive radii, in (0, 1)')
    parser.add_argument(flag + '-steps', type = int, default = steps,
                        help = 'number of radii')


def build_parser():
    """Builds the argparse parser for every command.
    """
    parser = argparse.ArgumentParser(
        prog = 'mvlab',
        description = 'Mean value and comparison checks for subharmonic '
                      'functions on lower-dimensional sets.'
    )
    parser.add_argument('--version', action = 'version',
                        version = '%(prog)s {0}'.format(__version__))
    subparsers = parser.add_subparsers(dest = 'command')
    subparsers.required = True

    def add(name, summary):
        command = subparsers.add_parser(name, help = summary)
        command.add_argument('--out', default = None, metavar = 'PATH',
                             help = 'report path (default: stdout)')
        command.add_argument('--format', choices = ('csv', 'json'),
                             default = None,
                             help = 'report format (default: from the '
                                    'output extension, else json)')
        return command

    # mean-value
    command = add('mean-value', 'convergence of shrinking-ball means')
    command.add_argument('--scenario', choices = sorted(MEAN_VALUE_SCENARIOS))
    command.add_argument('--dim', type = int)
    command.add_argument('--function', metavar = 'JSON|PY')
    command.add_argument('--measure', metavar = 'JSON')
    command.add_argument('--x0')
    _add_schedule(command, 'eps', 0.4, 0.5, 10)
    command.add_argument('--target', type = float, default = None,
                         help = 'expected limit (default: u(x0))')
    command.add_argument('--tol', type = float, default = 1e-3)
    command.add_argument('--thresholds', type = _parse_floats,
                         default = None,
                         help = 'levels crossed for a -inf target')

    # compare
    command = add('compare', 'comparison chain u >= v off a null set')
    command.add_argument('--scenario', choices = sorted(COMPARISON_SCENARIOS))
    command.add_argument('--dim', type = int)
    command.add_argument('--u', metavar = 'JSON|PY')
    command.add_argument('--v', metavar = 'JSON|PY')
    command.add_argument('--measure', metavar = 'JSON')
    command.add_argument('--null', metavar = 'JSON',
                         help = 'list of points forming the exceptional set')
    command.add_argument('--check-points', metavar = 'X;Y;...')
    _add_schedule(command, 'eps', 0.4, 0.5, 5)
    command.add_argument('--tol', type = float,
                         default = DEFAULT_BOUND_TOLERANCE)
    command.add_argument('--density', type = float, default = None,
                         metavar = 'S',
                         help = 'check the density condition with exponent '
                                'S first')
    _add_schedule(command, 'radii', 0.25, 0.5, 8)

    # admissible
    command = add('admissible', 'admissibility of a gauge')
    command.add_argument('--gauge', metavar = 'JSON')
    command.add_argument('--dim', type = int)
    command.add_argument('--c', type = float)
    command.add_argument('--eps-start', type = float, default = 0.1)
    command.add_argument('--eps-steps', type = int, default = 16)
    command.add_argument('--star', action = 'store_true',
                         help = 'test the one-dimensional mean value form')

    # ad-check
    command = add('ad-check', 'Ahlfors-David regularity of a measure')
    command.add_argument('--measure', metavar = 'JSON')
    command.add_argument('--k', type = float)
    command.add_argument('--samples', type = int, default = 16)
    _add_schedule(command, 'radii', 0.25, 0.5, 6)
    command.add_argument('--slope-tolerance', type = float,
                         default = DEFAULT_SLOPE_TOLERANCE)

    # density
    command = add('density', 'upper and lower densities at a point')
    command.add_argument('--measure', metavar = 'JSON')
    command.add_argument('--s', type = float)
    command.add_argument('--x0')
    _add_schedule(command, 'radii', 0.25, 0.5, 8)
    command.add_argument('--tail-fraction', type = float,
                         default = DEFAULT_TAIL_FRACTION)
    command.add_argument('--riesz', metavar = 'JSON',
                         help = 'evaluate the density condition of this '
                                'Riesz function, then study its means')
    _add_schedule(command, 'eps', 0.4, 0.5, 10)
    command.add_argument('--tol', type = float,
                         default = DEFAULT_STUDY_TOLERANCE)

    # layer-cake
    command = add('layer-cake', 'discrete layer-cake identity')
    command.add_argument('--function', metavar = 'JSON|PY')
    command.add_argument('--measure', metavar = 'JSON')

    # proof-bounds
    command = add('proof-bounds', 'two-case bound on kernel averages')
    command.add_argument('--scenario', choices = sorted(PROOF_BOUND_SCENARIOS))
    command.add_argument('--measure', metavar = 'JSON')
    command.add_argument('--gauge', metavar = 'JSON')
    command.add_argument('--x0')
    command.add_argument('--p', type = float, default = 2.0)
    command.add_argument('--gamma', type = float, default = 1.5)
    command.add_argument('--A', type = float)
    command.add_argument('--B', type = float)
    command.add_argument('--M', type = float)
    command.add_argument('--w-points', metavar = 'X;Y;...')
    command.add_argument('--eps-values', metavar = 'E,E,...')
    command.add_argument('--tol', type = float,
                         default = DEFAULT_BOUND_TOLERANCE)

    # counterexample
    command = add('counterexample', 'co-dimension 2 counterexample')
    command.add_argument('--N', type = int, default = 1000)
    command.add_argument('--clamp', type = float, default = -2.0)
    command.add_argument('--eps', type = float, default = 0.1)
    command.add_argument('--resolution', type = int, default = 100000)

    return parser


def config_from_arguments(arguments):
    """Collects parsed arguments into a RunConfig.
    """
    parameters = dict(vars(arguments))
    command = parameters.pop('command')
    out = parameters.pop('out')
    format = parameters.pop('format')
    if format is None:
        extension = os.path.splitext(out or '')[1].lower()
        format = 'csv' if extension == '.csv' else 'json'
    return RunConfig(command, MappingProxyType(parameters), out, format)


def run(config):
    """Runs a command and writes its report.

    Args:
        config: The RunConfig

    Returns:
        The exit status.
    """
    try:
        report = COMMANDS[config.command](config.parameters)
        text = report.to_csv() if config.format == 'csv' else report.dumps()
    except HypothesisError as e:
        print_error(str(e))
        return EXIT_FAIL
    except (ValueError, IOError, OSError) as e:
        print_error(str(e))
        return EXIT_ERROR

    # Surface flagged conditions
    for warning in _report_warnings(report):
        print_warning(warning)

    # Write the report
    try:
        if config.out is None:
            sys.stdout.write(text)
        else:
            atomic_write(config.out, text)
            print_info('{0} report written to {1}'.format(report.kind,
                                                          config.out))
    except (IOError, OSError) as e:
        print_error('unable to write report: {0}'.format(e))
        return EXIT_ERROR

    return EXIT_PASS if report.passed else EXIT_FAIL


def main(argv = None):
    """Entry point of the mvlab console script.
    """
    arguments = build_parser().parse_args(argv)
    return run(config_from_arguments(arguments))


if __name__ == '__main__':
    sys.exit(main())
