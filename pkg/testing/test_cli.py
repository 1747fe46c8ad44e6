# System imports
import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stdout, redirect_stderr

# mvlab imports
from mvlab.cli import EXIT_PASS, EXIT_FAIL, EXIT_ERROR, build_parser, \
    config_from_arguments, main


# A segment generator document in the plane
SEGMENT = json.dumps({'generator': 'segment', 'dim': 2, 'half_length': 1.0,
                      'resolution': 100000})

# The function module used by the module loader tests
EXAMPLE_MODULE = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                              'example_module.py')


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def _path(self, name):
        return os.path.join(self.directory, name)

    def _main(self, argv):
        # Returns the exit status with the captured stdout and stderr
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            status = main(argv)
        return status, stdout.getvalue(), stderr.getvalue()

    def test_mean_value(self):
        out = self._path('mean.csv')
        status, _, _ = self._main([
            'mean-value',
            '--dim', '2',
            '--function', '{"kind": "planar-power", "m": 2}',
            '--measure', SEGMENT,
            '--x0', '0,0',
            '--out', out,
        ])
        self.assertEqual(status, EXIT_PASS)
        with open(out) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], 'eps,mean,target,error,atoms_in_ball')
        self.assertEqual(len(lines), 11)

    def test_function_module(self):
        status, stdout, _ = self._main([
            'mean-value',
            '--dim', '2',
            '--function', EXAMPLE_MODULE,
            '--measure', SEGMENT,
            '--x0', '0,0',
        ])
        self.assertEqual(status, EXIT_PASS)
        document = json.loads(stdout)
        self.assertEqual(document['report'], 'convergence')
        self.assertTrue(document['converged'])

    def test_scenario(self):
        status, stdout, _ = self._main(['mean-value', '--scenario',
                                        'singular'])
        self.assertEqual(status, EXIT_PASS)
        self.assertEqual(json.loads(stdout)['target'], '-inf')

    def test_counterexample(self):
        out = self._path('counterexample.json')
        status, stdout, _ = self._main(['counterexample', '--out', out])
        self.assertEqual(status, EXIT_PASS)
        self.assertIn('written to', stdout)
        with open(out) as f:
            document = json.load(f)
        self.assertEqual(document['schema'], 'mvlab/1')
        self.assertEqual(document['report'], 'counterexample')
        self.assertEqual(document['N'], 1000)
        self.assertTrue(document['pass'])

    def test_admissible(self):
        status, stdout, _ = self._main([
            'admissible',
            '--gauge', '{"form": "power", "k": 0}',
            '--dim', '3',
            '--c', '5',
        ])
        self.assertEqual(status, EXIT_FAIL)
        document = json.loads(stdout)
        self.assertTrue(document['divergent'])
        self.assertEqual(document['m_estimate'], 'inf')

        status, _, _ = self._main([
            'admissible',
            '--gauge', '{"form": "power", "k": 2}',
            '--dim', '3',
            '--c', '5',
            '--star',
        ])
        self.assertEqual(status, EXIT_PASS)

    def test_compare(self):
        status, _, stderr = self._main(['compare', '--scenario', 'codim2'])
        self.assertEqual(status, EXIT_FAIL)
        self.assertIn('comparison conclusion fails', stderr)
        self.assertIn('broken link: lim M_v = v(x0)', stderr)

        status, _, _ = self._main(['compare', '--scenario', 'hypersurface'])
        self.assertEqual(status, EXIT_PASS)

    def test_layer_cake(self):
        measure = json.dumps({'dim': 2, 'label': 'pair', 'atoms': [
            {'p': [0.0, 0.0], 'w': 1.0},
            {'p': [1.0, 0.0], 'w': 2.0},
        ]})
        status, stdout, _ = self._main([
            'layer-cake',
            '--function', '{"kind": "constant", "value": 3}',
            '--measure', measure,
        ])
        self.assertEqual(status, EXIT_PASS)
        document = json.loads(stdout)
        self.assertEqual(document['lhs'], 9.0)
        self.assertEqual(document['rhs'], 9.0)

    def test_density_study(self):
        riesz = json.dumps({'dim': 2, 'domain_radius': 1.0,
                            'nu': [{'p': [0.5, 0.0], 'm': 2.0}]})
        status, stdout, _ = self._main([
            'density',
            '--measure', SEGMENT,
            '--s', '1',
            '--x0', '0,0',
            '--riesz', riesz,
        ])
        self.assertEqual(status, EXIT_PASS)
        document = json.loads(stdout)
        self.assertEqual(document['report'], 'density-mean-value')
        self.assertTrue(document['condition']['finite'])
        self.assertTrue(document['study']['converged'])

        singular = json.dumps({'dim': 2, 'domain_radius': 1.0,
                               'nu': [{'p': [0.0, 0.0], 'm': 1.0}]})
        status, stdout, stderr = self._main([
            'density',
            '--measure', SEGMENT,
            '--s', '1',
            '--x0', '0,0',
            '--riesz', singular,
        ])
        self.assertEqual(status, EXIT_FAIL)
        self.assertIsNone(json.loads(stdout)['study'])
        self.assertIn('convergence study not run', stderr)

    def test_hypothesis(self):
        # An empty ball violates the mass condition
        measure = json.dumps({'dim': 2, 'atoms': [
            {'p': [0.5, 0.0], 'w': 1.0},
        ]})
        status, _, stderr = self._main([
            'mean-value',
            '--dim', '2',
            '--function', '{"kind": "constant", "value": 1}',
            '--measure', measure,
            '--x0', '0,0',
            '--eps-steps', '2',
        ])
        self.assertEqual(status, EXIT_FAIL)
        self.assertIn('hypothesis', stderr)

    def test_malformed(self):
        status, _, stderr = self._main([
            'admissible',
            '--gauge', '{"form": ',
            '--dim', '3',
            '--c', '5',
        ])
        self.assertEqual(status, EXIT_ERROR)
        self.assertIn('malformed JSON', stderr)

    def test_malformed_documents(self):
        cases = [
            ['admissible', '--gauge', '{"form": "power", "k": null}',
             '--dim', '3', '--c', '5'],
            ['admissible', '--gauge', '{"form": "sum", "terms": 5}',
             '--dim', '3', '--c', '5'],
            ['density', '--measure', '{"dim": 2, "atoms": [5]}',
             '--s', '1', '--x0', '0,0'],
            ['mean-value', '--dim', '2',
             '--function', '{"dim": 2, "domain_radius": 1, "nu": [3]}',
             '--measure', SEGMENT, '--x0', '0,0'],
            ['compare', '--dim', '2',
             '--u', '{"kind": "constant", "value": 1}',
             '--v', '{"kind": "constant", "value": 0}',
             '--measure', SEGMENT, '--null', '{"p": 1}',
             '--check-points', '0,0'],
        ]
        for argv in cases:
            status, stdout, stderr = self._main(argv)
            self.assertEqual(status, EXIT_ERROR, argv)
            self.assertEqual(stdout, '')
            self.assertNotIn('Traceback', stderr)

    def test_missing(self):
        status, _, stderr = self._main(['mean-value', '--dim', '2'])
        self.assertEqual(status, EXIT_ERROR)
        self.assertIn('--function', stderr)

        status, _, _ = self._main(['density', '--measure',
                                   self._path('absent.json'), '--s', '1',
                                   '--x0', '0,0'])
        self.assertEqual(status, EXIT_ERROR)

    def test_usage(self):
        with self.assertRaises(SystemExit) as context:
            with redirect_stderr(io.StringIO()):
                main(['integrate'])
        self.assertEqual(context.exception.code, 2)

    def test_deterministic(self):
        arguments = ['counterexample', '--N', '10', '--eps', '0.5',
                     '--resolution', '1000']
        outputs = []
        for name in ('first.json', 'second.json'):
            self.assertEqual(
                self._main(arguments + ['--out', self._path(name)])[0],
                EXIT_PASS
            )
            with open(self._path(name), 'rb') as f:
                outputs.append(f.read())
        self.assertEqual(outputs[0], outputs[1])

    def test_format(self):
        parser = build_parser()
        config = config_from_arguments(parser.parse_args(
            ['counterexample', '--out', 'report.CSV']
        ))
        self.assertEqual(config.format, 'csv')
        config = config_from_arguments(parser.parse_args(
            ['counterexample', '--out', 'report.csv', '--format', 'json']
        ))
        self.assertEqual(config.format, 'json')
        config = config_from_arguments(parser.parse_args(['counterexample']))
        self.assertEqual(config.format, 'json')
        self.assertIsNone(config.out)
        with self.assertRaises(TypeError):
            config.parameters['N'] = 5


# Run the tests if this is the main module
if __name__ == '__main__':
    unittest.main()
