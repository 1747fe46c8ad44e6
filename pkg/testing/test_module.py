# System imports
import tempfile
import unittest
from os.path import dirname, join

# NumPy imports
import numpy

# mvlab imports
from mvlab.module import load, load_function, definitions


EXAMPLE_PATH = join(dirname(__file__), 'example_module.py')


class TestModule(unittest.TestCase):
    def test(self):
        # Load the module
        module = load(EXAMPLE_PATH, {'dim': 2, 'x0': [1.0, 0.0]})

        # Check exported information
        self.assertEqual(module.dim, 2)
        self.assertEqual(list(module.center), [1.0, 0.0])
        self.assertTrue(hasattr(module, 'function'))
        self.assertFalse(hasattr(module, 'does_not_exist'))

        # Reload the module with a different configuration
        module = load(EXAMPLE_PATH, {'dim': 3})
        self.assertEqual(module.dim, 3)
        self.assertEqual(list(module.center), [0.0, 0.0, 0.0])

    def test_definitions_outside_load(self):
        self.assertIsNone(definitions())

    def test_definitions_popped_after_failure(self):
        # A module raising during its load must not leave definitions behind
        with self.assertRaises(KeyError):
            load(EXAMPLE_PATH, {})
        self.assertIsNone(definitions())


class TestLoadFunction(unittest.TestCase):
    def test_vectorized(self):
        function = load_function(EXAMPLE_PATH, {'dim': 2, 'x0': [1.0, 0.0]})
        values = function(numpy.array([[1.0, 0.0], [0.0, 0.0], [1.0, 2.0]]))
        self.assertEqual(list(values), [0.0, 1.0, 4.0])

    def test_missing_function(self):
        with tempfile.TemporaryDirectory() as directory:
            path = join(directory, 'no_function.py')
            with open(path, 'w') as f:
                f.write('value = 1\n')
            with self.assertRaises(ValueError):
                load_function(path, {'dim': 2})


# Run the tests if this is the main module
if __name__ == '__main__':
    unittest.main()
