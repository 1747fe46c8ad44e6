# System imports
import unittest

# NumPy imports
import numpy

# mvlab imports
from mvlab.algebra import NEG_INF, POS_INF, is_neg_inf, add, multiply, \
    maximum, weighted_mean


class TestAlgebra(unittest.TestCase):
    def test_add(self):
        self.assertEqual(add(1.0, 2.0, 3.0, 4.0), 14.0)
        self.assertEqual(add(1.0, NEG_INF, 2.0, 5.0), NEG_INF)
        self.assertEqual(add(0.0, NEG_INF, 2.0, 5.0), 10.0)
        result = add(1.0, numpy.array([1.0, NEG_INF]), 1.0, numpy.ones(2))
        self.assertEqual(list(result), [2.0, NEG_INF])
        with self.assertRaises(ValueError):
            add(-1.0, 1.0, 1.0, 1.0)

    def test_multiply(self):
        self.assertEqual(multiply(0.0, NEG_INF), 0.0)
        self.assertEqual(multiply(2.0, NEG_INF), NEG_INF)
        self.assertEqual(list(multiply(0.0, numpy.array([NEG_INF, 1.0]))),
                         [0.0, 0.0])

    def test_maximum(self):
        self.assertEqual(maximum(NEG_INF, -2.0), -2.0)
        self.assertEqual(maximum(-1.0, -2.0), -1.0)
        self.assertEqual(list(maximum(numpy.array([NEG_INF, 0.5]), -2.0)),
                         [-2.0, 0.5])

    def test_is_neg_inf(self):
        self.assertTrue(is_neg_inf(NEG_INF))
        self.assertFalse(is_neg_inf(POS_INF))
        self.assertEqual(list(is_neg_inf(numpy.array([NEG_INF, 0.0]))),
                         [True, False])


class TestWeightedMean(unittest.TestCase):
    def test_plain(self):
        self.assertAlmostEqual(weighted_mean([1.0, 3.0], [1.0, 3.0]), 2.5,
                               places = 15)

    def test_constant_is_exact(self):
        values = numpy.full(1000, 0.1)
        weights = numpy.random.RandomState(7).uniform(0.1, 2.0, 1000)
        self.assertEqual(weighted_mean(values, weights), 0.1)

    def test_order_independent(self):
        state = numpy.random.RandomState(11)
        values = state.normal(0.0, 1e3, 5000)
        weights = state.uniform(0.0, 2.0, 5000)
        mean = weighted_mean(values, weights)
        for _ in range(5):
            order = state.permutation(5000)
            self.assertEqual(weighted_mean(values[order], weights[order]),
                             mean)
        self.assertAlmostEqual(mean, numpy.average(values, weights = weights),
                               delta = 1e-9)

    def test_sentinels(self):
        self.assertEqual(weighted_mean([NEG_INF, 1.0], [1.0, 1.0]), NEG_INF)
        self.assertEqual(weighted_mean([POS_INF, 1.0], [1.0, 1.0]), POS_INF)
        # Zero weights silence -inf
        self.assertEqual(weighted_mean([NEG_INF, 1.0], [0.0, 1.0]), 1.0)
        with self.assertRaises(ValueError):
            weighted_mean([NEG_INF, POS_INF], [1.0, 1.0])
        with self.assertRaises(ValueError):
            weighted_mean([numpy.nan, 1.0], [1.0, 1.0])
        with self.assertRaises(ValueError):
            weighted_mean([1.0, 2.0], [0.0, 0.0])


# Run the tests if this is the main module
if __name__ == '__main__':
    unittest.main()
