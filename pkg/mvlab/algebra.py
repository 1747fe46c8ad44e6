"""Provides a common algebra for extended real values.

Values live in [-inf, +inf).  The -inf sentinel is an ordinary IEEE negative
infinity, but arithmetic on it goes through this module so that the rules

    (-inf) + finite = -inf
    max(-inf, a) = a
    coefficient * (-inf) = -inf for coefficient > 0

hold and no NaN is ever produced by an (inf - inf) or (0 * inf) expression.
Scalars and NumPy arrays are both supported.
"""


# System imports
from math import fsum

# NumPy imports
import numpy


# Set up default exports
__all__ = [
    'NEG_INF',
    'POS_INF',
    'is_neg_inf',
    'add',
    'multiply',
    'maximum',
    'weighted_mean',
]


# The distinguished sentinels
NEG_INF = float('-inf')
POS_INF = float('inf')


def is_neg_inf(value):
    """Returns True (element-wise for arrays) where value is the -inf
    sentinel.
    """
    return numpy.isneginf(value)


def add(coefficient_1, value_1, coefficient_2, value_2):
    """Provides an addition algebra for extended reals.

    Incoming values are not modified.  Coefficients must be nonnegative.

    Args:
        coefficient_1: The first coefficient, a nonnegative scalar
        value_1: The first value, a scalar or array
        coefficient_2: The second coefficient, a nonnegative scalar
        value_2: The second value, a scalar or array

    Returns:
        The value of the expression:
            ((coefficient_1 * value_1) + (coefficient_2 * value_2))
        with -inf absorbing every finite summand.
    """
    # Validate coefficients
    if coefficient_1 < 0 or coefficient_2 < 0:
        raise ValueError('extended real coefficients must be nonnegative')

    # Compute each scaled term separately so that 0 * -inf stays 0
    first = multiply(coefficient_1, value_1)
    second = multiply(coefficient_2, value_2)

    # +inf never appears in [-inf, +inf), so a plain sum is safe
    result = numpy.add(first, second)

    # All done
    if numpy.ndim(result) == 0:
        return float(result)
    return result


def multiply(coefficient, value):
    """Provides a multiplication algebra for extended reals.

    Incoming values are not modified.

    Args:
        coefficient: The coefficient, a nonnegative scalar
        value: The value, a scalar or array

    Returns:
        The value of the expression:
            (coefficient * value)
        where a zero coefficient annihilates -inf.
    """
    if coefficient < 0:
        raise ValueError('extended real coefficients must be nonnegative')
    if coefficient == 0:
        return numpy.zeros_like(value, dtype = numpy.float64) \
            if numpy.ndim(value) > 0 else 0.0
    result = numpy.multiply(coefficient, value)
    if numpy.ndim(result) == 0:
        return float(result)
    return result


def maximum(value, floor):
    """Computes max(value, floor) with max(-inf, a) = a.

    Args:
        value: A scalar or array of extended reals
        floor: A finite scalar

    Returns:
        The clamped value, of the same shape as value.
    """
    result = numpy.maximum(value, floor)
    if numpy.ndim(result) == 0:
        return float(result)
    return result


def weighted_mean(values, weights):
    """Computes the weighted average of extended real values.

    Contributions with zero weight are ignored, even if they are -inf.  Both
    sums are correctly rounded with math.fsum, so the result does not depend
    on the order of the contributions.

    Args:
        values: A one-dimensional array of extended reals
        weights: A one-dimensional array of nonnegative weights with positive
            sum

    Returns:
        The weighted mean, NEG_INF if any positively-weighted value is -inf,
        or POS_INF if any positively-weighted value is +inf.
    """
    # Convert inputs
    values = numpy.asarray(values, dtype = numpy.float64)
    weights = numpy.asarray(weights, dtype = numpy.float64)

    # Drop zero-weight contributions
    active = weights > 0
    if not numpy.any(active):
        raise ValueError('weighted mean requires positive total weight')
    values = values[active]
    weights = weights[active]

    # Sentinel propagation
    if numpy.any(numpy.isnan(values)):
        raise ValueError('weighted mean of NaN values is undefined')
    if numpy.any(numpy.isneginf(values)):
        if numpy.any(numpy.isposinf(values)):
            raise ValueError('weighted mean of both infinities is undefined')
        return NEG_INF
    if numpy.any(numpy.isposinf(values)):
        return POS_INF

    # Average the deviations from the smallest value, so that constant inputs
    # come back exactly, and keep the result inside the value range
    reference = numpy.min(values)
    result = reference + fsum(weights * (values - reference)) / fsum(weights)

    # All done
    return float(min(max(result, numpy.min(values)), numpy.max(values)))
