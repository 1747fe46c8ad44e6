"""Example function module for unit tests.
"""


# NumPy imports
import numpy

# mvlab imports
from mvlab.module import definitions


# Read the run parameters
dim = definitions()['dim']
center = numpy.zeros(dim) if definitions().get('x0') is None \
    else numpy.asarray(definitions()['x0'], dtype = numpy.float64)


# The squared distance to the center, in the run's dimension
def function(points):
    points = numpy.atleast_2d(points)
    return numpy.sum((points - center) ** 2, axis = 1)
