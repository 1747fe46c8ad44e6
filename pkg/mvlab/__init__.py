"""Provides numerical checks of mean value and comparison theorems for
subharmonic functions on lower-dimensional sets.
"""


# Export the mvlab version
__version__ = '0.0.1'
