# System imports
from sys import version_info, exit


# The oldest supported Python version, up to the minor revision
MINIMUM_PYTHON_VERSION = (3, 8)


def python_version_check():
    """Checks that the current version of Python is supported by mvlab,
    exiting if not.
    """
    if version_info[0:2] < MINIMUM_PYTHON_VERSION:
        exit('unsupported Python version, mvlab needs {0}.{1} or '
             'newer'.format(*MINIMUM_PYTHON_VERSION))
