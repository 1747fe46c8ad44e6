# System imports
from sys import path

# Setuptools imports
from setuptools import setup, find_packages

# Common imports
path.append('common/modules')
from version_check import python_version_check


# Check that this version of Python is supported
python_version_check()


# Setup mvlab
setup(
    # Basic installation information
    name = 'mvlab',
    version = '0.0.1',
    packages = find_packages(exclude = ['common', 'testing']),

    # Dependencies
    install_requires = [
        'numpy >= 1.17',
        'scipy >= 1.3',
        'pandas >= 0.25',
        'six >= 1.7.3',
    ],

    # Command line front end
    entry_points = {
        'console_scripts': [
            'mvlab = mvlab.cli:main',
        ],
    },

    # Metadata for PyPI
    description = 'Mean value and comparison checks for subharmonic '
                  'functions on lower-dimensional sets',
    license = 'MIT',
    keywords = 'potential theory subharmonic mean value hausdorff measure',
)
