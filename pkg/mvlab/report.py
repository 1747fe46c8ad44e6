"""Provides the base interface for all mvlab result records and their JSON and
CSV serialization.

JSON documents carry a top-level "schema" key, format every float with 17
significant digits, and write infinities as the strings "inf" and "-inf", so
identical inputs always produce byte-identical documents.
"""


# System imports
import json
from math import isinf, isnan

# NumPy imports
import numpy

# Pandas imports
from pandas import DataFrame

# Six imports
from six import string_types, integer_types


# Set up default exports
__all__ = [
    'SCHEMA',
    'Report',
    'plain',
    'dumps',
    'parse_float',
]


# The versioned report schema tag
SCHEMA = 'mvlab/1'

# The float format used for every emitted number
FLOAT_FORMAT = '%.17g'


class Report(object):
    """Abstract base class for all reports.

    Implementers must override `to_dict` and `passed`.  Reports with a natural
    tabular form should also override `rows` and `columns`.
    """

    # The report name written next to the schema tag
    kind = 'report'

    def to_dict(self):
        """Returns the report contents as a dictionary of JSON-compatible
        values (NumPy scalars and arrays are converted on output).

        Implementers must override this method.
        """
        raise NotImplementedError('abstract method')

    @property
    def passed(self):
        """Returns the verdict of the report.

        Implementers must override this method.
        """
        raise NotImplementedError('abstract method')

    # Column names of the tabular form
    columns = None

    def rows(self):
        """Returns the tabular form of the report as a list of row tuples.

        The default is a single row built from the scalar entries of
        `to_dict`.
        """
        document = self.to_dict()
        return [tuple(document[c] for c in self.tabular_columns())]

    def tabular_columns(self):
        """Returns the CSV column names.
        """
        if self.columns is not None:
            return list(self.columns)
        return sorted(k
                      for k, v
                      in self.to_dict().items()
                      if not isinstance(v, (list, tuple, dict)))

    def dumps(self):
        """Returns the JSON document for the report.
        """
        document = {'schema': SCHEMA, 'report': self.kind}
        document.update(self.to_dict())
        return dumps(document)

    def to_csv(self):
        """Returns the CSV text for the report.
        """
        frame = DataFrame([tuple(plain(v) for v in row)
                           for row
                           in self.rows()],
                          columns = self.tabular_columns())
        return frame.to_csv(index = False, float_format = FLOAT_FORMAT)


def plain(value):
    """Converts NumPy scalars and arrays (recursively) to plain Python values.
    """
    if isinstance(value, dict):
        return dict((k, plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple, numpy.ndarray)):
        return [plain(v) for v in value]
    if isinstance(value, (bool, numpy.bool_)):
        return bool(value)
    if isinstance(value, numpy.integer):
        return int(value)
    if isinstance(value, numpy.floating):
        return float(value)
    return value


def _encode(value):
    if value is None:
        return 'null'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, integer_types):
        return str(value)
    if isinstance(value, float):
        if isnan(value):
            raise ValueError('NaN cannot appear in a report')
        if isinf(value):
            return '"inf"' if value > 0 else '"-inf"'
        return FLOAT_FORMAT % value
    if isinstance(value, string_types):
        return json.dumps(value)
    if isinstance(value, dict):
        return '{' + ', '.join('{0}: {1}'.format(json.dumps(str(k)),
                                                 _encode(value[k]))
                               for k
                               in sorted(value)) + '}'
    if isinstance(value, list):
        return '[' + ', '.join(_encode(v) for v in value) + ']'
    raise ValueError('unable to encode {0!r} in a report'.format(value))


def dumps(document):
    """Serializes a document to deterministic JSON text.

    Args:
        document: A dictionary of JSON-compatible values, NumPy values
            allowed

    Returns:
        The JSON text, terminated by a newline.
    """
    return _encode(plain(document)) + '\n'


def parse_float(value):
    """Reads back a float written by `dumps`, accepting the infinity strings.
    """
    if isinstance(value, string_types):
        if value in ('inf', '+inf', 'Infinity'):
            return float('inf')
        if value in ('-inf', '-Infinity'):
            return float('-inf')
        raise ValueError('invalid number {0!r}'.format(value))
    return float(value)
