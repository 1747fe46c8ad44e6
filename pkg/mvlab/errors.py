"""Provides the exception types raised by mvlab.

All of them derive from ValueError, so callers which only care about bad
input can keep catching ValueError.
"""


# Set up default exports
__all__ = [
    'DomainError',
    'DimensionError',
    'HypothesisError',
]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation.
    """
    pass


class DimensionError(DomainError):
    """Raised when points or measures of different dimensions are mixed.
    """
    pass


class HypothesisError(ValueError):
    """Raised when the data supplied to a check violates a named hypothesis
    of the theorem being checked.
    """

    def __init__(self, hypothesis, message):
        """Initializes a new instance of the HypothesisError class.

        Args:
            hypothesis: A short name for the violated hypothesis
            message: The diagnostic message
        """
        super(HypothesisError, self).__init__(
            '{0} (hypothesis: {1})'.format(message, hypothesis)
        )
        self.hypothesis = hypothesis
