"""
Exceptions raised by hmmfdr.

All of them derive from `HmmfdrError`, itself a `ValueError`, so
that callers who only care about "bad input" can catch that.
"""


class HmmfdrError(ValueError):
    pass


class NonStochasticRow(HmmfdrError):
    pass


class InvalidInitialLaw(HmmfdrError):
    pass


class EmptyPartitionClass(HmmfdrError):
    pass


class FloorViolation(HmmfdrError):

    """
    A κ-step transition probability fell below the declared floor.
    """

    def __init__(self, s, t, a, b, value, floor):
        self.s, self.t, self.a, self.b = s, t, a, b
        self.value, self.floor = value, floor
        ValueError.__init__(self,
                            'P_{%d,%d}(%s, %s) = %g is below the floor %g'
                            % (s, t, a, b, value, floor))


class IndexOutOfWindow(HmmfdrError):
    pass


class BackwardMarginalError(HmmfdrError):
    pass


class NonFiniteDensity(HmmfdrError):

    def __init__(self, t, c):
        self.t, self.c = t, c
        ValueError.__init__(self, 'non-finite density at t=%d, state %s'
                            % (t, c))


class DegenerateDenominator(HmmfdrError):
    pass


class WindowTooLarge(HmmfdrError):
    pass


class NotBinary(HmmfdrError):
    pass


class NotStationary(HmmfdrError):
    pass


class KappaNotSupported(HmmfdrError):
    pass


class DegreesOfFreedomTooSmall(HmmfdrError):
    pass


class InvalidQ(HmmfdrError):
    pass


class TooManyHypotheses(HmmfdrError):
    pass


class ConfigError(HmmfdrError):

    """
    A configuration field is missing or malformed.
    """

    def __init__(self, field, message):
        self.field = field
        ValueError.__init__(self, '%s: %s' % (field, message))
