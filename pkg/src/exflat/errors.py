"""Exception hierarchy.

Input problems derive from ``InvalidInput`` (CLI exit code 2), numerical
failures from ``NumericFailure`` (CLI exit code 3).
"""


class ExflatError(Exception):
    pass


class InvalidInput(ExflatError, ValueError):
    pass


class NumericFailure(ExflatError, ArithmeticError):
    pass


class AnchorOffCircle(InvalidInput):
    pass


class DuplicateAnchors(InvalidInput):
    pass


class NonpositiveWeight(InvalidInput):
    pass


class AnchorSingularity(InvalidInput):
    pass


class PunctureTooClose(InvalidInput):
    pass


class OutsideStrip(InvalidInput):
    pass


class OutsideDomain(InvalidInput):
    pass


class DegenerateConfiguration(InvalidInput):
    pass


class SchemaError(InvalidInput):
    pass


class NonConvergence(NumericFailure):
    pass


class ToleranceNotMet(NumericFailure):
    pass


class RootNearBoundary(NumericFailure):
    pass


class NoConvergence(NumericFailure):
    """End directions failed the Cauchy test under extrapolation."""
