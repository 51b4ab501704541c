"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(ArithmeticError):
    """A closed-form expression hits a vanishing denominator."""


class SegmentError(ValueError):
    """A code size falls outside the segment a bound applies to."""


class ParityError(ValueError):
    """An operation defined only for even (or odd) lengths got the other parity."""


class InfeasibleParametersError(ValueError):
    """Graph or code parameters that cannot exist."""


class DistributionValidationError(ValueError):
    """A distance distribution or spectrum fails its sum check."""


class ConsistencyError(RuntimeError):
    """Two computation routes, or an LP sign condition, disagree."""


class RangeWarning(UserWarning):
    """Evaluation outside the separation interval where a bound is proved."""
