"""Exception types raised across the package.

Everything derives from :class:`BeliefMapError` so callers can catch the
whole family at once; most types also subclass :class:`ValueError` because
they signal bad arguments or bad input data.
"""


class BeliefMapError(Exception):
    """Base class for all errors raised by this package."""


class NegativeMassError(BeliefMapError, ValueError):
    """A mass value is negative."""


class MassSumError(BeliefMapError, ValueError):
    """The masses of an assignment do not sum to one within tolerance."""


class InvalidSubsetError(BeliefMapError, ValueError):
    """A subset refers to values outside the domain, or is malformed."""


class DomainMismatchError(BeliefMapError, ValueError):
    """Two operands are defined over different value domains."""


class UnnormalizedMassError(BeliefMapError, ValueError):
    """An operation requiring a normalized assignment got mass on the empty set."""


class TotalConflictError(BeliefMapError, ArithmeticError):
    """Combination left (almost) all mass on the empty set; normalization is undefined."""


class NoEvidenceError(BeliefMapError, ValueError):
    """An aggregation was asked to combine an empty collection of evidence."""


class EmptyValueSetError(BeliefMapError, ValueError):
    """A value set that must be nonempty is empty."""


class NegativeDistanceError(BeliefMapError, ValueError):
    """A distance argument is negative (or NaN)."""


class NonPositiveDistanceError(BeliefMapError, ValueError):
    """A distance that must be strictly positive is zero or negative."""


class TrivialObservationError(BeliefMapError, ValueError):
    """An observation covers the whole domain and therefore carries no evidence."""


class NonSingletonObservationError(BeliefMapError, ValueError):
    """The closed-form combination path only accepts single-valued observations."""


class OutOfBoundsError(BeliefMapError, ValueError):
    """A point lies outside the space it is used with."""


class SpaceError(BeliefMapError, ValueError):
    """A space definition is inconsistent (asymmetric or incomplete distances, ...)."""


class WrongModeError(BeliefMapError, ValueError):
    """A derived map was requested from a field built in an incompatible mode."""


class UnsupportedDomainSizeError(BeliefMapError, ValueError):
    """A rendering style only defined for binary domains was applied to a larger one."""


class ObservationParseError(BeliefMapError, ValueError):
    """An observation document is malformed.  Carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownValueError(ObservationParseError):
    """An observation document refers to a value missing from its domain."""
