"""Exception hierarchy.

Everything raised on purpose by this package derives from PluriboundError, so
callers (and the CLI) can map failure classes to exit codes without fishing
for stray ValueErrors.
"""


class PluriboundError(Exception):
    """Base class for all package errors."""


class DomainError(PluriboundError):
    """Inputs outside the mathematical domain of the requested operation
    (non-positive discriminant, profile of the wrong length, failed
    precondition of a dichotomy bound, ...)."""


class NoAdmissibleBranch(DomainError):
    """The branch optimizer found no admissible branch below its ceiling."""


class UnsupportedDimension(DomainError):
    """No built-in volume profile exists for the requested dimension."""


class DegenerateFraction(DomainError):
    """A threshold of the form t/(1-{s}) was requested but s is an exact
    integer, so the fractional part vanishes."""


class PrecisionExhausted(PluriboundError):
    """Adaptive refinement hit the precision cap without certifying the
    requested predicate.  Carries the cap that was in force."""

    def __init__(self, message: str, bits: int):
        super().__init__(f"{message} (precision cap {bits} bits)")
        self.bits = bits


class DivisionByZero(PluriboundError):
    """Division by an expression whose value is certified to be zero."""


class TailNotMonotone(PluriboundError):
    """The tail of a supposedly non-increasing threshold sweep increased,
    so truncating the sweep would be unsound."""


class ParseError(PluriboundError):
    """Malformed textual expression given to the expression parser."""


class DataIntegrityError(PluriboundError):
    """A shipped reference table fails its checksum or is missing."""
