"""Exception types shared across the library."""


class SinglocalError(Exception):
    """Base class for all library errors."""


class PolyParseError(SinglocalError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ArityError(SinglocalError):
    """Variable-set mismatch or unsupported number of variables."""


class BudgetExceededError(SinglocalError):
    """A computation hit its configured resource cap.

    Raised loudly instead of returning a possibly wrong answer.
    """


class NotMPrimaryError(SinglocalError):
    """The monomial data misses a coordinate axis (ideal is not m-primary)."""


class InfiniteColengthError(SinglocalError):
    """A finite quotient was required but the staircase is not cofinite."""


class IsolatedSingularityRequiredError(SinglocalError):
    """The operation is only defined for isolated singularities."""


class NotQuasiHomogeneousError(SinglocalError):
    """No unique positive weight vector makes the polynomial weighted-homogeneous."""


class DegenerateSampleError(SinglocalError):
    """A random draw landed on a degenerate locus; the caller may resample."""


class SamplingInconclusiveError(SinglocalError):
    """Two-seed stability failed after all escalations; no value is reported."""


class CorpusError(SinglocalError):
    """Corpus file failed validation; nothing was executed."""
