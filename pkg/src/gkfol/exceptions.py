"""Exception hierarchy shared by all modules."""


class GKError(Exception):
    """Base class for every error raised by gkfol."""


class InvalidWeights(GKError, ValueError):
    pass


class DuplicateWeights(InvalidWeights):
    pass


class TooFewWeights(InvalidWeights):
    pass


class DimensionMismatch(GKError, ValueError):
    pass


class GradeOverflow(GKError, ValueError):
    pass


class GradeMismatch(GKError, ValueError):
    pass


class ZeroField(GKError, ValueError):
    pass


class ChartOutOfRange(GKError, ValueError):
    pass


class NonQuasiHomogeneousInput(GKError, ValueError):
    pass


class EmptyFamily(GKError, ValueError):
    pass


class EmptyBasis(GKError, ValueError):
    pass


class UnsupportedN(GKError, ValueError):
    pass


class BudgetExceeded(GKError):
    """A standard-basis computation ran past its step budget."""


class ParseError(GKError, ValueError):
    pass
