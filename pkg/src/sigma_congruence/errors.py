"""Exception types raised across the package."""


class SigmaError(Exception):
    """Base class for every error this package raises on purpose."""


class FieldMismatch(SigmaError, TypeError):
    pass


class DivisionByZero(SigmaError, ZeroDivisionError):
    pass


class DimensionMismatch(SigmaError, ValueError):
    pass


class IndexOutOfRange(SigmaError, IndexError):
    pass


class SingularMatrix(SigmaError, ValueError):
    pass


class SingularTransform(SingularMatrix):
    """The transforming matrix of a congruence is singular."""


class UnsupportedField(SigmaError, ValueError):
    pass


class CapExceeded(SigmaError, ValueError):
    """A brute-force enumeration was asked to run beyond its size cap."""


class ParseError(SigmaError, ValueError):
    pass
