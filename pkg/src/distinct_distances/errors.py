"""Exception hierarchy shared by every module of the package."""


class DistinctDistancesError(Exception):
    """Base class for all errors raised by this package."""


class InvalidScalar(DistinctDistancesError, ValueError):
    pass


class OutOfDomain(DistinctDistancesError, ValueError):
    pass


class InsufficientDomain(DistinctDistancesError, ValueError):
    pass


class InvalidReparam(DistinctDistancesError, ValueError):
    pass


class DuplicatePoint(DistinctDistancesError, ValueError):
    def __init__(self, i, j):
        super().__init__(f"points {i} and {j} coincide")
        self.indices = (i, j)


class DuplicateElement(DistinctDistancesError, ValueError):
    pass


class SizeGuard(DistinctDistancesError, ValueError):
    pass


class NotPrime(DistinctDistancesError, ValueError):
    pass


class TooSmall(DistinctDistancesError, ValueError):
    pass


class AbsentClosedForm(DistinctDistancesError, ValueError):
    pass


class InvalidDimension(DistinctDistancesError, ValueError):
    pass


class DimensionMismatch(DistinctDistancesError, ValueError):
    pass


class ZeroDirection(DistinctDistancesError, ValueError):
    pass


class CurveSpecError(DistinctDistancesError, ValueError):
    """Syntax error in a curve spec, with the byte offset where parsing failed."""

    def __init__(self, offset, expected, text=""):
        self.offset = offset
        self.expected = expected
        msg = f"at byte {offset}: expected {expected}"
        if text:
            msg += f" in {text!r}"
        super().__init__(msg)
