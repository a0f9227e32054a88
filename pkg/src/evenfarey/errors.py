"""Exception types shared across the package.

Every error derives from ValueError so callers that only care about bad
input can catch that.
"""


class FareyError(ValueError):
    pass


class NotInvertible(FareyError):
    pass


class InvalidModulus(FareyError):
    pass


class NotConsecutive(FareyError):
    pass


class EndOfSequence(FareyError):
    pass


class NotNeighborPair(FareyError):
    pass


class NotCoprime(FareyError):
    pass


class ChainLeavesRange(FareyError):
    pass


class EmptyResult(FareyError):
    pass


class EmptyInput(FareyError):
    pass


class ZeroArea(FareyError):
    pass


class OutsideDomain(FareyError):
    pass


class InvalidK(FareyError):
    pass


class DegeneratePolygon(FareyError):
    pass


class ParallelDirections(FareyError):
    pass


class DegenerateCell(FareyError):
    pass


class EmptyCell(FareyError):
    pass


class TruncationUnsound(FareyError):
    pass


class InvalidParity(FareyError):
    pass


class UnboundedLevels(FareyError):
    """Raised when a level-by-level sum would never terminate."""


class OutOfDomain(FareyError):
    pass
