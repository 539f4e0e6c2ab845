"""Exception hierarchy shared by every efc module."""


class EfcError(Exception):
    """Base class for all library errors."""


# matroid-core
class DuplicateName(EfcError):
    pass


class LoopColumn(EfcError):
    pass


class RaggedRows(EfcError):
    pass


class SelfLoop(EfcError):
    pass


class BridgePresent(EfcError):
    pass


class UnknownElement(EfcError):
    pass


class TooLarge(EfcError):
    pass


class Overlap(EfcError):
    pass


class ParseError(EfcError):
    pass


# decomposition
class InvalidOverlap(EfcError):
    pass


class SharedLoopOrColoop(EfcError):
    pass


class InvalidTriangle(EfcError):
    pass


class TooSmallParts(EfcError):
    pass


class InvalidTree(EfcError):
    pass


class SingleNode(EfcError):
    pass


class NotTwoConnected(EfcError):
    pass


class NotParallel(EfcError):
    pass


# lp-core
class EmptyList(EfcError):
    pass


class GroundMismatch(EfcError):
    pass


class GroundOverlap(EfcError):
    pass


class EmptyPiece(EfcError):
    pass


# formulations
class Disconnected(EfcError):
    pass


class BlockMismatch(EfcError):
    pass


class WrongOverlap(EfcError):
    pass


class UnsupportedPart(EfcError):
    pass


class NotTU(EfcError):
    """Raised with the offending minor attached as ``rows``/``cols``/``det``."""

    def __init__(self, msg, rows=None, cols=None, det=None):
        super().__init__(msg)
        self.rows = rows
        self.cols = cols
        self.det = det


class NoRepresentation(EfcError):
    pass


class NotTriangleClique(EfcError):
    pass


class NotEdgeDisjoint(EfcError):
    pass


class NotStable(EfcError):
    pass


class WrongDegree(EfcError):
    pass


class NoValidRoot(EfcError):
    pass


# verify
class NoCircuit(EfcError):
    pass


class NegativeWeight(EfcError):
    pass
