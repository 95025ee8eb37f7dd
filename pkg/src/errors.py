"""Exception hierarchy shared by the library and the CLI."""


class HermitianError(ValueError):
    """Base class for every domain error raised by this package."""


# field construction and arithmetic
class NotPrime(HermitianError):
    pass


class TooLarge(HermitianError):
    pass


class NoIrreducibleFound(HermitianError):
    pass


class DivisionByZero(HermitianError, ZeroDivisionError):
    pass


class NotInSubfield(HermitianError):
    pass


class NoSquareRoot(HermitianError):
    pass


class EvenCharacteristic(HermitianError):
    pass


class ZeroInput(HermitianError):
    pass


class ZeroA(HermitianError):
    pass


class ParseError(HermitianError):
    pass


# curve / classification
class NotOnCurve(HermitianError):
    pass


class NoGamma(HermitianError):
    pass


class InternalInconsistency(HermitianError):
    """A relation that must hold by construction was violated."""


class BoundExceeded(HermitianError):
    pass


# codes
class MOutOfRange(HermitianError):
    pass


class PhaseDecompositionFailed(HermitianError):
    pass


class DOutOfRange(HermitianError):
    pass


class JOutOfRange(HermitianError):
    pass


class QTooSmall(HermitianError):
    pass


class InexactDivision(HermitianError):
    pass
