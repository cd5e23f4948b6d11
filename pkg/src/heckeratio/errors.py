"""Exception hierarchy shared by all modules."""


class HeckeRatioError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HeckeRatioError, ValueError):
    pass


# numfield
class ReducibleLayer(HeckeRatioError):
    pass


class DegreeOverLimit(HeckeRatioError):
    pass


class PrecisionExhausted(HeckeRatioError):
    pass


class ClosureTooLarge(HeckeRatioError):
    pass


class NotABasis(HeckeRatioError):
    pass


class NotTotallyNegative(HeckeRatioError):
    pass


class SqrtNotInClosure(HeckeRatioError):
    pass


# chartypes
class NotPure(HeckeRatioError):
    pass


class FiberMismatch(HeckeRatioError):
    pass


class WindowViolated(HeckeRatioError):
    pass


class NotACMTypeAfterAction(HeckeRatioError):
    pass


# qi
class UnitIncompatible(HeckeRatioError):
    pass


class EvenPrimeUnsupported(HeckeRatioError):
    pass


class TwistTableError(HeckeRatioError):
    pass


# lseries
class PoleAtS(HeckeRatioError):
    pass


class OutsideConvergence(HeckeRatioError):
    pass


class TailTooLarge(HeckeRatioError):
    pass


class NotCritical(HeckeRatioError):
    pass


class DenominatorIndistinguishableFromZero(HeckeRatioError):
    pass


class RootNumberNotFound(HeckeRatioError):
    pass
