"""Exception hierarchy shared by every part of the package."""


class TauTiltError(Exception):
    """Base class for all errors raised by tautilt."""


# algebra construction
class MalformedRelation(TauTiltError):
    pass


class NotAdmissibleWithinCap(TauTiltError):
    pass


class EmptyOrFullVertexSet(TauTiltError):
    pass


class ParseError(TauTiltError):
    pass


# modules
class AlgebraMismatch(TauTiltError):
    pass


class ZeroModule(TauTiltError):
    pass


class NonSplitResidue(TauTiltError):
    pass


class UnsupportedField(TauTiltError):
    pass


class NotAQuotient(TauTiltError):
    pass


class IsomorphismUndecided(TauTiltError):
    pass


class InvalidModule(TauTiltError):
    pass


# tau-tilting
class InvariantViolation(TauTiltError):
    pass


class NotIndecomposable(TauTiltError):
    pass


class NotTauTilting(TauTiltError):
    pass


class ExchangeFailure(TauTiltError):
    pass


class IncompleteGraph(TauTiltError):
    pass


class NoContainingNode(TauTiltError):
    pass


class PresentationFailure(TauTiltError):
    pass


class NotBasic(TauTiltError):
    pass


# geometry and stability
class SingularCone(TauTiltError):
    pass


class RankMismatch(TauTiltError):
    pass


class CapExceeded(TauTiltError):
    pass


# presets
class BadParams(TauTiltError):
    pass


class UnsupportedFamily(TauTiltError):
    pass
