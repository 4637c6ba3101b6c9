"""Exception hierarchy. Every library error derives from TrustError (a ValueError)."""


class TrustError(ValueError):
    pass


class NonUnitSum(TrustError):
    pass


class OutOfRange(TrustError):
    pass


class MissingSymbol(TrustError):
    pass


class UnknownSymbol(TrustError):
    pass


class AlphabetMismatch(TrustError):
    pass


class EmptyObservation(TrustError):
    pass


class AlphaOutOfRange(TrustError):
    pass


class BothZero(TrustError):
    """The event is impossible under both hypotheses, so no ratio exists."""


class MissingSeed(TrustError):
    pass


class MissingPriors(TrustError):
    pass


class ZeroEvidence(TrustError):
    pass


class NotInFamily(TrustError):
    pass


class FamilyTooLarge(TrustError):
    pass


class UnknownMethod(TrustError):
    pass


class AlphabetTooLarge(TrustError):
    pass


class ParseError(TrustError):
    pass
