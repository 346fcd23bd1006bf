"""Exception types raised across gckit."""


class GckitError(Exception):
    """Base class; carries an optional witness for reporting."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimit(GckitError):
    pass


class NotAssociative(GckitError):
    pass


class NoUniquePseudoInverse(GckitError):
    pass


class NotARing(GckitError):
    def __init__(self, tag, message="", witness=None):
        super().__init__(f"{tag}: {message}" if message else tag, witness)
        self.tag = tag


class NotAModule(NotARing):
    pass


class NotAHomomorphism(GckitError):
    pass


class NotAnIdeal(GckitError):
    pass


class NotLocalUnits(GckitError):
    pass


class Incompatible(GckitError):
    pass


class NotSeparable(GckitError):
    pass


class NotAGroupoid(GckitError):
    pass


class NotABisection(GckitError):
    pass


class NotSubsemigroup(GckitError):
    pass


class DegenerateAction(GckitError):
    pass


class NotAnAction(GckitError):
    pass


class G1Fails(GckitError):
    pass


class GermConditionsFail(GckitError):
    pass


class AxiomViolated(GckitError):
    def __init__(self, tag, message="", witness=None):
        super().__init__(f"{tag}: {message}" if message else tag, witness)
        self.tag = tag


class NotSpectral(GckitError):
    def __init__(self, tag, message="", witness=None):
        super().__init__(f"{tag}: {message}" if message else tag, witness)
        self.tag = tag


class NotDecomposable(GckitError):
    pass


class NotCovariant(GckitError):
    def __init__(self, tag, message="", witness=None):
        super().__init__(f"{tag}: {message}" if message else tag, witness)
        self.tag = tag


class NotUnitary(GckitError):
    pass


class ParseError(GckitError):
    pass


class UnknownSuite(GckitError):
    pass


class UnknownExample(GckitError):
    pass
