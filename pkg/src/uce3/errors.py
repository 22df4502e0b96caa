"""Exception hierarchy shared across the package."""


class Uce3Error(Exception):
    """Base class for every error raised by this package."""


class FieldError(Uce3Error):
    pass


class NonPrimeModulus(FieldError):
    pass


class ModulusTooLarge(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError):
    pass


class DimensionMismatch(Uce3Error):
    pass


class FormatError(Uce3Error):
    """Malformed input document: bad JSON shape, wrong types, unknown keys."""


class SemanticError(Uce3Error):
    """Well-formed input with invalid content: bad field string, bad index."""


class UnknownAlgebra(Uce3Error):
    pass


class AxiomPrecondition(Uce3Error):
    """The input algebra fails an axiom the construction requires."""


class NotLie(AxiomPrecondition):
    pass


class NotLeibniz(AxiomPrecondition):
    pass


class NotLts(AxiomPrecondition):
    pass


class JacobiFails(AxiomPrecondition):
    pass


class NotPerfect(Uce3Error):
    pass


class DimensionGuard(Uce3Error):
    """Construction refused: ambient size beyond the configured guard."""


class NotEquivariant(Uce3Error):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotCentral(Uce3Error):
    pass


class NotOverSameBase(Uce3Error):
    pass


class WrongCategory(Uce3Error):
    pass


class WellDefinednessFailed(Uce3Error):
    pass


class InternalAssertionFailed(Uce3Error):
    """A construction-time consistency check failed on valid input.

    These checks guard facts that hold mathematically whenever the inputs
    satisfy their preconditions, so a failure signals a bug in this package,
    not a bad input.
    """

    def __init__(self, fact, detail=""):
        self.fact = fact
        super().__init__(fact + (": " + detail if detail else ""))


class ZActionNontrivial(InternalAssertionFailed):
    def __init__(self, detail=""):
        super().__init__("wedge-kernel-acts-nontrivially", detail)


class LeibnizCheckFailed(InternalAssertionFailed):
    def __init__(self, detail=""):
        super().__init__("induced-bracket-not-leibniz", detail)
