"""Exception hierarchy. Every domain failure derives from GStarError."""


class GStarError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""

    code = "GStarError"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class DivisionByZero(GStarError, ZeroDivisionError):
    code = "DivisionByZero"


class NotAGroup(GStarError):
    code = "NotAGroup"


class NotAnInvolution(GStarError):
    code = "NotAnInvolution"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        d = super().to_dict()
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


class TrivialSubgroup(GStarError):
    code = "TrivialSubgroup"


class MismatchedContext(GStarError):
    code = "MismatchedContext"


class ContextMismatch(MismatchedContext):
    code = "ContextMismatch"


class NotACocycle(GStarError):
    code = "NotACocycle"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StarAxiomFailure(GStarError):
    code = "StarAxiomFailure"


class InvalidAlgebra(GStarError):
    """Raised when data fails validation; carries the ValidationReport."""

    code = "InvalidAlgebra"

    def __init__(self, report):
        super().__init__(f"algebra failed validation: {report.summary()}")
        self.report = report

    def to_dict(self):
        d = super().to_dict()
        d["violations"] = [list(v) for v in self.report.violations]
        return d


class NonHomogeneousGenerator(GStarError):
    code = "NonHomogeneousGenerator"


class NotAnIdeal(GStarError):
    code = "NotAnIdeal"


class NotStarStable(GStarError):
    code = "NotStarStable"


class NotGraded(GStarError):
    code = "NotGraded"


class BadOrder(GStarError):
    code = "BadOrder"


class InvalidParameters(GStarError):
    code = "InvalidParameters"


class NonSplit(GStarError):
    code = "NonSplit"

    def __init__(self, message, suggested_order=None):
        super().__init__(message)
        self.suggested_order = suggested_order

    def to_dict(self):
        d = super().to_dict()
        d["suggested_order"] = self.suggested_order
        return d


class ParseError(GStarError, ValueError):
    code = "SyntaxError"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownDegreeName(ParseError):
    code = "UnknownDegreeName"


class DegreeMismatch(GStarError):
    code = "DegreeMismatch"


class SizeLimit(GStarError):
    code = "SizeLimit"


class InternalInconsistency(GStarError):
    code = "InternalInconsistency"


class InconsistencyDetected(GStarError):
    code = "InconsistencyDetected"


class SeparationNotFound(GStarError):
    code = "SeparationNotFound"
