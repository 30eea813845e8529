class TrimatError(Exception):
    """Base class for every error raised by trimat."""


class ValidationError(TrimatError, ValueError):
    pass


class DimensionMismatch(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"associativity fails on basis triple {triple}")


class UnitViolation(ValidationError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"unit law fails on basis element {index}")


class IdempotentViolation(ValidationError):
    def __init__(self, where, message=None):
        self.where = where
        super().__init__(message or f"idempotent condition fails at {where}")


class InvalidRelation(ValidationError):
    pass


class ModuleViolation(ValidationError):
    pass


class AlgebraMismatch(ValidationError):
    pass


class CategoryMismatch(ValidationError):
    pass


class UnsupportedField(TrimatError):
    pass


class RadicalUnavailable(TrimatError):
    pass


class ApproximationNotInjective(TrimatError):
    def __init__(self, stage):
        self.stage = stage
        super().__init__(f"left add-T approximation is not injective at stage {stage}")


class NotPerfect(TrimatError):
    def __init__(self, which, bound):
        self.which = which
        self.bound = bound
        super().__init__(f"{which} has no projective resolution of length <= {bound}")


class HypothesisFailure(TrimatError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"hypotheses not satisfied: {detail}")


class GldimUnknown(TrimatError):
    def __init__(self, bound):
        self.bound = bound
        super().__init__(f"global dimension not finite within bound {bound}")


class IdentificationFailure(TrimatError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"endomorphism ring identification fails at {witness}")


class NeitherBlockInvertible(TrimatError):
    pass


class SingularCartan(TrimatError):
    pass


class NotDivisionCase(TrimatError):
    pass


class DocumentError(TrimatError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
