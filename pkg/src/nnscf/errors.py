"""Exception hierarchy shared by every module."""


class NNSCFError(ValueError):
    """Base class for all library errors."""


class NotPrime(NNSCFError):
    pass


class ReduciblePolynomial(NNSCFError):
    pass


class MissingModulus(NNSCFError):
    pass


class DivisionByZero(NNSCFError, ZeroDivisionError):
    pass


class FieldMismatch(NNSCFError):
    pass


class PrimeMismatch(NNSCFError):
    pass


class CycleDetected(NNSCFError):
    pass


class UnknownElement(NNSCFError):
    pass


class DuplicateElement(NNSCFError):
    pass


class OverlappingGroundSets(NNSCFError):
    pass


GroundSetOverlap = OverlappingGroundSets


class ArcNotComparable(NNSCFError):
    pass


class ZeroLabel(NNSCFError):
    pass


class PartitionConditionViolated(NNSCFError):
    def __init__(self, i, k, j):
        super().__init__(f"arc {i}-{j} conflicts with an arc through {k}")
        self.witness = (i, k, j)


class DuplicateArc(NNSCFError):
    pass


class NotLinearOrder(NNSCFError):
    pass


class NotNonnesting(NNSCFError):
    pass


class PosetMismatch(NNSCFError):
    pass


class GroupMismatch(NNSCFError):
    pass


class GroupTooLarge(NNSCFError):
    pass


class GroundSetTooLarge(NNSCFError):
    pass


class NotAPartition(NNSCFError):
    pass


class NotABijection(NNSCFError):
    pass


class InternalCheckFailure(NNSCFError):
    """A computed object failed a structural self-check."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


__all__ = [
    "ArcNotComparable",
    "CycleDetected",
    "DivisionByZero",
    "DuplicateArc",
    "DuplicateElement",
    "FieldMismatch",
    "GroundSetOverlap",
    "GroundSetTooLarge",
    "GroupMismatch",
    "GroupTooLarge",
    "InternalCheckFailure",
    "MissingModulus",
    "NNSCFError",
    "NotABijection",
    "NotAPartition",
    "NotLinearOrder",
    "NotNonnesting",
    "NotPrime",
    "OverlappingGroundSets",
    "PartitionConditionViolated",
    "PosetMismatch",
    "PrimeMismatch",
    "ReduciblePolynomial",
    "UnknownElement",
    "ZeroLabel",
]
