"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class RepGraphError(Exception):
    """Base class for every error raised by this package."""


class InputError(RepGraphError):
    """Malformed user input (files, expressions, arguments)."""

    def __init__(self, message: str, *, source: str | None = None,
                 line: int | None = None, field: str | None = None):
        super().__init__(message)
        self.message = message
        self.source = source
        self.line = line
        self.field = field

    def to_dict(self) -> dict:
        return {"error": self.message, "file": self.source,
                "line": self.line, "field": self.field}


class MalformedGraph(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, position: int | None = None, **kw):
        super().__init__(message, **kw)
        self.position = position


class FieldMismatch(RepGraphError):
    pass


class DisconnectedGraph(RepGraphError):
    pass


class MalformedHomomorphism(RepGraphError):
    pass


class NotAdmissible(RepGraphError):
    def __init__(self, condition: str, witness: tuple, detail: str = ""):
        super().__init__(f"{condition}: {witness} {detail}".strip())
        self.condition = condition
        self.witness = witness


class TruncationTooShallow(RepGraphError):
    """Compatibility on a truncation is not transitive, so no partition exists."""


class TruncatedError(RepGraphError):
    """An action needed a transition that lies beyond a truncation frontier."""


class NotSimpleCycle(RepGraphError):
    pass


class NotWeightOne(RepGraphError):
    pass


class NotASink(RepGraphError):
    pass


class EmptyGraph(RepGraphError):
    pass


class PointOutsideCarrier(RepGraphError):
    pass


class ReconstructionError(RepGraphError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyBasis(ReconstructionError):
    pass


class AssumptionIIIViolation(ReconstructionError):
    pass


class VPropertyViolation(ReconstructionError):
    pass


class RelationViolation(ReconstructionError):
    pass


class AssumptionIVViolation(ReconstructionError):
    pass


class ValidateFailed(ReconstructionError):
    pass
