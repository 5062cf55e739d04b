"""Exception hierarchy shared by every module."""


class F2CError(Exception):
    """Base class. ``code`` is the machine-readable name used by the CLI."""

    code = "F2CError"

    def __init__(self, message, **witness):
        super().__init__(message)
        self.witness = witness

    def to_json(self):
        return {"error": self.code, "message": str(self), "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in (sorted(obj) if isinstance(obj, (set, frozenset)) else obj)]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


class ValidationError(F2CError):
    code = "ValidationError"


class NotAssociative(ValidationError):
    code = "NotAssociative"


class NoIdentity(ValidationError):
    code = "NoIdentity"


class NoInverse(ValidationError):
    code = "NoInverse"


class NotASubgroup(ValidationError):
    code = "NotASubgroup"


class NotAbelian(ValidationError):
    code = "NotAbelian"


class NotInjective(ValidationError):
    code = "NotInjective"


class ActionNotHomomorphism(ValidationError):
    code = "ActionNotHomomorphism"


class NotACocycle(ValidationError):
    code = "NotACocycle"


class DegreeMismatch(ValidationError):
    code = "DegreeMismatch"


class CoefficientMismatch(ValidationError):
    code = "CoefficientMismatch"


class BaseMismatch(ValidationError):
    code = "BaseMismatch"


class RestrictionNotStrictlyTrivial(ValidationError):
    code = "RestrictionNotStrictlyTrivial"


class SchemaError(ValidationError):
    code = "SchemaError"


class GaugeTransportError(F2CError):
    """The supercohomology equation set admits no transport for a gauge move."""

    code = "GaugeTransportError"


class EnumerationLimitExceeded(F2CError):
    code = "EnumerationLimitExceeded"


class NotTrivializable(ValidationError):
    code = "NotTrivializable"
