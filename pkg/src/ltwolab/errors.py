"""Exception hierarchy shared by every module.

Each class carries a short machine-readable ``code`` so that JSON front ends
can report distinguishable failures.
"""

from __future__ import annotations


class LabError(Exception):
    code = "error"

    def __init__(self, message: str, *, code: str | None = None, **details):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class ValidationError(LabError, ValueError):
    """Malformed input: duplicate labels, non-injective graphs, bad shapes."""

    code = "invalid"


class DomainMismatchError(LabError, ValueError):
    """Morphisms whose boundaries do not line up."""

    code = "domain-mismatch"


class DirectednessError(LabError, ValueError):
    code = "not-directed"


class ConsistencyError(LabError, RuntimeError):
    code = "inconsistent"


class PreconditionError(LabError, ValueError):
    code = "precondition"


class StructuralError(LabError, ValueError):
    code = "structural"


class ResourceError(LabError, ValueError):
    code = "resource"


class NumericalFailure(LabError, ArithmeticError):
    code = "numerical-failure"
