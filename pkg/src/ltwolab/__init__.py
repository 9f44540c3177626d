"""Finite partial injections, finite-dimensional Hilbert spaces and the ℓ² functor between them."""

from .errors import (
    ConsistencyError,
    DirectednessError,
    DomainMismatchError,
    LabError,
    NumericalFailure,
    PreconditionError,
    ResourceError,
    StructuralError,
    ValidationError,
)
from .pinj import ChainDiagram, FiniteSet, PartialInjection

__version__ = "0.1.0"
