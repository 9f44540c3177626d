"""The ℓ² functor from finite sets and partial injections to Hilbert spaces.

A finite set ``X`` goes to ``C^|X|`` with the Kronecker function of the
k-th label as the k-th standard basis vector.  A partial injection goes to
its partial permutation matrix, which has exact 0/1 entries, so the functor
laws are checked with exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilb, pinj
from .errors import ConsistencyError, DomainMismatchError, ValidationError
from .numerics import LAW_TOL, as_matrix, operator_norm, rank
from .pinj import FiniteSet, PartialInjection

LAWS = ("functoriality", "dagger", "tensor", "oplus", "order")


def ltwo_object(x: FiniteSet) -> int:
    return len(x)


@dataclass(frozen=True, eq=False)
class LtwoImage:
    source: PartialInjection
    matrix: np.ndarray


def ltwo_matrix(f: PartialInjection) -> np.ndarray:
    m = np.zeros((len(f.cod), len(f.dom)), dtype=np.complex128)
    for x, y in f.pairs:
        m[f.cod.index(y), f.dom.index(x)] = 1.0
    return m


def ltwo_morphism(f: PartialInjection) -> LtwoImage:
    return LtwoImage(f, ltwo_matrix(f))


def preimage(m, dom: FiniteSet, cod: FiniteSet) -> PartialInjection:
    """The partial injection whose image is the 0/1 matrix ``m``."""
    m = as_matrix(m)
    if m.shape != (len(cod), len(dom)):
        raise DomainMismatchError(f"matrix shape {m.shape} does not fit {dom} -> {cod}")
    if not np.all((m == 0) | (m == 1)):
        raise ValidationError("not a 0/1 matrix", code="not-partial-permutation")
    rows, cols = np.nonzero(m)
    return PartialInjection(dom, cod, ((dom.labels[c], cod.labels[r]) for r, c in zip(rows, cols)))


def structure_map(kind: str, x: FiniteSet, y: FiniteSet) -> np.ndarray:
    """Comparison map ``ℓ²X ⊗ ℓ²Y -> ℓ²(X ⊗ Y)`` (or the ``⊕`` analogue).

    Built by sending each basis vector to the Kronecker function of the
    corresponding label; under the label conventions of :mod:`pinj` the
    result is an identity matrix.
    """
    if kind in ("tensor", "⊗"):
        target = pinj.tensor_object(x, y)
        cols = [pinj.pair_label(a, b) for a in x for b in y]
    elif kind in ("oplus", "⊕"):
        target = pinj.oplus_object(x, y)
        cols = [pinj.LEFT_TAG + a for a in x] + [pinj.RIGHT_TAG + b for b in y]
    else:
        raise ValueError(f"unknown monoidal structure {kind!r}")
    m = np.zeros((len(target), len(cols)), dtype=np.complex128)
    for k, lab in enumerate(cols):
        m[target.index(lab), k] = 1.0
    return m


def _exact_residual(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        return float("inf")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def verify_preservation(law: str, f: PartialInjection, g: PartialInjection | None = None) -> dict:
    """Check one preservation law of ℓ² on concrete morphisms.

    ``functoriality`` compares ``ℓ²(g∘f)`` with ``ℓ²g · ℓ²f``; ``tensor`` and
    ``oplus`` check the naturality square of the comparison map; ``order``
    checks that ``f <= g`` implies ``ℓ²f <= ℓ²g``.
    """
    if law not in LAWS:
        raise ValueError(f"unknown law {law!r}; expected one of {LAWS}")
    if law != "dagger" and g is None:
        raise ValidationError(f"law {law!r} needs two morphisms")
    report = {"law": law}
    if law == "functoriality":
        if f.cod != g.dom:
            raise DomainMismatchError("functoriality needs composable f and g")
        resid = _exact_residual(ltwo_matrix(pinj.compose(g, f)), ltwo_matrix(g) @ ltwo_matrix(f))
    elif law == "dagger":
        resid = _exact_residual(ltwo_matrix(pinj.dagger(f)), hilb.adjoint(ltwo_matrix(f)))
    elif law in ("tensor", "oplus"):
        prod = pinj.tensor if law == "tensor" else pinj.oplus
        lin = hilb.kron if law == "tensor" else hilb.dirsum
        lhs = ltwo_matrix(prod(f, g)) @ structure_map(law, f.dom, g.dom)
        rhs = structure_map(law, f.cod, g.cod) @ lin(ltwo_matrix(f), ltwo_matrix(g))
        resid = _exact_residual(lhs, rhs)
    else:
        below = pinj.leq(f, g)
        image_below = hilb.leq(ltwo_matrix(f), ltwo_matrix(g))
        report.update(pinj_leq=below, hilb_leq=image_below)
        report["holds"] = (not below) or image_below
        report["residual"] = 0.0
        return report
    report["residual"] = resid
    report["holds"] = resid == 0.0
    return report


def reflect_iso(f: PartialInjection) -> bool:
    m = ltwo_matrix(f)
    invertible = m.shape[0] == m.shape[1] and rank(m) == m.shape[0]
    if invertible != f.is_bijection():
        raise ConsistencyError(f"invertibility of ℓ²f disagrees with bijectivity of {f}")
    return invertible


def is_basis_preserving(a, x: FiniteSet, y: FiniteSet, tol: float = LAW_TOL) -> bool:
    """Whether ``a`` sends basis vectors to basis vectors or zero, and ``a a† a = a``."""
    a = as_matrix(a)
    if a.shape != (len(y), len(x)):
        raise DomainMismatchError(f"matrix shape {a.shape} does not fit {x} -> {y}")
    for col in a.T:
        if np.max(np.abs(col), initial=0.0) <= tol:
            continue
        k = int(np.argmax(np.abs(col)))
        target = np.zeros_like(col)
        target[k] = 1.0
        if np.max(np.abs(col - target)) > tol:
            return False
    return hilb.is_partial_isometry(a, tol)


def norm_bound(f: PartialInjection) -> float:
    """``‖ℓ²f‖``, which never exceeds 1."""
    return operator_norm(ltwo_matrix(f))
