"""Finite-dimensional Hilbert spaces and the operators between them.

Objects are dimensions; morphisms are complex matrices (see
:mod:`ltwolab.numerics`).  Every numerical judgment goes through the Jacobi
SVD and takes a tolerance, defaulting to :data:`~ltwolab.numerics.LAW_TOL`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import DirectednessError, DomainMismatchError, PreconditionError
from .numerics import LAW_TOL, as_matrix, close, eye, null_space, operator_norm, svd


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T.copy()


def compose(*ms) -> np.ndarray:
    """``compose(b, a) == b @ a``, checking that the shapes line up."""
    out = as_matrix(ms[-1])
    for m in reversed(ms[:-1]):
        m = as_matrix(m)
        if m.shape[1] != out.shape[0]:
            raise DomainMismatchError(f"cannot compose {m.shape} after {out.shape}")
        out = m @ out
    return out


def kron(a, b) -> np.ndarray:
    """Tensor product; basis pair ``(x, y)`` sits at ``x * dim_y + y``."""
    return np.kron(as_matrix(a), as_matrix(b))


def dirsum(*ms) -> np.ndarray:
    ms = [as_matrix(m) for m in ms]
    rows = sum(m.shape[0] for m in ms)
    cols = sum(m.shape[1] for m in ms)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for m in ms:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def projection(dims: Sequence[int], i: int) -> np.ndarray:
    """Canonical projection from ``⊕ C^dims[k]`` onto block ``i``."""
    if not 0 <= i < len(dims):
        raise IndexError(f"block {i} out of range for {len(dims)} summands")
    offset = sum(dims[:i])
    out = np.zeros((dims[i], sum(dims)), dtype=np.complex128)
    out[:, offset : offset + dims[i]] = eye(dims[i])
    return out


def injection(dims: Sequence[int], i: int) -> np.ndarray:
    return adjoint(projection(dims, i))


def cotuple(*ms) -> np.ndarray:
    """``[m_1, ..., m_k] : ⊕ H_k -> K``, the maps laid side by side."""
    return np.hstack([as_matrix(m) for m in ms])


def tuple_(*ms) -> np.ndarray:
    return np.vstack([as_matrix(m) for m in ms])


def _check_parallel(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DomainMismatchError(f"morphisms are not parallel: {a.shape} vs {b.shape}")
    return a, b


def equalizer(a, b, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis, as columns, of ``ker(a - b)``."""
    a, b = _check_parallel(a, b)
    return null_space(a - b, tol)


def support_projector(a, tol: float | None = None) -> np.ndarray:
    """Orthogonal projector onto ``ker(a)^⊥``."""
    s = svd(a, tol)
    return s.v @ s.v.conj().T


def hermitian_eigenvalue_bounds(h) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a Hermitian matrix.

    Shifting by the operator norm makes ``h + ‖h‖ I`` positive
    semidefinite, whose eigenvalues are its singular values.
    """
    h = as_matrix(h)
    if h.size == 0:
        return 0.0, 0.0
    h = (h + h.conj().T) / 2
    shift = operator_norm(h)
    vals = svd(h + shift * eye(h.shape[0])).spectrum
    return float(vals[-1] - shift), float(vals[0] - shift)


@dataclass(frozen=True)
class OperatorClass:
    is_partial_isometry: bool
    is_isometry: bool
    is_unitary: bool
    is_self_adjoint: bool
    is_nonnegative: bool
    is_positive_definite: bool
    is_projection: bool
    tolerance: float
    residuals: dict

    def to_json(self) -> dict:
        return asdict(self)


def partial_isometry_residual(a) -> float:
    a = as_matrix(a)
    return operator_norm(a @ a.conj().T @ a - a)


def is_partial_isometry(a, tol: float = LAW_TOL) -> bool:
    a = as_matrix(a)
    return partial_isometry_residual(a) <= tol * max(1.0, operator_norm(a))


def classify(a, tol: float = LAW_TOL) -> OperatorClass:
    a = as_matrix(a)
    rows, cols = a.shape
    norm = operator_norm(a)
    scale = max(1.0, norm)
    ah = a.conj().T
    res = {"partial_isometry": operator_norm(a @ ah @ a - a)}
    res["isometry"] = operator_norm(ah @ a - eye(cols))
    res["coisometry"] = operator_norm(a @ ah - eye(rows))
    partial = res["partial_isometry"] <= tol * scale
    isometry = partial and res["isometry"] <= tol
    unitary = isometry and rows == cols and res["coisometry"] <= tol
    self_adjoint = False
    nonneg = posdef = proj = False
    if rows == cols:
        res["self_adjoint"] = operator_norm(a - ah)
        self_adjoint = res["self_adjoint"] <= tol * scale
        if self_adjoint:
            lo, hi = hermitian_eigenvalue_bounds(a)
            res["min_eigenvalue"] = lo
            res["max_eigenvalue"] = hi
            nonneg = lo >= -tol * scale
            posdef = lo >= tol
            res["idempotent"] = operator_norm(a @ a - a)
            proj = res["idempotent"] <= tol * scale
    return OperatorClass(
        is_partial_isometry=partial,
        is_isometry=isometry,
        is_unitary=unitary,
        is_self_adjoint=self_adjoint,
        is_nonnegative=nonneg,
        is_positive_definite=posdef,
        is_projection=proj,
        tolerance=tol,
        residuals={k: float(v) for k, v in res.items()},
    )


def leq(a, b, tol: float = LAW_TOL) -> bool:
    """Kernel order: ``ker(a)^⊥ ⊆ ker(b)^⊥`` and ``a = b`` on ``ker(a)^⊥``."""
    a, b = _check_parallel(a, b)
    pa = support_projector(a)
    pb = support_projector(b)
    if operator_norm(pa - pb @ pa) > tol:
        return False
    scale = max(1.0, operator_norm(a), operator_norm(b))
    return operator_norm((a - b) @ pa) <= tol * scale


def max_of_directed(ms, tol: float = LAW_TOL) -> np.ndarray:
    """Greatest element of a finite directed family (which must have one)."""
    ms = [as_matrix(m) for m in ms]
    if not ms:
        raise DirectednessError("empty family has no maximum")
    for m in ms[1:]:
        _check_parallel(ms[0], m)
    for cand in ms:
        if all(leq(m, cand, tol) for m in ms):
            return cand
    raise DirectednessError("family has no greatest element, so it is not directed")


def positive_inverse(p, tol: float = LAW_TOL) -> np.ndarray:
    """Inverse of a positive definite operator, ``u diag(1/σ) u^H``."""
    p = as_matrix(p)
    if p.shape[0] != p.shape[1] or not classify(p, tol).is_positive_definite:
        raise PreconditionError("operator is not positive definite")
    h = (p + p.conj().T) / 2
    s = svd(h)
    if s.rank != h.shape[0]:
        raise PreconditionError("operator is numerically singular")
    # for a positive definite h the left and right singular vectors coincide
    return (s.v / s.sigma) @ s.v.conj().T


def equal(a, b, tol: float = LAW_TOL) -> bool:
    return close(a, b, tol)
