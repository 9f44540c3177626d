"""Dense complex linear algebra kernel.

Matrices are plain 2-D ``numpy.complex128`` arrays; :func:`as_matrix`
validates and normalises anything array-like.  The singular value
decomposition is a one-sided (Hestenes) Jacobi iteration written here rather
than delegated to LAPACK, so that every rank decision in the package goes
through one auditable routine and one tolerance policy:

* rank cutoff: singular values below ``tol * max(sigma)`` are dropped, with
  ``tol`` defaulting to ``1e-12 * max(rows, cols)``;
* law checks: :data:`LAW_TOL` (``1e-9``), relative to ``max(1, norm)``.

Column pairs are swept in fixed cyclic order, so results are bit-stable.
The sweep loop is compiled with numba; the first call in a fresh
environment pays a one-off compilation cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import NumericalFailure, ValidationError

LAW_TOL = 1e-9
MAX_SWEEPS = 80
_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny / _EPS


def default_rank_tol(shape) -> float:
    return 1e-12 * max(1, *shape)


def as_matrix(a, copy: bool = False) -> np.ndarray:
    m = np.array(a, dtype=np.complex128, copy=copy or None)
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-D matrix, got shape {m.shape}", code="bad-shape")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has NaN or infinite entries", code="non-finite")
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.complex128)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    rows, cols = a.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(data) -> np.ndarray:
    try:
        rows, cols, entries = int(data["rows"]), int(data["cols"]), data["data"]
    except (KeyError, TypeError, ValueError):
        raise ValidationError("expected {rows, cols, data}", code="malformed") from None
    if rows < 0 or cols < 0:
        raise ValidationError("negative dimension", code="bad-shape")
    if len(entries) != rows * cols:
        raise ValidationError(
            f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}",
            code="dimension-mismatch",
        )
    vals = []
    for e in entries:
        if isinstance(e, (int, float)):
            vals.append(complex(e))
        elif isinstance(e, (list, tuple)) and len(e) == 2:
            vals.append(complex(float(e[0]), float(e[1])))
        else:
            raise ValidationError(f"bad entry {e!r}", code="malformed")
    return as_matrix(np.array(vals, dtype=np.complex128).reshape(rows, cols))


@dataclass(frozen=True)
class SvdResult:
    """Truncated SVD ``a ≈ u @ diag(sigma) @ v^H``.

    ``v_null`` holds an orthonormal basis of the numerical kernel, so that
    ``[v | v_null]`` is unitary.  ``spectrum`` lists all ``min(rows, cols)``
    singular values before truncation.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    rank_tolerance: float
    v_null: np.ndarray
    spectrum: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.sigma)

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.sigma) @ self.v.conj().T


@njit(cache=True)
def _jacobi_kernel(w, v, threshold, floor, max_sweeps):
    m, n = w.shape
    for sweep in range(max_sweeps):
        rotated = False
        for j in range(n - 1):
            for k in range(j + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0j
                for i in range(m):
                    a = w[i, j]
                    b = w[i, k]
                    alpha += a.real * a.real + a.imag * a.imag
                    beta += b.real * b.real + b.imag * b.imag
                    gamma += a.conjugate() * b
                mag = abs(gamma)
                size = math.sqrt(alpha) * math.sqrt(beta)
                if mag <= threshold * size or size <= floor:
                    continue
                rotated = True
                phase = (gamma / mag).conjugate()
                zeta = (beta - alpha) / (2.0 * mag)
                sign = 1.0 if zeta >= 0 else -1.0
                t = sign / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                for i in range(m):
                    a = w[i, j]
                    b = w[i, k] * phase
                    w[i, j] = c * a - s * b
                    w[i, k] = s * a + c * b
                for i in range(n):
                    a = v[i, j]
                    b = v[i, k] * phase
                    v[i, j] = c * a - s * b
                    v[i, k] = s * a + c * b
        if not rotated:
            return sweep + 1
    return -1


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonalise the columns of ``a`` (rows >= cols) in place.

    Returns ``(w, v)`` with ``a_in @ v = w``, ``v`` unitary and the columns
    of ``w`` mutually orthogonal.  Pairs are swept in cyclic row order.
    """
    n = a.shape[1]
    v = eye(n)
    threshold = _EPS * math.sqrt(a.shape[0]) * 4
    # pairs of columns both below eps·‖a‖_F are noise, far under any rank
    # cutoff; rotating them can cycle without converging
    floor = max(_TINY, (_EPS * float(np.linalg.norm(a))) ** 2)
    if n >= 2 and _jacobi_kernel(a, v, threshold, floor, MAX_SWEEPS) < 0:
        raise NumericalFailure(
            f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps",
            shape=list(a.shape),
        )
    return a, v


def svd(a, tol: float | None = None) -> SvdResult:
    """Numerical-rank-truncated SVD by one-sided Jacobi."""
    a = as_matrix(a)
    rows, cols = a.shape
    if tol is None:
        tol = default_rank_tol(a.shape)
    if tol <= 0:
        raise ValidationError("tolerance must be positive")
    # pad short matrices with zero rows so the right factor comes out square
    work = np.zeros((max(rows, cols), cols), dtype=np.complex128)
    work[:rows] = a
    w, v = _jacobi(work)
    norms = np.sqrt(np.einsum("ij,ij->j", w.conj(), w).real) if cols else np.zeros(0)
    order = np.argsort(-norms, kind="stable")
    norms, w, v = norms[order], w[:, order], v[:, order]
    spectrum = norms[: min(rows, cols)]
    top = norms[0] if cols else 0.0
    r = int(np.sum(norms > tol * top)) if top > 0 else 0
    u = w[:rows, :r] / norms[:r]
    return SvdResult(
        u=u,
        sigma=norms[:r].copy(),
        v=v[:, :r].copy(),
        rank_tolerance=float(tol),
        v_null=v[:, r:].copy(),
        spectrum=spectrum.copy(),
    )


def singular_values(a) -> np.ndarray:
    """All ``min(rows, cols)`` singular values, descending, untruncated."""
    return svd(a).spectrum


def rank(a, tol: float | None = None) -> int:
    return svd(a, tol).rank


def null_space(a, tol: float | None = None) -> np.ndarray:
    """Orthonormal columns spanning the numerical kernel of ``a``."""
    return svd(a, tol).v_null


def range_basis(a, tol: float | None = None) -> np.ndarray:
    return svd(a, tol).u


def operator_norm(a) -> float:
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(svd(a).spectrum[0])


def close(a, b, tol: float = LAW_TOL) -> bool:
    """Scale-aware equality: ``‖a − b‖ <= tol · max(1, ‖a‖, ‖b‖)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        return False
    scale = max(1.0, operator_norm(a), operator_norm(b))
    return operator_norm(a - b) <= tol * scale


def complete_basis(q, dim: int | None = None) -> np.ndarray:
    """Orthonormal completion of the columns of ``q`` to a basis of ``C^dim``.

    Deterministic Gram-Schmidt against standard basis vectors: at each step
    the basis vector with the largest residual is taken, ties broken by
    index.  Returns only the new columns.
    """
    q = as_matrix(q) if np.size(q) else np.zeros((dim or 0, 0), dtype=np.complex128)
    n = q.shape[0] if dim is None else dim
    basis = q.reshape(n, -1)
    added = []
    cur = basis
    while cur.shape[1] < n:
        resid = eye(n) - cur @ (cur.conj().T @ eye(n))
        resid = resid - cur @ (cur.conj().T @ resid)
        norms = np.linalg.norm(resid, axis=0)
        k = int(np.argmax(norms))
        vec = resid[:, k] / norms[k]
        added.append(vec)
        cur = np.column_stack([cur, vec])
    if not added:
        return np.zeros((n, 0), dtype=np.complex128)
    return np.column_stack(added)
