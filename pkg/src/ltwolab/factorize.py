"""Polar decomposition and factorisations through the ℓ² functor.

Everything is driven by one Jacobi SVD ``a = U Σ V^H`` of the input.  The
main entry point is :func:`essential_full_factor`, which writes any matrix
as ``v @ ℓ²(f) @ u`` with ``u`` unitary, ``v`` invertible and ``f`` a partial
injection between index sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hilb
from .errors import PreconditionError
from .ltwo import ltwo_matrix
from .numerics import LAW_TOL, as_matrix, complete_basis, eye, operator_norm, svd
from .pinj import FiniteSet, PartialInjection

RECON_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PolarResult:
    isometry_part: np.ndarray
    positive_part: np.ndarray
    side: str
    flavor: str

    def product(self) -> np.ndarray:
        if self.side == "right":
            return self.isometry_part @ self.positive_part
        return self.positive_part @ self.isometry_part


@dataclass(frozen=True, eq=False)
class LtwoFactorization:
    u: np.ndarray
    f: PartialInjection
    v: np.ndarray
    mode: str

    def product(self) -> np.ndarray:
        return self.v @ ltwo_matrix(self.f) @ self.u

    def residual(self, g) -> float:
        return operator_norm(as_matrix(g) - self.product())


def polar(a, side: str = "right", flavor: str = "kernel_matched", tol: float | None = None) -> PolarResult:
    """Polar decomposition ``a = i p`` (right) or ``a = p i`` (left).

    ``kernel_matched`` is the classical form where ``p`` is nonnegative and
    shares its kernel with ``i``.  ``strong`` puts eigenvalue 1 on the kernel
    directions of ``p`` so that ``p`` is positive definite, leaving ``i`` zero
    there.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if flavor not in ("kernel_matched", "strong"):
        raise ValueError(f"flavor must be 'kernel_matched' or 'strong', got {flavor!r}")
    a = as_matrix(a)
    s = svd(a, tol)
    iso = s.u @ s.v.conj().T
    basis = s.v if side == "right" else s.u
    p = (basis * s.sigma) @ basis.conj().T
    if flavor == "strong":
        p = p + eye(basis.shape[0]) - basis @ basis.conj().T
    return PolarResult(isometry_part=iso, positive_part=p, side=side, flavor=flavor)


def _index_set(n: int) -> FiniteSet:
    return FiniteSet.range(n)


def _factor_partial_isometry(i, v_init, rows: int, cols: int) -> LtwoFactorization:
    # v_init: orthonormal basis of the initial space ker(i)^⊥
    r = v_init.shape[1]
    out_basis = i @ v_init
    u = np.column_stack([v_init, complete_basis(v_init, cols)]).conj().T if cols else np.zeros((0, 0), complex)
    v = np.column_stack([out_basis, complete_basis(out_basis, rows)]) if rows else np.zeros((0, 0), complex)
    f = PartialInjection(_index_set(cols), _index_set(rows), ((str(k), str(k)) for k in range(r)))
    return LtwoFactorization(u=u.reshape(cols, cols), f=f, v=v.reshape(rows, rows), mode="isometric")


def isometry_factor(i, tol: float = LAW_TOL) -> LtwoFactorization:
    """Write a partial isometry as ``v @ ℓ²(f) @ u`` with ``u``, ``v`` unitary."""
    i = as_matrix(i)
    resid = hilb.partial_isometry_residual(i)
    if resid > tol * max(1.0, operator_norm(i)):
        raise PreconditionError(
            f"not a partial isometry: ‖i i† i − i‖ = {resid:.3g}", residual=resid
        )
    rows, cols = i.shape
    return _factor_partial_isometry(i, svd(i).v, rows, cols)


def essential_full_factor(g, tol: float | None = None) -> LtwoFactorization:
    """Write any matrix as ``v @ ℓ²(f) @ u`` with ``u`` unitary and ``v`` invertible.

    A left strong polar decomposition gives ``g = p i``; the partial isometry
    ``i`` factors as ``v' ℓ²(f) u`` and ``v = p v'``.
    """
    g = as_matrix(g)
    rows, cols = g.shape
    s = svd(g, tol)
    iso = s.u @ s.v.conj().T
    p = (s.u * s.sigma) @ s.u.conj().T + eye(rows) - s.u @ s.u.conj().T
    # the initial space of i is spanned by the retained right singular vectors
    iso_fac = _factor_partial_isometry(iso, s.v, rows, cols)
    return LtwoFactorization(u=iso_fac.u, f=iso_fac.f, v=p @ iso_fac.v, mode="general")


def scalar_chain(c: complex, tol: float = LAW_TOL) -> list[np.ndarray]:
    """Two partial isometries ``C -> C² -> C`` composing to ``c``, for ``|c| <= 1``."""
    c = complex(c)
    if abs(c) > 1 + tol:
        raise PreconditionError(f"|c| = {abs(c):.17g} exceeds 1", modulus=abs(c))
    rest = math.sqrt(max(0.0, 1.0 - abs(c) ** 2))
    a = np.array([[c], [rest]], dtype=np.complex128)
    b = np.array([[1.0, 0.0]], dtype=np.complex128)
    return [a, b]


def weighted_diagonal(m: int, n: int) -> np.ndarray:
    """``⊕_i Δ/√n : C^m -> C^{mn}``, copying each coordinate ``n`` times."""
    d = np.zeros((m * n, m), dtype=np.complex128)
    for i in range(m):
        d[i * n : (i + 1) * n, i] = 1.0 / math.sqrt(n)
    return d


def weighted_codiagonal(m: int, n: int) -> np.ndarray:
    """``C^{mn} -> C^n`` summing the ``m`` entries sharing an output index, over ``√m``."""
    d = np.zeros((n, m * n), dtype=np.complex128)
    for i in range(m):
        for j in range(n):
            d[j, i * n + j] = 1.0 / math.sqrt(m)
    return d


def finite_rank_chain(f, tol: float = LAW_TOL) -> list[np.ndarray]:
    """Four partial isometries, applied left to right, composing to ``f``.

    ``f`` is ``n x m`` with ``‖f‖ <= 1/√(mn)``.  The chain is the weighted
    diagonal, the direct sum of the first factors of :func:`scalar_chain` for
    the rescaled entries, the direct sum of the second factors, and the
    weighted codiagonal.
    """
    f = as_matrix(f)
    n, m = f.shape
    norm = operator_norm(f)
    bound = 1.0 / math.sqrt(m * n) if m and n else math.inf
    if norm > bound + tol:
        raise PreconditionError(
            f"‖f‖ = {norm:.17g} exceeds 1/√(mn) = {bound:.17g}", norm=norm, bound=bound
        )
    scale = math.sqrt(m * n)
    firsts, seconds = [], []
    for i in range(m):
        for j in range(n):
            a, b = scalar_chain(scale * f[j, i], tol)
            firsts.append(a)
            seconds.append(b)
    return [
        weighted_diagonal(m, n),
        hilb.dirsum(*firsts) if firsts else np.zeros((0, 0), dtype=np.complex128),
        hilb.dirsum(*seconds) if seconds else np.zeros((0, 0), dtype=np.complex128),
        weighted_codiagonal(m, n),
    ]


def chain_product(chain) -> np.ndarray:
    out = chain[0]
    for m in chain[1:]:
        out = m @ out
    return out


def diagonal_fill_in(l, r, top, bottom, tol: float = LAW_TOL) -> np.ndarray:
    """Unique ``d`` with ``d l = top`` and ``r d = bottom``.

    The square ``r · top = bottom · l`` must commute, ``l`` must be positive
    definite and ``r`` a partial isometry.
    """
    l, r, top, bottom = (as_matrix(x) for x in (l, r, top, bottom))
    if l.shape[0] != l.shape[1] or not hilb.classify(l, tol).is_positive_definite:
        raise PreconditionError("left map is not positive definite", which="l")
    if not hilb.is_partial_isometry(r, tol):
        raise PreconditionError("right map is not a partial isometry", which="r")
    if top.shape[1] != l.shape[0] or bottom.shape[1] != l.shape[1] or r.shape[1] != top.shape[0] or r.shape[0] != bottom.shape[0]:
        raise PreconditionError("square shapes do not fit together", which="shape")
    gap = operator_norm(r @ top - bottom @ l)
    if gap > tol * max(1.0, operator_norm(r @ top), operator_norm(bottom @ l)):
        raise PreconditionError(f"square does not commute (gap {gap:.3g})", which="square", gap=gap)
    return top @ hilb.positive_inverse(l, tol)
