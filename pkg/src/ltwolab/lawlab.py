"""Counterexample demos and seeded law suites.

Each ``demo_*`` function reproduces one negative result with concrete finite
numbers.  :func:`run_suite` drives the positive laws: every case gets its
own generator from ``(seed, case index)`` and returns a residual and,
on failure, a JSON-serialisable witness.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Callable

import numpy as np

from . import factorize, gen, hilb, inversecat, ltwo, pinj
from .errors import ResourceError, ValidationError
from .ltwo import ltwo_matrix
from .numerics import LAW_TOL, as_matrix, eye, matrix_to_json, null_space, operator_norm, svd
from .pinj import FiniteSet, PartialInjection

# Demos


def equalizer_pair() -> tuple[PartialInjection, PartialInjection]:
    """``f = {(0,a)}`` and ``g = {(1,a)}`` from ``{0,1}`` to ``{a}``."""
    x, y = FiniteSet(["0", "1"]), FiniteSet(["a"])
    return PartialInjection(x, y, [("0", "a")]), PartialInjection(x, y, [("1", "a")])


def demo_equalizer_nonpreservation(f=None, g=None) -> dict:
    if f is None or g is None:
        f, g = equalizer_pair()
    obj, _ = pinj.equalizer(f, g)
    basis = hilb.equalizer(ltwo_matrix(f), ltwo_matrix(g))
    return {
        "hilb_dim": int(basis.shape[1]),
        "pinj_size": len(obj),
        "preserved": int(basis.shape[1]) == len(obj),
    }


def demo_isometry_composition(theta: float, tol: float = LAW_TOL) -> dict:
    first = np.array([[1.0], [0.0]], dtype=np.complex128)
    second = np.array([[math.sin(theta), math.cos(theta)]], dtype=np.complex128)
    comp = second @ first
    return {
        "theta": theta,
        "composite": float(comp[0, 0].real),
        "factors_are_partial_isometries": hilb.is_partial_isometry(first, tol)
        and hilb.is_partial_isometry(second, tol),
        "is_partial_isometry": hilb.is_partial_isometry(comp, tol),
        "residual": hilb.partial_isometry_residual(comp),
    }


def _mediators(z: FiniteSet, w: FiniteSet, kx, ky, f, g) -> int:
    count = 0
    for m in pinj.all_partial_injections(z, w):
        if pinj.compose(m, kx) == f and pinj.compose(m, ky) == g:
            count += 1
            if count > 1:
                break
    return count


def search_binary_coproduct(x: FiniteSet, y: FiniteSet, size_bound: int, test_bound: int = 2) -> dict:
    """Exhaustively test every small cospan ``X -> Z <- Y`` as a coproduct.

    A candidate is refuted by a test cospan ``X -> W <- Y`` with no mediating
    morphism (``existence``) or more than one (``uniqueness``).  Test objects
    range over sizes ``0..test_bound``.
    """
    if len(x) > 2 or len(y) > 2 or size_bound > 4 or test_bound > 3:
        raise ResourceError("search bounds too large: need |x|,|y| <= 2, size_bound <= 4, test_bound <= 3")
    refuted, survivors = [], []
    tests = [FiniteSet.range(k, "w") for k in range(test_bound + 1)]
    for size in range(size_bound + 1):
        z = FiniteSet.range(size, "z")
        for kx in pinj.all_partial_injections(x, z):
            for ky in pinj.all_partial_injections(y, z):
                witness = None
                for w in tests:
                    for f in pinj.all_partial_injections(x, w):
                        for g in pinj.all_partial_injections(y, w):
                            n = _mediators(z, w, kx, ky, f, g)
                            if n != 1:
                                witness = {
                                    "kind": "existence" if n == 0 else "uniqueness",
                                    "f": f.to_json(),
                                    "g": g.to_json(),
                                }
                                break
                        if witness:
                            break
                    if witness:
                        break
                entry = {"object": list(z.labels), "kx": kx.to_json(), "ky": ky.to_json()}
                if witness:
                    entry["witness"] = witness
                    refuted.append(entry)
                else:
                    survivors.append(entry)
    return {
        "x": list(x.labels),
        "y": list(y.labels),
        "size_bound": size_bound,
        "candidates": len(refuted) + len(survivors),
        "refuted": refuted,
        "survivors": survivors,
    }


def demo_unbounded_cotuple(n: int) -> dict:
    row = np.arange(1, n + 1, dtype=np.complex128).reshape(1, n)
    norm = operator_norm(row)
    return {"n": n, "norm": norm, "lower_bound": float(n), "exceeds_bound": norm >= n}


def demo_dense_range_noniso(n: int) -> dict:
    d = np.diag(1.0 / np.arange(1, n + 1)).astype(np.complex128)
    s = svd(d)
    cls = hilb.classify(d)
    return {
        "n": n,
        "rank": s.rank,
        "injective": s.rank == n,
        "self_adjoint": cls.is_self_adjoint,
        "min_singular_value": float(s.spectrum[-1]),
        "inverse_norm": float(1.0 / s.spectrum[-1]),
    }


def demo_restriction_failure(a=None, b=None) -> dict:
    """Kernel-complement projectors that fail to commute."""
    if a is None or b is None:
        a = np.array([[1, 0], [0, 0]], dtype=np.complex128)
        b = np.array([[1, 1], [0, 0]], dtype=np.complex128)
    pa, pb = hilb.support_projector(a), hilb.support_projector(b)
    comm = operator_norm(pa @ pb - pb @ pa)
    return {"commutator_norm": comm, "commute": comm <= LAW_TOL}


# Suites


def _worst(*vals) -> float:
    return float(max(vals, default=0.0))


def _pi_pair(rng, max_size):
    sizes = rng.integers(0, max_size + 1, size=3)
    x, y, z = (FiniteSet.range(int(s), p) for s, p in zip(sizes, "xyz"))
    return x, y, z


def _case_functor(rng, max_size):
    x, y, z = _pi_pair(rng, max_size)
    f, g = gen.partial_injection(rng, x, y), gen.partial_injection(rng, y, z)
    a, b = _pi_pair(rng, max_size)[:2]
    h = gen.partial_injection(rng, a, b)
    worst = 0.0
    for law, args in (
        ("functoriality", (f, g)),
        ("dagger", (f,)),
        ("tensor", (f, h)),
        ("oplus", (f, h)),
    ):
        r = ltwo.verify_preservation(law, *args)
        worst = max(worst, r["residual"])
        if not r["holds"]:
            return worst, {"law": law, "morphisms": [m.to_json() for m in args]}
    return worst, None


def _case_pinj(rng, max_size):
    sizes = [int(s) for s in rng.integers(0, max_size + 1, size=4)]
    w, x, y, z = (FiniteSet.range(s, p) for s, p in zip(sizes, "wxyz"))
    f, g, h = gen.partial_injection(rng, w, x), gen.partial_injection(rng, x, y), gen.partial_injection(rng, y, z)
    d = pinj.dagger
    checks = {
        "associativity": pinj.compose(h, pinj.compose(g, f)) == pinj.compose(pinj.compose(h, g), f),
        "unit": pinj.compose(f, pinj.identity(w)) == f == pinj.compose(pinj.identity(x), f),
        "involution": d(d(f)) == f,
        "contravariance": d(pinj.compose(g, f)) == pinj.compose(d(f), d(g)),
        "regularity": pinj.compose_all(f, d(f), f) == f,
        "tensor_bifunctor": pinj.tensor(pinj.compose(g, f), pinj.compose(h, g))
        == pinj.compose(pinj.tensor(g, h), pinj.tensor(f, g)),
        "oplus_bifunctor": pinj.oplus(pinj.compose(g, f), pinj.compose(h, g))
        == pinj.compose(pinj.oplus(g, h), pinj.oplus(f, g)),
        "tensor_dagger": d(pinj.tensor(f, g)) == pinj.tensor(d(f), d(g)),
        "oplus_dagger": d(pinj.oplus(f, g)) == pinj.oplus(d(f), d(g)),
    }
    f2 = gen.partial_injection(rng, w, x)
    e_obj, e = pinj.equalizer(f, f2)
    checks["equalizer"] = pinj.compose(f, e) == pinj.compose(f2, e)
    for name, ok in checks.items():
        if not ok:
            return 0.0, {"law": name, "morphisms": [m.to_json() for m in (f, g, h)]}
    return 0.0, None


def _case_svd(rng, max_size):
    a = gen.unit_disc(rng, tuple(int(s) for s in rng.integers(1, max_size + 1, size=2)))
    s = svd(a)
    recon = operator_norm(a - s.reconstruct())
    ortho_u = operator_norm(s.u.conj().T @ s.u - eye(s.rank))
    ortho_v = operator_norm(s.v.conj().T @ s.v - eye(s.rank))
    bound = LAW_TOL * max(1.0, s.sigma[0] if s.rank else 0.0)
    worst = _worst(recon, ortho_u, ortho_v)
    if recon > bound or ortho_u > LAW_TOL or ortho_v > LAW_TOL:
        return worst, {"matrix": matrix_to_json(a), "reconstruction": recon, "ortho_u": ortho_u, "ortho_v": ortho_v}
    return worst, None


def _kernels_agree(k1, k2, tol) -> float:
    """Distance between the subspaces spanned by two orthonormal bases."""
    p1 = k1 @ k1.conj().T
    p2 = k2 @ k2.conj().T
    if p1.size == 0:
        return 0.0
    return operator_norm(p1 - p2) if k1.shape[1] == k2.shape[1] else math.inf


def polar_checks(a, tol: float = factorize.RECON_TOL) -> dict:
    a = as_matrix(a)
    scale = max(1.0, operator_norm(a))
    out = {}
    s = svd(a)
    smallest = float(s.sigma[-1]) if s.rank else 1.0
    for side in ("right", "left"):
        for flavor in ("kernel_matched", "strong"):
            r = factorize.polar(a, side, flavor)
            key = f"{side}/{flavor}"
            out[key + "/reconstruction"] = operator_norm(a - r.product()) / scale
            out[key + "/partial_isometry"] = hilb.partial_isometry_residual(r.isometry_part)
            if flavor == "kernel_matched":
                if side == "right":
                    ker_in = null_space(a)
                    ker_i = null_space(r.isometry_part)
                else:
                    ker_in = null_space(a.conj().T)
                    ker_i = null_space(r.isometry_part.conj().T)
                ker_p = null_space(r.positive_part)
                out[key + "/kernels"] = max(
                    _kernels_agree(ker_in, ker_p, tol), _kernels_agree(ker_in, ker_i, tol)
                )
            else:
                lo, _ = hilb.hermitian_eigenvalue_bounds(r.positive_part)
                out[key + "/eig_deficit"] = max(0.0, min(1.0, smallest) - 1e-8 - lo)
    return out


def _case_polar(rng, max_size):
    a = gen.matrix(rng, max_size)
    if rng.random() < 0.3 and min(a.shape) > 1:
        # force a nontrivial kernel
        a[:, -1] = a[:, 0]
    checks = polar_checks(a)
    worst = _worst(*checks.values())
    bad = {k: v for k, v in checks.items() if v > factorize.RECON_TOL}
    if bad:
        return worst, {"matrix": matrix_to_json(a), "violations": bad}
    return worst, None


def random_partial_isometry(rng, max_size):
    rows, cols = (int(s) for s in rng.integers(1, max_size + 1, size=2))
    f = gen.partial_injection(rng, FiniteSet.range(cols), FiniteSet.range(rows))
    return gen.unitary(rng, rows) @ ltwo_matrix(f) @ gen.unitary(rng, cols), f


def _case_isometry(rng, max_size):
    i, f = random_partial_isometry(rng, max_size)
    cls = hilb.classify(i, factorize.RECON_TOL)
    fac = factorize.isometry_factor(i, factorize.RECON_TOL)
    resid = fac.residual(i)
    worst = _worst(cls.residuals["partial_isometry"], resid)
    if not cls.is_partial_isometry or resid > factorize.RECON_TOL or len(fac.f.pairs) != len(f.pairs):
        return worst, {"matrix": matrix_to_json(i), "residual": resid}
    return worst, None


def essential_checks(g) -> dict:
    g = as_matrix(g)
    fac = factorize.essential_full_factor(g)
    rows, cols = g.shape
    return {
        "residual": fac.residual(g) / max(1.0, operator_norm(g)),
        "u_unitary": operator_norm(fac.u.conj().T @ fac.u - eye(cols)) if cols else 0.0,
        "v_min_sigma": float(svd(fac.v).spectrum[-1]) if rows else 1.0,
    }


def _case_essential(rng, max_size):
    g = gen.matrix(rng, max_size)
    c = essential_checks(g)
    worst = _worst(c["residual"], c["u_unitary"])
    if c["residual"] > 1e-8 or c["u_unitary"] > 1e-8 or c["v_min_sigma"] <= 1e-10:
        return worst, {"matrix": matrix_to_json(g), **c}
    return worst, None


def brute_force_mediators(d, colimit, test) -> list[PartialInjection]:
    obj, cocone = colimit
    target = test[0].cod
    return [
        m
        for m in pinj.all_partial_injections(obj, target)
        if all(pinj.compose(m, c) == t for c, t in zip(cocone, test))
    ]


def _case_colimit(rng, max_size):
    d = gen.chain_with_survivors(rng, 5, min(max_size, 5))
    colim = pinj.chain_colimit(d)
    obj, cocone = colim
    if not pinj.is_cocone(d, cocone):
        return 0.0, {"chain": d.to_json(), "problem": "not a cocone"}
    for i in range(len(d)):
        expected = {x for x in d.stages[i] if x in d.transition(i, len(d) - 1).mapping}
        if cocone[i].domain_of_definition != expected:
            return 0.0, {"chain": d.to_json(), "problem": f"Dom(c_{i})"}
    target = FiniteSet.range(int(rng.integers(0, 4)), "t")
    last = gen.partial_injection(rng, d.stages[-1], target)
    test = [pinj.compose(last, d.transition(i, len(d) - 1)) for i in range(len(d))]
    found = brute_force_mediators(d, colim, test)
    med = pinj.mediate(d, colim, test)
    if found != [med]:
        return 0.0, {"chain": d.to_json(), "problem": "mediator", "found": len(found)}
    return 0.0, None


def _case_order(rng, max_size):
    x, y, z = _pi_pair(rng, max_size)
    fam = gen.directed_chain(rng, x, y, int(rng.integers(1, 5)))
    top = pinj.sup(fam)
    mats = [ltwo_matrix(f) for f in fam]
    if not hilb.equal(ltwo_matrix(top), hilb.max_of_directed(mats)):
        return 0.0, {"problem": "sup", "family": [f.to_json() for f in fam]}
    for f, g in zip(fam, fam[1:]):
        if not (pinj.leq(f, g) and hilb.leq(ltwo_matrix(f), ltwo_matrix(g))):
            return 0.0, {"problem": "leq", "pair": [f.to_json(), g.to_json()]}
    h = gen.partial_injection(rng, y, z)
    h2 = gen.restriction(rng, h)
    f, f2 = fam[-1], fam[0]
    if not pinj.leq(pinj.compose(h2, f2), pinj.compose(h, f)):
        return 0.0, {"problem": "pinj monotone"}
    a = ltwo_matrix(pinj.compose(h2, f2))
    b = ltwo_matrix(h) @ ltwo_matrix(f)
    if not hilb.leq(a, b):
        return 0.0, {"problem": "hilb monotone"}
    return 0.0, None


def _case_chain(rng, max_size):
    g = gen.matrix(rng, max_size)
    n, m = g.shape
    f = g * (rng.random() / (math.sqrt(m * n) * max(operator_norm(g), 1e-300)))
    chain = factorize.finite_rank_chain(f)
    resid = operator_norm(f - factorize.chain_product(chain))
    pis = [hilb.partial_isometry_residual(c) for c in chain]
    worst = _worst(resid, *pis)
    if len(chain) != 4 or worst > factorize.RECON_TOL:
        return worst, {"matrix": matrix_to_json(f), "residual": resid, "factors": pis}
    return worst, None


def _case_inverse(rng, max_size):
    n = int(rng.integers(1, 4))
    gens = gen.submonoid_generators(rng, n, int(rng.integers(0, 3)))
    elems = inversecat.generated_submonoid(gens, FiniteSet.range(n))
    c = inversecat.from_partial_injections(elems)
    v = inversecat.validate(c)
    if not v["valid"]:
        return 0.0, {"problem": "validate", "report": v}
    rep = inversecat.check_embedding(c, inversecat.wagner_preston(c))
    if not rep["passed"]:
        return 0.0, {"problem": "embedding", "report": rep}
    return 0.0, None


def _broken_dagger(f: PartialInjection) -> PartialInjection:
    # transpose that forgets the last pair
    return PartialInjection(f.cod, f.dom, [(y, x) for x, y in f.pairs][:-1])


def _case_canary(rng, max_size):
    x, y, _ = _pi_pair(rng, max_size)
    f = gen.partial_injection(rng, x, y)
    resid = float(np.max(np.abs(ltwo_matrix(_broken_dagger(f)) - hilb.adjoint(ltwo_matrix(f))), initial=0.0))
    if resid != 0.0:
        return resid, {"law": "dagger", "morphism": f.to_json()}
    return resid, None


SUITES: dict[str, Callable] = {
    "functor": _case_functor,
    "pinj": _case_pinj,
    "svd": _case_svd,
    "polar": _case_polar,
    "isometry": _case_isometry,
    "essential": _case_essential,
    "colimit": _case_colimit,
    "order": _case_order,
    "chain": _case_chain,
    "inverse": _case_inverse,
    "canary": _case_canary,
}


def run_suite(name: str, seed: int = 0, cases: int = 100, max_size: int = 8) -> dict:
    if name not in SUITES:
        raise ValidationError(f"unknown suite {name!r}; choose from {sorted(SUITES)}", code="unknown-suite")
    case = SUITES[name]
    failures = []
    worst = 0.0
    for k in range(cases):
        resid, witness = case(gen.case_rng(seed, k), max_size)
        worst = max(worst, resid)
        if witness is not None:
            failures.append({"case": k, **witness})
    return {
        "suite": name,
        "seed": seed,
        "cases": cases,
        "failures": failures,
        "max_residual": worst,
        "passed": not failures,
    }
