"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line with its key
numbers, then asserts.  Seeds are fixed so the numbers are reproducible.
"""

import math
from itertools import product

import numpy as np
import pytest

from ltwolab import factorize, gen, hilb, inversecat, lawlab, ltwo, pinj
from ltwolab.numerics import operator_norm, svd
from ltwolab.pinj import FiniteSet

SEED = 20240611


@pytest.fixture
def say(capsys):
    def _say(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return _say


def norm2(m):
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def exact(a, b):
    return float(np.max(np.abs(a - b))) if a.size else 0.0


# 1


def test_criterion_1_functor_laws(say):
    worst = 0.0
    for case in range(1000):
        rng = gen.case_rng(SEED, case)
        x, y, z, p, q = (FiniteSet.range(int(rng.integers(0, 9)), s) for s in "xyzpq")
        f = gen.partial_injection(rng, x, y)
        g = gen.partial_injection(rng, y, z)
        h = gen.partial_injection(rng, p, q)
        lf, lg, lh = ltwo.ltwo_matrix(f), ltwo.ltwo_matrix(g), ltwo.ltwo_matrix(h)
        worst = max(
            worst,
            exact(ltwo.ltwo_matrix(pinj.compose(g, f)), lg @ lf),
            exact(ltwo.ltwo_matrix(pinj.dagger(f)), lf.conj().T),
            exact(
                ltwo.ltwo_matrix(pinj.tensor(f, h)) @ ltwo.structure_map("tensor", x, p),
                ltwo.structure_map("tensor", y, q) @ np.kron(lf, lh),
            ),
            exact(
                ltwo.ltwo_matrix(pinj.oplus(f, h)) @ ltwo.structure_map("oplus", x, p),
                ltwo.structure_map("oplus", y, q) @ hilb.dirsum(lf, lh),
            ),
        )
    ok = worst == 0.0
    say(1, ok, f"functor, dagger, ⊗ and ⊕ naturality on 1000 cases, max residual {worst!r}")
    assert ok


# 2


def test_criterion_2_direct_image(say):
    worst_cls = worst_fac = 0.0
    flagged = rank_ok = True
    for case in range(500):
        rng = gen.case_rng(SEED + 2, case)
        i, f = lawlab.random_partial_isometry(rng, 8)
        cls = hilb.classify(i, 1e-8)
        fac = factorize.isometry_factor(i, 1e-8)
        worst_cls = max(worst_cls, cls.residuals["partial_isometry"])
        worst_fac = max(worst_fac, fac.residual(i))
        flagged &= cls.is_partial_isometry
        rank_ok &= len(fac.f.pairs) == len(f.pairs)
    ok = flagged and rank_ok and worst_cls <= 1e-8 and worst_fac <= 1e-8
    say(2, ok, f"500 partial isometries, classify residual {worst_cls:.2e}, isometry_factor residual {worst_fac:.2e}")
    assert ok


# 3


def test_criterion_3_essential_fullness(say):
    worst_res = worst_u = 0.0
    min_v = math.inf
    for case in range(1000):
        rng = gen.case_rng(SEED + 3, case)
        g = gen.matrix(rng, 8)
        fac = factorize.essential_full_factor(g)
        worst_res = max(worst_res, fac.residual(g) / max(1.0, norm2(g)))
        worst_u = max(worst_u, norm2(fac.u.conj().T @ fac.u - np.eye(g.shape[1])))
        min_v = min(min_v, float(np.linalg.svd(fac.v, compute_uv=False)[-1]))
    ok = worst_res <= 1e-8 and worst_u <= 1e-8 and min_v > 1e-10
    say(3, ok, f"1000 matrices, relative residual {worst_res:.2e}, u unitarity {worst_u:.2e}, min σ(v) {min_v:.3g}")
    assert ok


# 4


def _subspace_gap(k1, k2):
    if k1.shape[1] != k2.shape[1]:
        return math.inf
    return norm2(k1 @ k1.conj().T - k2 @ k2.conj().T)


def test_criterion_4_polar(say):
    worst_rec = worst_ker = worst_eig = 0.0
    for case in range(1000):
        rng = gen.case_rng(SEED + 4, case)
        a = gen.matrix(rng, 8)
        if case % 3 == 0:
            a = a @ np.diag(rng.random(a.shape[1]) < 0.5)
        s = svd(a)
        smallest = float(s.sigma[-1]) if s.rank else 1.0
        scale = max(1.0, norm2(a))
        for side in ("right", "left"):
            km = factorize.polar(a, side, "kernel_matched")
            st = factorize.polar(a, side, "strong")
            worst_rec = max(worst_rec, norm2(a - km.product()) / scale, norm2(a - st.product()) / scale)
            # the relevant kernel is ker(a) on the right and ker(a†) on the left
            src = a if side == "right" else a.conj().T
            iso = km.isometry_part if side == "right" else km.isometry_part.conj().T
            k_in = svd(src).v_null
            worst_ker = max(
                worst_ker,
                _subspace_gap(k_in, svd(km.positive_part).v_null),
                _subspace_gap(k_in, svd(iso).v_null),
            )
            lowest = float(np.linalg.eigvalsh((st.positive_part + st.positive_part.conj().T) / 2)[0])
            worst_eig = max(worst_eig, min(1.0, smallest) - 1e-8 - lowest)
    ok = worst_rec <= 1e-8 and worst_ker <= 1e-8 and worst_eig <= 0.0
    say(
        4,
        ok,
        f"1000 matrices × 2 sides, reconstruction {worst_rec:.2e}, kernel gap {worst_ker:.2e}, "
        f"strong eigenvalue deficit {max(worst_eig, 0.0):.2e}",
    )
    assert ok


# 5


def test_criterion_5_counterexamples(say):
    eq = lawlab.demo_equalizer_nonpreservation()
    iso = lawlab.demo_isometry_composition(math.pi / 4)
    iso_half = lawlab.demo_isometry_composition(math.pi / 2)
    cop = lawlab.search_binary_coproduct(FiniteSet(["x"]), FiniteSet(["y"]), 3)
    growth = lawlab.demo_unbounded_cotuple(3)
    checks = {
        "equalizer dims 1 vs 0": eq["hilb_dim"] == 1 and eq["pinj_size"] == 0,
        "sin(π/4) composite": abs(iso["composite"] - 0.7071067811865476) <= 2e-16,
        "π/4 composite not a partial isometry": not iso["is_partial_isometry"],
        "π/2 composite is a partial isometry": iso_half["is_partial_isometry"] and iso_half["composite"] == 1.0,
        "coproduct search refutes all": cop["candidates"] == 30 and not cop["survivors"],
        "cotuple norm √14": abs(growth["norm"] - math.sqrt(14)) <= 1e-14 and growth["norm"] >= 3,
    }
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    say(
        5,
        ok,
        f"equalizer {eq['hilb_dim']} vs {eq['pinj_size']}, composite {iso['composite']!r}, "
        f"{len(cop['refuted'])}/{cop['candidates']} candidates refuted, norm {growth['norm']!r}"
        + (f", failed: {failed}" if failed else ""),
    )
    assert ok


# 6


def test_criterion_6_inverse_categories(say):
    results = {}
    for name, c in (("Z/2", inversecat.cyclic_group(2)), ("I2", inversecat.symmetric_inverse_monoid(2))):
        valid = inversecat.validate(c)["valid"]
        F = inversecat.wagner_preston(c)
        results[name] = valid and inversecat.check_embedding(c, F)["passed"]
    i2 = inversecat.symmetric_inverse_monoid(2)
    ok = all(results.values()) and len(i2.morphisms) == 7
    say(6, ok, f"validate + wagner_preston + check_embedding: {results}, |I2| = {len(i2.morphisms)}")
    assert ok


# 7


def _mediators(obj, cocone, test, target):
    return [
        m
        for m in pinj.all_partial_injections(obj, target)
        if all(pinj.compose(m, c) == t for c, t in zip(cocone, test))
    ]


def test_criterion_7_colimits(say):
    cocone_ok = mediation_ok = True
    checked = 0
    for case in range(200):
        rng = gen.case_rng(SEED + 7, case)
        d = gen.chain(rng, 5, 5) if case % 2 else gen.chain_with_survivors(rng, 5, 5)
        obj, cocone = pinj.chain_colimit(d)
        for i in range(len(d)):
            for j in range(i, len(d)):
                cocone_ok &= pinj.compose(cocone[j], d.transition(i, j)) == cocone[i]
        last = len(d) - 1
        for size in range(3):
            target = FiniteSet.range(size, "t")
            # every cocone over a finite chain is fixed by its last leg
            leg = gen.partial_injection(rng, d.stages[last], target)
            test = [pinj.compose(leg, d.transition(i, last)) for i in range(len(d))]
            found = _mediators(obj, cocone, test, target)
            mediation_ok &= found == [pinj.mediate(d, (obj, cocone), test)]
            checked += 1
    ok = cocone_ok and mediation_ok
    say(7, ok, f"200 chains, cocone laws {cocone_ok}, {checked} test cocones with a unique brute-force mediator {mediation_ok}")
    assert ok


# 8


def _hilb_restrict(rng, a):
    s = svd(a)
    if s.rank == 0:
        return a.copy()
    k = int(rng.integers(0, s.rank + 1))
    basis = s.v @ gen.unitary(rng, s.rank)[:, :k]
    return a @ basis @ basis.conj().T


def test_criterion_8_order(say):
    failures = {}

    # PInj: exhaustive order laws and monotone composition on small hom-sets
    x, y, z = (FiniteSet.range(2, s) for s in "xyz")
    xy, yz = list(pinj.all_partial_injections(x, y)), list(pinj.all_partial_injections(y, z))
    pinj_ok = all(pinj.leq(f, f) for f in xy)
    for f, g in product(xy, repeat=2):
        if pinj.leq(f, g) and pinj.leq(g, f):
            pinj_ok &= f == g
        for h in xy:
            if pinj.leq(f, g) and pinj.leq(g, h):
                pinj_ok &= pinj.leq(f, h)
    for f2, f in product(xy, repeat=2):
        for g2, g in product(yz, repeat=2):
            if pinj.leq(f2, f) and pinj.leq(g2, g):
                pinj_ok &= pinj.leq(pinj.compose(g2, f2), pinj.compose(g, f))
    failures["pinj"] = not pinj_ok

    # Hilb: order laws on restriction triples, and monotone composition
    laws_ok = True
    mono_fail = 0
    witness = None
    for case in range(500):
        rng = gen.case_rng(SEED + 8, case)
        c = gen.matrix(rng, 4)
        b = _hilb_restrict(rng, c)
        a = _hilb_restrict(rng, b)
        laws_ok &= hilb.leq(a, a) and hilb.leq(a, b) and hilb.leq(b, c) and hilb.leq(a, c)
        if hilb.leq(b, a):
            laws_ok &= hilb.equal(a, b)
        g = gen.unit_disc(rng, (int(rng.integers(1, 5)), c.shape[0]))
        g2 = _hilb_restrict(rng, g)
        if not hilb.leq(g2 @ a, g @ c):
            mono_fail += 1
            witness = witness or case
    failures["hilb laws"] = not laws_ok
    failures["hilb composition"] = mono_fail > 0

    # ℓ² preserves ≤ and directed sups
    ltwo_ok = True
    for case in range(500):
        rng = gen.case_rng(SEED + 80, case)
        dom = FiniteSet.range(int(rng.integers(0, 6)), "x")
        cod = FiniteSet.range(int(rng.integers(0, 6)), "y")
        chain = gen.directed_chain(rng, dom, cod, int(rng.integers(1, 6)))
        images = [ltwo.ltwo_matrix(f) for f in chain]
        ltwo_ok &= all(hilb.leq(p, q) for p, q in zip(images, images[1:]))
        ltwo_ok &= np.array_equal(hilb.max_of_directed(images), ltwo.ltwo_matrix(pinj.sup(chain)))
    failures["ltwo"] = not ltwo_ok

    ok = not any(failures.values())
    detail = (
        f"pinj laws+monotone {pinj_ok}, hilb leq laws {laws_ok}, ltwo ≤/sup on 500 chains {ltwo_ok}, "
        f"hilb monotone composition violated in {mono_fail}/500 cases"
    )
    if witness is not None:
        detail += f" (first at case {witness}; e.g. b'=diag(1,0) ≤ I but b'a ≰ a for a=[[1,0],[1,1]])"
    say(8, ok, detail)
    assert ok


# 9


def test_criterion_9_finite_rank_chain(say):
    worst_pi = worst_res = 0.0
    lengths = set()
    for case in range(200):
        rng = gen.case_rng(SEED + 9, case)
        f = gen.matrix(rng, 4)
        n, m = f.shape
        f = f * (rng.random() / (math.sqrt(m * n) * norm2(f)))
        chain = factorize.finite_rank_chain(f)
        lengths.add(len(chain))
        worst_pi = max(worst_pi, *(hilb.partial_isometry_residual(c) for c in chain))
        worst_res = max(worst_res, norm2(factorize.chain_product(chain) - f))
    ok = lengths == {4} and worst_pi <= 1e-8 and worst_res <= 1e-8
    say(9, ok, f"200 matrices, chain lengths {sorted(lengths)}, factor residual {worst_pi:.2e}, composite residual {worst_res:.2e}")
    assert ok


# 10


def test_criterion_10_svd(say):
    worst_rec = worst_u = worst_v = 0.0
    for case in range(2000):
        rng = gen.case_rng(SEED + 10, case)
        a = gen.matrix(rng, 16)
        s = svd(a)
        v_full = np.column_stack([s.v, s.v_null])
        worst_rec = max(worst_rec, norm2(a - s.reconstruct()) / max(1.0, norm2(a)))
        worst_u = max(worst_u, norm2(s.u.conj().T @ s.u - np.eye(s.rank)))
        worst_v = max(worst_v, norm2(v_full.conj().T @ v_full - np.eye(a.shape[1])))
    ok = max(worst_rec, worst_u, worst_v) <= 1e-9
    say(10, ok, f"2000 matrices up to 16×16, reconstruction {worst_rec:.2e}, U {worst_u:.2e}, V {worst_v:.2e}")
    assert ok
