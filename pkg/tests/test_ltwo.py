import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fs, partial_injections, pi
from ltwolab import hilb, ltwo, pinj
from ltwolab.errors import DomainMismatchError, ValidationError
from ltwolab.gen import case_rng, directed_chain
from ltwolab.pinj import FiniteSet


def test_object_dimensions():
    assert ltwo.ltwo_object(FiniteSet()) == 0
    assert ltwo.ltwo_object(fs("*")) == 1
    assert ltwo.ltwo_object(fs("a", "b", "c")) == 3


def test_morphism_examples():
    img = ltwo.ltwo_morphism(pi(["0", "1"], ["a"], ("0", "a")))
    assert np.array_equal(img.matrix, [[1, 0]])
    assert np.array_equal(ltwo.ltwo_matrix(pinj.identity(fs("a", "b"))), np.eye(2))
    assert np.array_equal(ltwo.ltwo_matrix(pi(["0", "1"], ["a"])), np.zeros((1, 2)))


def test_entry_convention():
    # entry (y, x) is 1 iff (x, y) is in the graph
    f = pi(["x0", "x1", "x2"], ["y0", "y1"], ("x2", "y0"), ("x0", "y1"))
    m = ltwo.ltwo_matrix(f)
    assert m.shape == (2, 3)
    assert np.array_equal(m, [[0, 0, 1], [1, 0, 0]])


def test_formula_on_functions():
    # (ℓ²f)(φ)(y) = φ(x) for (x, y) in f, else 0
    f = pi(["p", "q", "r"], ["a", "b", "c"], ("p", "c"), ("r", "a"))
    phi = np.array([2.0, 3.0, 5.0])
    assert np.array_equal(ltwo.ltwo_matrix(f) @ phi, [5.0, 0.0, 2.0])


def test_structure_maps_are_identities():
    assert np.array_equal(ltwo.structure_map("tensor", fs("a", "b"), fs("c")), np.eye(2))
    assert np.array_equal(ltwo.structure_map("⊕", fs("a"), fs("b", "c")), np.eye(3))
    with pytest.raises(ValueError):
        ltwo.structure_map("times", fs("a"), fs("b"))


def test_tensor_naturality_by_hand():
    f = pi(["0", "1"], ["a"], ("0", "a"))
    g = pinj.identity(fs("*"))
    lhs = ltwo.ltwo_matrix(pinj.tensor(f, g)) @ ltwo.structure_map("tensor", f.dom, g.dom)
    rhs = ltwo.structure_map("tensor", f.cod, g.cod) @ hilb.kron(ltwo.ltwo_matrix(f), ltwo.ltwo_matrix(g))
    assert np.array_equal(lhs, [[1, 0]]) and np.array_equal(rhs, [[1, 0]])


def test_verify_examples():
    f = pi(["0", "1"], ["a"], ("0", "a"))
    rep = ltwo.verify_preservation("dagger", f)
    assert rep == {"law": "dagger", "residual": 0.0, "holds": True}
    x, y = fs("0", "1"), fs("a", "b")
    rep = ltwo.verify_preservation("order", pi(x, y, ("0", "a")), pi(x, y, ("0", "a"), ("1", "b")))
    assert rep["pinj_leq"] and rep["hilb_leq"] and rep["holds"]


def test_verify_rejects_bad_arguments():
    f = pi(["0"], ["a"], ("0", "a"))
    with pytest.raises(ValidationError):
        ltwo.verify_preservation("functoriality", f)
    with pytest.raises(DomainMismatchError):
        ltwo.verify_preservation("functoriality", f, f)
    with pytest.raises(ValueError):
        ltwo.verify_preservation("naturality", f, f)


@given(st.data())
def test_all_laws_hold_exactly(data):
    x, y, z = (FiniteSet.range(data.draw(st.integers(0, 5)), p) for p in "xyz")
    f = data.draw(partial_injections(x, y))
    g = data.draw(partial_injections(y, z))
    h = data.draw(partial_injections())
    assert ltwo.verify_preservation("functoriality", f, g)["residual"] == 0.0
    assert ltwo.verify_preservation("dagger", f)["residual"] == 0.0
    assert ltwo.verify_preservation("tensor", f, h)["residual"] == 0.0
    assert ltwo.verify_preservation("oplus", f, h)["residual"] == 0.0
    f2 = data.draw(partial_injections(x, y))
    assert ltwo.verify_preservation("order", f, f2)["holds"]


def test_reflect_iso():
    assert ltwo.reflect_iso(pinj.identity(fs("a", "b")))
    assert not ltwo.reflect_iso(pi(["0", "1"], ["a"], ("0", "a")))
    assert ltwo.reflect_iso(pi(["a", "b"], ["a", "b"], ("a", "b"), ("b", "a")))
    assert not ltwo.reflect_iso(pi(["a", "b"], ["a", "b"], ("a", "b")))


def test_basis_preserving_examples():
    f = pi(["0", "1", "2"], ["a", "b"], ("1", "a"), ("2", "b"))
    assert ltwo.is_basis_preserving(ltwo.ltwo_matrix(f), f.dom, f.cod)
    two, one = FiniteSet.range(2), FiniteSet.range(1)
    assert not ltwo.is_basis_preserving(np.array([[1], [1]]) / math.sqrt(2), one, two)
    assert not ltwo.is_basis_preserving([[1, 1], [0, 0]], two, two)
    assert not ltwo.is_basis_preserving([[2, 0], [0, 0]], two, two)


def test_direct_image_round_trip_exhaustive():
    for m, n in product(range(5), repeat=2):
        x, y = FiniteSet.range(m, "x"), FiniteSet.range(n, "y")
        seen = set()
        for f in pinj.all_partial_injections(x, y):
            mat = ltwo.ltwo_matrix(f)
            assert ltwo.preimage(mat, x, y) == f
            seen.add(mat.real.astype(int).tobytes())
        # faithful: distinct morphisms give distinct matrices
        count = sum(math.comb(m, k) * math.comb(n, k) * math.factorial(k) for k in range(min(m, n) + 1))
        assert len(seen) == count


def test_preimage_rejects_non_partial_permutations():
    two = FiniteSet.range(2)
    with pytest.raises(ValidationError):
        ltwo.preimage([[1, 1], [0, 0]], two, two)
    with pytest.raises(ValidationError) as exc:
        ltwo.preimage([[0.5, 0], [0, 0]], two, two)
    assert exc.value.code == "not-partial-permutation"


@given(partial_injections(max_size=8))
def test_norm_bound(f):
    assert ltwo.norm_bound(f) <= 1.0 + 1e-12
    assert ltwo.norm_bound(f) == pytest.approx(1.0 if f.pairs else 0.0, abs=1e-12)


def test_sup_preservation_on_directed_chains():
    for case in range(100):
        rng = case_rng(5, case)
        x, y = FiniteSet.range(int(rng.integers(0, 6)), "x"), FiniteSet.range(int(rng.integers(0, 6)), "y")
        chain = directed_chain(rng, x, y, int(rng.integers(1, 5)))
        top = ltwo.ltwo_matrix(pinj.sup(chain))
        assert np.array_equal(hilb.max_of_directed([ltwo.ltwo_matrix(f) for f in chain]), top)


def test_equalizer_is_not_preserved():
    x, y = fs("0", "1"), fs("a")
    f, g = pi(x, y, ("0", "a")), pi(x, y, ("1", "a"))
    obj, _ = pinj.equalizer(f, g)
    assert hilb.equalizer(ltwo.ltwo_matrix(f), ltwo.ltwo_matrix(g)).shape[1] == 1
    assert ltwo.ltwo_object(obj) == 0
