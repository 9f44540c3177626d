import numpy as np
import pytest
from hypothesis import strategies as st

from ltwolab.pinj import FiniteSet, PartialInjection


def fs(*labels):
    return FiniteSet(labels)


def pi(dom, cod, *pairs):
    return PartialInjection(FiniteSet(dom), FiniteSet(cod), pairs)


@st.composite
def finite_sets(draw, max_size=5, prefix="x"):
    n = draw(st.integers(0, max_size))
    return FiniteSet.range(n, prefix)


@st.composite
def partial_injections(draw, dom=None, cod=None, max_size=5):
    if dom is None:
        dom = draw(finite_sets(max_size, "x"))
    if cod is None:
        cod = draw(finite_sets(max_size, "y"))
    k = draw(st.integers(0, min(len(dom), len(cod))))
    xs = draw(st.permutations(dom.labels))[:k]
    ys = draw(st.permutations(cod.labels))[:k]
    return PartialInjection(dom, cod, zip(xs, ys))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
