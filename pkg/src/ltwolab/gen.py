"""Seeded random generators for property suites.

Every case draws from its own generator, seeded by ``(seed, case index)``,
so results do not depend on scheduling.  Partial injections are drawn by
choosing a matching size uniformly, then a random injection of that size;
matrix entries are uniform on the closed unit disc.
"""

from __future__ import annotations

import numpy as np

from .pinj import ChainDiagram, FiniteSet, PartialInjection


def case_rng(seed: int, case: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, case]))


def finite_set(rng, size: int, prefix: str = "x") -> FiniteSet:
    return FiniteSet.range(size, prefix)


def partial_injection(rng, dom: FiniteSet, cod: FiniteSet) -> PartialInjection:
    k = int(rng.integers(0, min(len(dom), len(cod)) + 1))
    xs = rng.choice(len(dom), size=k, replace=False) if k else []
    ys = rng.choice(len(cod), size=k, replace=False) if k else []
    return PartialInjection(dom, cod, ((dom.labels[a], cod.labels[b]) for a, b in zip(xs, ys)))


def restriction(rng, f: PartialInjection) -> PartialInjection:
    """A random ``g <= f``: keep each pair of ``f`` with probability 1/2."""
    keep = rng.random(len(f.pairs)) < 0.5
    return PartialInjection(f.dom, f.cod, (p for p, k in zip(f.pairs, keep) if k))


def unit_disc(rng, shape) -> np.ndarray:
    r = np.sqrt(rng.random(shape))
    theta = rng.random(shape) * 2 * np.pi
    return r * np.exp(1j * theta)


def matrix(rng, max_size: int, min_size: int = 1) -> np.ndarray:
    rows, cols = rng.integers(min_size, max_size + 1, size=2)
    return unit_disc(rng, (int(rows), int(cols)))


def unitary(rng, n: int) -> np.ndarray:
    """Haar-distributed unitary from a phase-corrected QR factorisation."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def chain(rng, max_length: int, max_stage: int) -> ChainDiagram:
    length = int(rng.integers(1, max_length + 1))
    stages = [
        FiniteSet.range(int(rng.integers(0, max_stage + 1)), prefix=f"s{i}_")
        for i in range(length)
    ]
    links = [partial_injection(rng, stages[i], stages[i + 1]) for i in range(length - 1)]
    return ChainDiagram(stages, links)


def chain_with_survivors(rng, max_length: int, max_stage: int) -> ChainDiagram:
    """Chains biased towards long-lived elements: links are mostly total."""
    length = int(rng.integers(1, max_length + 1))
    sizes = [int(rng.integers(0, max_stage + 1)) for _ in range(length)]
    stages = [FiniteSet.range(s, prefix=f"s{i}_") for i, s in enumerate(sizes)]
    links = []
    for i in range(length - 1):
        dom, cod = stages[i], stages[i + 1]
        k = min(len(dom), len(cod))
        k = k if rng.random() < 0.5 else int(rng.integers(0, k + 1))
        xs = rng.choice(len(dom), size=k, replace=False) if k else []
        ys = rng.choice(len(cod), size=k, replace=False) if k else []
        links.append(PartialInjection(dom, cod, ((dom.labels[a], cod.labels[b]) for a, b in zip(xs, ys))))
    return ChainDiagram(stages, links)


def directed_chain(rng, dom: FiniteSet, cod: FiniteSet, length: int) -> list[PartialInjection]:
    """An increasing sequence ``f_0 <= f_1 <= ...`` ending in a random ``f``."""
    top = partial_injection(rng, dom, cod)
    out = [top]
    for _ in range(length - 1):
        out.append(restriction(rng, out[-1]))
    return out[::-1]


def submonoid_generators(rng, n: int, count: int) -> list[PartialInjection]:
    base = FiniteSet.range(n)
    return [partial_injection(rng, base, base) for _ in range(count)]

