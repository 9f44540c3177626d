"""Finite sets and partial injections.

A :class:`PartialInjection` is stored as its graph, a tuple of ``(x, y)``
label pairs kept in domain order, so equality of values is equality of
graphs together with both boundary objects.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import (
    ConsistencyError,
    DirectednessError,
    DomainMismatchError,
    ValidationError,
)

LEFT_TAG = "L"
RIGHT_TAG = "R"


@dataclass(frozen=True)
class FiniteSet:
    """Ordered alphabet of distinct text labels."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str] = ()):
        labels = tuple(labels)
        for lab in labels:
            if not isinstance(lab, str):
                raise ValidationError(f"label {lab!r} is not text", code="bad-label")
        if len(set(labels)) != len(labels):
            seen, dupes = set(), []
            for lab in labels:
                if lab in seen:
                    dupes.append(lab)
                seen.add(lab)
            raise ValidationError(f"duplicate labels {dupes}", code="duplicate-label")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def range(cls, n: int, prefix: str = "") -> "FiniteSet":
        return cls(f"{prefix}{k}" for k in range(n))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: k for k, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError(f"{label!r} is not in {self}", code="unknown-label") from None

    def __contains__(self, label) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __repr__(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


def _as_set(x) -> FiniteSet:
    return x if isinstance(x, FiniteSet) else FiniteSet(x)


@dataclass(frozen=True)
class PartialInjection:
    dom: FiniteSet
    cod: FiniteSet
    pairs: tuple[tuple[str, str], ...]

    def __init__(self, dom, cod, pairs: Iterable[Sequence[str]] = ()):
        dom, cod = _as_set(dom), _as_set(cod)
        pairs = [tuple(p) for p in pairs]
        forward: dict[str, str] = {}
        backward: dict[str, str] = {}
        for p in pairs:
            if len(p) != 2:
                raise ValidationError(f"graph entry {p!r} is not a pair", code="malformed")
            x, y = p
            if x not in dom:
                raise ValidationError(f"{x!r} is not in the domain {dom}", code="unknown-label")
            if y not in cod:
                raise ValidationError(f"{y!r} is not in the codomain {cod}", code="unknown-label")
            if forward.get(x, y) != y:
                raise ValidationError(
                    f"{x!r} is sent to both {forward[x]!r} and {y!r}", code="not-single-valued"
                )
            if backward.get(y, x) != x:
                raise ValidationError(
                    f"{backward[y]!r} and {x!r} are both sent to {y!r}", code="non-injective"
                )
            forward[x] = y
            backward[y] = x
        ordered = tuple(sorted(forward.items(), key=lambda p: dom.index(p[0])))
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "pairs", ordered)

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)

    @cached_property
    def inverse_mapping(self) -> dict[str, str]:
        return {y: x for x, y in self.pairs}

    @property
    def domain_of_definition(self) -> frozenset[str]:
        return frozenset(self.mapping)

    @property
    def image(self) -> frozenset[str]:
        return frozenset(self.inverse_mapping)

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def is_total(self) -> bool:
        return len(self.pairs) == len(self.dom)

    def is_bijection(self) -> bool:
        return len(self.pairs) == len(self.dom) == len(self.cod)

    def __repr__(self) -> str:
        graph = ", ".join(f"({x},{y})" for x, y in self.pairs)
        return f"PartialInjection({self.dom} -> {self.cod}: {{{graph}}})"

    def to_json(self) -> dict:
        return {
            "dom": list(self.dom.labels),
            "cod": list(self.cod.labels),
            "pairs": [list(p) for p in self.pairs],
        }

    @classmethod
    def from_json(cls, data) -> "PartialInjection":
        if not isinstance(data, dict) or not {"dom", "cod", "pairs"} <= set(data):
            raise ValidationError("expected an object with dom, cod and pairs", code="malformed")
        for key in ("dom", "cod", "pairs"):
            if not isinstance(data[key], list):
                raise ValidationError(f"{key} must be a list", code="malformed")
        return cls(data["dom"], data["cod"], data["pairs"])


def identity(x) -> PartialInjection:
    x = _as_set(x)
    return PartialInjection(x, x, ((lab, lab) for lab in x))


def empty(dom, cod) -> PartialInjection:
    return PartialInjection(dom, cod, ())


def compose(g: PartialInjection, f: PartialInjection) -> PartialInjection:
    """Relational composite ``g ∘ f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise DomainMismatchError(
            f"cannot compose: codomain {f.cod} of f differs from domain {g.dom} of g",
            f_cod=list(f.cod.labels),
            g_dom=list(g.dom.labels),
        )
    gm = g.mapping
    return PartialInjection(f.dom, g.cod, ((x, gm[y]) for x, y in f.pairs if y in gm))


def compose_all(*fs: PartialInjection) -> PartialInjection:
    """``compose_all(h, g, f) == h ∘ g ∘ f``."""
    out = fs[-1]
    for h in reversed(fs[:-1]):
        out = compose(h, out)
    return out


def dagger(f: PartialInjection) -> PartialInjection:
    return PartialInjection(f.cod, f.dom, ((y, x) for x, y in f.pairs))


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def tensor_object(x: FiniteSet, y: FiniteSet) -> FiniteSet:
    return FiniteSet(pair_label(a, b) for a in x for b in y)


def oplus_object(x: FiniteSet, y: FiniteSet) -> FiniteSet:
    return FiniteSet([LEFT_TAG + a for a in x] + [RIGHT_TAG + b for b in y])


def tensor(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    return PartialInjection(
        tensor_object(f.dom, g.dom),
        tensor_object(f.cod, g.cod),
        ((pair_label(x, x2), pair_label(y, y2)) for x, y in f.pairs for x2, y2 in g.pairs),
    )


def oplus(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    return PartialInjection(
        oplus_object(f.dom, g.dom),
        oplus_object(f.cod, g.cod),
        [(LEFT_TAG + x, LEFT_TAG + y) for x, y in f.pairs]
        + [(RIGHT_TAG + x, RIGHT_TAG + y) for x, y in g.pairs],
    )


def inclusion(sub: FiniteSet, x: FiniteSet) -> PartialInjection:
    return PartialInjection(sub, x, ((lab, lab) for lab in sub))


def _check_parallel(f: PartialInjection, g: PartialInjection) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatchError(f"morphisms are not parallel: {f} and {g}")


def equalizer(f: PartialInjection, g: PartialInjection) -> tuple[FiniteSet, PartialInjection]:
    """Largest subset on which ``f`` and ``g`` agree, with its inclusion.

    Agreement counts both being undefined as well as both defined with equal
    values.
    """
    _check_parallel(f, g)
    fm, gm = f.mapping, g.mapping
    keep = FiniteSet(x for x in f.dom if fm.get(x) == gm.get(x))
    return keep, inclusion(keep, f.dom)


def leq(f: PartialInjection, g: PartialInjection) -> bool:
    _check_parallel(f, g)
    return set(f.pairs) <= set(g.pairs)


def sup(fs: Iterable[PartialInjection], dom=None, cod=None) -> PartialInjection:
    """Least upper bound of a compatible family: the union of the graphs.

    The empty family needs ``dom`` and ``cod``.  A family whose union is not
    a partial injection has no upper bound at all.
    """
    fs = list(fs)
    if not fs:
        if dom is None or cod is None:
            raise ValidationError("sup of an empty family needs dom and cod")
        return empty(dom, cod)
    for f in fs[1:]:
        _check_parallel(fs[0], f)
    union = {p for f in fs for p in f.pairs}
    try:
        return PartialInjection(fs[0].dom, fs[0].cod, union)
    except ValidationError as exc:
        raise DirectednessError(f"family has no upper bound: {exc}") from None


def all_partial_injections(x: FiniteSet, y: FiniteSet):
    """Every partial injection ``x -> y``, in a fixed deterministic order."""
    for r in range(min(len(x), len(y)) + 1):
        for xs in combinations(x.labels, r):
            for ys in permutations(y.labels, r):
                yield PartialInjection(x, y, zip(xs, ys))


# Chains and their colimits


@dataclass(frozen=True)
class ChainDiagram:
    stages: tuple[FiniteSet, ...]
    links: tuple[PartialInjection, ...]

    def __init__(self, stages, links=()):
        stages = tuple(_as_set(s) for s in stages)
        links = tuple(links)
        if not stages:
            raise ValidationError("a chain needs at least one stage")
        if len(links) != len(stages) - 1:
            raise ValidationError(f"{len(stages)} stages need {len(stages) - 1} links, got {len(links)}")
        for i, link in enumerate(links):
            if link.dom != stages[i] or link.cod != stages[i + 1]:
                raise DomainMismatchError(f"link {i} does not run from stage {i} to stage {i + 1}")
        object.__setattr__(self, "stages", stages)
        object.__setattr__(self, "links", links)

    def __len__(self) -> int:
        return len(self.stages)

    def transition(self, i: int, j: int) -> PartialInjection:
        """The composite link ``D(i <= j)``."""
        if not 0 <= i <= j < len(self.stages):
            raise IndexError(f"bad stage pair ({i}, {j})")
        out = identity(self.stages[i])
        for k in range(i, j):
            out = compose(self.links[k], out)
        return out

    def to_json(self) -> dict:
        return {
            "stages": [list(s.labels) for s in self.stages],
            "links": [link.to_json() for link in self.links],
        }

    @classmethod
    def from_json(cls, data) -> "ChainDiagram":
        if not isinstance(data, dict) or "stages" not in data:
            raise ValidationError("expected an object with stages and links", code="malformed")
        stages = [FiniteSet(s) for s in data["stages"]]
        links = [PartialInjection.from_json(link) for link in data.get("links", [])]
        return cls(stages, links)


def class_label(stage: int, x: str) -> str:
    return f"{stage}:{x}"


def _survivors(d: ChainDiagram, i: int) -> list[str]:
    # elements of stage i lying in Dom(D(i<=j)) for every j >= i
    through = d.transition(i, len(d) - 1).mapping
    return [x for x in d.stages[i] if x in through]


def _earliest(d: ChainDiagram, i: int, x: str) -> tuple[int, str]:
    while i > 0 and x in d.links[i - 1].inverse_mapping:
        x = d.links[i - 1].inverse_mapping[x]
        i -= 1
    return i, x


def chain_colimit(d: ChainDiagram) -> tuple[FiniteSet, tuple[PartialInjection, ...]]:
    """Colimit object and cocone of a finite chain.

    The object consists of the never-dropped elements of all stages modulo
    ``x ~ D(i<=j)(x)``.  Each class is labelled ``"stage:element"`` after its
    earliest representative.
    """
    classes: list[tuple[int, int, str]] = []
    assigned: list[dict[str, str]] = []
    for i, stage in enumerate(d.stages):
        here = {}
        for x in _survivors(d, i):
            i0, x0 = _earliest(d, i, x)
            lab = class_label(i0, x0)
            if i0 == i:
                classes.append((i0, d.stages[i0].index(x0), lab))
            here[x] = lab
        assigned.append(here)
    colim = FiniteSet(lab for _, _, lab in sorted(classes))
    cocone = tuple(
        PartialInjection(stage, colim, assigned[i].items()) for i, stage in enumerate(d.stages)
    )
    for i in range(len(d)):
        for j in range(i, len(d)):
            if compose(cocone[j], d.transition(i, j)) != cocone[i]:
                raise ConsistencyError(f"cocone condition fails between stages {i} and {j}")
    return colim, cocone


def is_cocone(d: ChainDiagram, cocone: Sequence[PartialInjection]) -> bool:
    if len(cocone) != len(d):
        return False
    if any(c.dom != s for c, s in zip(cocone, d.stages)):
        return False
    if len({c.cod for c in cocone}) > 1:
        return False
    return all(
        compose(cocone[i + 1], d.links[i]) == cocone[i] for i in range(len(d) - 1)
    )


def mediate(
    d: ChainDiagram,
    colimit: tuple[FiniteSet, Sequence[PartialInjection]],
    test: Sequence[PartialInjection],
) -> PartialInjection:
    """The unique ``m`` out of the colimit with ``m ∘ c_i = d_i`` for all i."""
    obj, cocone = colimit
    if not is_cocone(d, test):
        raise ConsistencyError("the test family is not a cocone on the chain")
    target = test[0].cod
    pairs = {}
    for c, t in zip(cocone, test):
        cm = c.mapping
        for x, y in t.pairs:
            if x not in cm:
                raise ConsistencyError(f"{x!r} is defined in a test leg but dropped by the chain")
            if pairs.setdefault(cm[x], y) != y:
                raise ConsistencyError(f"class {cm[x]!r} is sent to two elements")
    return PartialInjection(obj, target, pairs.items())


def factor_through_stage(
    d: ChainDiagram, cocone: Sequence[PartialInjection], f: PartialInjection
) -> tuple[int, PartialInjection]:
    """Earliest stage ``j`` and ``g`` with ``Dom(g) = Dom(f)`` and ``c_j ∘ g = f``."""
    if len(cocone) != len(d):
        raise ConsistencyError("cocone length does not match the chain")
    colim = cocone[0].cod
    if f.cod != colim:
        raise DomainMismatchError(f"{f} does not target the colimit object {colim}")
    j = 0
    for y in f.image:
        first = next((k for k, c in enumerate(cocone) if y in c.inverse_mapping), None)
        if first is None:
            raise ConsistencyError(f"{y!r} lies in the image of no cocone leg")
        j = max(j, first)
    back = cocone[j].inverse_mapping
    if any(y not in back for y in f.image):
        raise ConsistencyError("cocone images do not grow along the chain")
    g = PartialInjection(f.dom, d.stages[j], ((x, back[y]) for x, y in f.pairs))
    if compose(cocone[j], g) != f:
        raise ConsistencyError("factorisation does not reproduce f")
    return j, g
