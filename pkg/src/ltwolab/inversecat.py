"""Finite inverse categories given by tables, and their embedding into PInj.

A presentation lists objects, morphisms with source and target, a
composition table keyed by ``(g, f)`` meaning ``g ∘ f``, a dagger table
and the identity of each object.  :func:`validate` checks the axioms
exhaustively; :func:`wagner_preston` sends each object to the set of
morphisms leaving it and each morphism to precomposition with its dagger.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import pinj
from .errors import PreconditionError, StructuralError
from .pinj import FiniteSet, PartialInjection


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class InverseCategoryPresentation:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    composition: dict = field(hash=False)
    dagger: dict = field(hash=False)
    identities: dict = field(hash=False)

    def __post_init__(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise StructuralError("duplicate object names")
        ids = [m.id for m in self.morphisms]
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate morphism ids")
        known = set(ids)
        for m in self.morphisms:
            if m.src not in objs or m.dst not in objs:
                raise StructuralError(f"morphism {m.id!r} has a dangling endpoint")
        for (g, f), gf in self.composition.items():
            for name in (g, f, gf):
                if name not in known:
                    raise StructuralError(f"composition table mentions unknown morphism {name!r}")
        for f, fd in self.dagger.items():
            if f not in known or fd not in known:
                raise StructuralError(f"dagger table entry {f!r} -> {fd!r} is dangling")
        for m in ids:
            if m not in self.dagger:
                raise StructuralError(f"no dagger given for {m!r}")
        for obj in self.objects:
            ident = self.identities.get(obj)
            if ident not in known:
                raise StructuralError(f"object {obj!r} has no identity")
        for f, g in product(self.morphisms, repeat=2):
            if f.dst == g.src and (g.id, f.id) not in self.composition:
                raise StructuralError(f"composite {g.id} ∘ {f.id} missing from the table")

    @property
    def by_id(self) -> dict[str, Morphism]:
        return {m.id: m for m in self.morphisms}

    def comp(self, g: str, f: str) -> str:
        return self.composition[(g, f)]

    def composable(self):
        """All pairs ``(g, f)`` with ``dst(f) = src(g)``."""
        for f, g in product(self.morphisms, repeat=2):
            if f.dst == g.src:
                yield g.id, f.id

    def out_of(self, obj: str) -> list[str]:
        return [m.id for m in self.morphisms if m.src == obj]

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": m.id, "src": m.src, "dst": m.dst} for m in self.morphisms],
            "compose": [[g, f, gf] for (g, f), gf in self.composition.items()],
            "dagger": [[f, fd] for f, fd in self.dagger.items()],
            "identities": dict(self.identities),
        }

    @classmethod
    def from_json(cls, data) -> "InverseCategoryPresentation":
        try:
            return cls(
                objects=tuple(data["objects"]),
                morphisms=tuple(Morphism(m["id"], m["src"], m["dst"]) for m in data["morphisms"]),
                composition={(g, f): gf for g, f, gf in data["compose"]},
                dagger={f: fd for f, fd in data["dagger"]},
                identities=dict(data["identities"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed presentation: {exc}") from None


def _law(passed: bool, witness=None) -> dict:
    return {"passed": passed, "witness": None if passed else witness}


def validate(c: InverseCategoryPresentation) -> dict:
    """Check every inverse-category axiom; report the first witness of each failure."""
    mor = c.by_id
    comp, dag = c.comp, c.dagger
    laws = {}

    def first(cases):
        for case in cases:
            return case
        return None

    bad = first(
        (g, f)
        for g, f in c.composable()
        if (mor[c.comp(g, f)].src, mor[c.comp(g, f)].dst) != (mor[f].src, mor[g].dst)
    )
    laws["composite_typing"] = _law(bad is None, bad)
    typed = bad is None

    bad = first(
        m.id
        for m in c.morphisms
        if comp(m.id, c.identities[m.src]) != m.id or comp(c.identities[m.dst], m.id) != m.id
    )
    laws["identity"] = _law(bad is None, bad)

    bad = None
    if typed:
        bad = first(
            (h, g, f)
            for g, f in c.composable()
            for h in (x.id for x in c.morphisms if x.src == mor[g].dst)
            if comp(h, comp(g, f)) != comp(comp(h, g), f)
        )
    laws["associativity"] = _law(typed and bad is None, bad or "composite typing fails")

    bad = first(m.id for m in c.morphisms if (mor[dag[m.id]].src, mor[dag[m.id]].dst) != (m.dst, m.src))
    laws["dagger_typing"] = _law(bad is None, bad)
    dag_typed = bad is None

    bad = first(m.id for m in c.morphisms if dag[dag[m.id]] != m.id)
    laws["dagger_involution"] = _law(bad is None, bad)

    bad = None
    if dag_typed:
        bad = first((g, f) for g, f in c.composable() if dag[comp(g, f)] != comp(dag[f], dag[g]))
    laws["dagger_contravariance"] = _law(dag_typed and bad is None, bad or "dagger typing fails")

    bad = None
    if dag_typed:
        bad = first(m.id for m in c.morphisms if comp(m.id, comp(dag[m.id], m.id)) != m.id)
    laws["regularity"] = _law(dag_typed and bad is None, bad or "dagger typing fails")

    bad = None
    for obj in c.objects:
        endo = [m.id for m in c.morphisms if m.src == obj and m.dst == obj]
        idem = [e for e in endo if comp(e, e) == e]
        bad = first((p, q) for p, q in product(idem, repeat=2) if comp(p, q) != comp(q, p))
        if bad is not None:
            break
    laws["idempotents_commute"] = _law(bad is None, bad)

    return {"valid": all(v["passed"] for v in laws.values()), "laws": laws}


@dataclass(frozen=True)
class Embedding:
    objects: dict
    morphisms: dict

    def to_json(self) -> dict:
        return {
            "objects": {k: list(v.labels) for k, v in self.objects.items()},
            "morphisms": {k: v.to_json() for k, v in self.morphisms.items()},
        }


def wagner_preston(c: InverseCategoryPresentation) -> Embedding:
    """Faithful dagger functor into PInj acting on out-hom-sets.

    ``F(X)`` is the set of morphisms leaving ``X``; ``F(f)`` is defined on
    those ``g`` with ``g = g f† f`` and sends them to ``g f†``.
    """
    report = validate(c)
    if not report["valid"]:
        failed = [k for k, v in report["laws"].items() if not v["passed"]]
        raise PreconditionError(f"not an inverse category: {failed}", failed=failed)
    objs = {x: FiniteSet(c.out_of(x)) for x in c.objects}
    maps = {}
    for m in c.morphisms:
        fd = c.dagger[m.id]
        fdf = c.comp(fd, m.id)
        graph = [(g, c.comp(g, fd)) for g in c.out_of(m.src) if c.comp(g, fdf) == g]
        maps[m.id] = PartialInjection(objs[m.src], objs[m.dst], graph)
    return Embedding(objs, maps)


def check_embedding(c: InverseCategoryPresentation, F: Embedding) -> dict:
    """Functoriality, dagger preservation and faithfulness, each with a witness."""
    checks = {}
    bad = next(
        (x for x in c.objects if F.morphisms[c.identities[x]] != pinj.identity(F.objects[x])), None
    )
    checks["identities"] = _law(bad is None, bad)

    bad = None
    for g, f in c.composable():
        lhs, rhs = F.morphisms[c.comp(g, f)], pinj.compose(F.morphisms[g], F.morphisms[f])
        if lhs != rhs or lhs.domain_of_definition != rhs.domain_of_definition:
            bad = (g, f)
            break
    checks["functoriality"] = _law(bad is None, bad)

    bad = next(
        (m.id for m in c.morphisms if F.morphisms[c.dagger[m.id]] != pinj.dagger(F.morphisms[m.id])),
        None,
    )
    checks["dagger"] = _law(bad is None, bad)

    seen: dict = {}
    bad = None
    for m in c.morphisms:
        key = (m.src, m.dst, F.morphisms[m.id])
        if key in seen:
            bad = (seen[key], m.id)
            break
        seen[key] = m.id
    checks["faithful"] = _law(bad is None, bad)
    return {"passed": all(v["passed"] for v in checks.values()), "checks": checks}


def from_partial_injections(elements, names=None) -> InverseCategoryPresentation:
    """One-object presentation of a set of partial injections on a common set.

    The set must be closed under composition and dagger and contain the
    identity; ids are ``names[k]`` or ``"m{k}"``.
    """
    elements = list(elements)
    if names is None:
        names = [f"m{k}" for k in range(len(elements))]
    index = {e: n for e, n in zip(elements, names)}
    base = elements[0].dom
    ident = pinj.identity(base)
    if ident not in index:
        raise StructuralError("the family does not contain the identity")
    comp = {}
    for g, f in product(elements, repeat=2):
        gf = pinj.compose(g, f)
        if gf not in index:
            raise StructuralError("the family is not closed under composition")
        comp[(index[g], index[f])] = index[gf]
    dag = {}
    for f in elements:
        fd = pinj.dagger(f)
        if fd not in index:
            raise StructuralError("the family is not closed under dagger")
        dag[index[f]] = index[fd]
    return InverseCategoryPresentation(
        objects=("*",),
        morphisms=tuple(Morphism(n, "*", "*") for n in names),
        composition=comp,
        dagger=dag,
        identities={"*": index[ident]},
    )


def symmetric_inverse_monoid(n: int) -> InverseCategoryPresentation:
    """All partial injections of an ``n``-element set, as a one-object category."""
    base = FiniteSet.range(n)
    elements = list(pinj.all_partial_injections(base, base))
    return from_partial_injections(elements)


def generated_submonoid(generators, base: FiniteSet) -> list[PartialInjection]:
    """Closure of ``generators`` plus the identity under composition and dagger."""
    found = [pinj.identity(base)]
    seen = set(found)
    frontier = list(generators)
    while frontier:
        nxt = []
        for h in frontier:
            if h not in seen:
                seen.add(h)
                found.append(h)
                nxt.append(pinj.dagger(h))
                for k in list(found):
                    nxt.append(pinj.compose(h, k))
                    nxt.append(pinj.compose(k, h))
        frontier = nxt
    return found


def cyclic_group(n: int) -> InverseCategoryPresentation:
    """``Z/n`` with dagger the group inverse; ``"e"`` is the unit."""
    names = ["e"] + [f"s{k}" if n > 2 else "s" for k in range(1, n)]
    comp = {(names[a], names[b]): names[(a + b) % n] for a in range(n) for b in range(n)}
    dag = {names[a]: names[(-a) % n] for a in range(n)}
    return InverseCategoryPresentation(
        objects=("*",),
        morphisms=tuple(Morphism(x, "*", "*") for x in names),
        composition=comp,
        dagger=dag,
        identities={"*": "e"},
    )
