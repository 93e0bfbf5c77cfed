"""Finite categories given by explicit composition tables.

Composition entries are keyed ``(g, f)`` and mean ``g∘f`` ("g after f"),
so ``(g, f)`` is defined exactly when ``cod(f) == dom(g)``.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import product
from typing import Any, NamedTuple

from .report import Report

__all__ = [
    "CategoryError",
    "FiniteCategory",
    "Morphism",
    "NoTerminalObject",
    "Point",
    "PosetError",
    "UnknownMorphism",
    "category_report",
    "check_finite_completeness",
    "from_poset",
    "order_closure",
    "points",
    "poset_arrow",
    "terminal_object",
    "validate_category",
]


class CategoryError(ValueError):
    """Raised when a category description violates a category law."""

    def __init__(self, report: Report):
        self.report = report
        first = report.first
        super().__init__(f"{first.law}: {first.message}" if first else "invalid category")


class PosetError(ValueError):
    def __init__(self, law: str, witness: tuple[str, ...]):
        self.law = law
        self.witness = witness
        super().__init__(f"{law} fails for {witness}")


class NoTerminalObject(LookupError):
    pass


class UnknownMorphism(LookupError):
    pass


class Morphism(NamedTuple):
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, order=True)
class Point:
    """A morphism out of the (canonical) terminal object."""

    carrier: str
    target: str


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: Mapping[str, Morphism]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    # memo for derived data (sieve lattices etc.); values never change after validation
    _cache: dict[Any, Any] = field(default_factory=dict, repr=False, compare=False)

    @property
    def arrows(self) -> tuple[str, ...]:
        return tuple(sorted(self.morphisms))

    def dom(self, f: str) -> str:
        return self._get(f).dom

    def cod(self, f: str) -> str:
        return self._get(f).cod

    def _get(self, f: str) -> Morphism:
        try:
            return self.morphisms[f]
        except KeyError:
            raise UnknownMorphism(f) from None

    def compose(self, g: str, f: str) -> str:
        """Return ``g∘f``."""
        try:
            return self.composition[g, f]
        except KeyError:
            raise ValueError(f"{g} and {f} are not composable") from None

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        key = ("hom", x, y)
        if key not in self._cache:
            self._cache[key] = tuple(
                m for m in self.arrows if self.morphisms[m].dom == x and self.morphisms[m].cod == y
            )
        return self._cache[key]

    def arrows_into(self, obj: str) -> tuple[str, ...]:
        key = ("into", obj)
        if key not in self._cache:
            if obj not in self.objects:
                raise KeyError(obj)
            self._cache[key] = tuple(m for m in self.arrows if self.morphisms[m].cod == obj)
        return self._cache[key]

    def to_dict(self) -> dict[str, Any]:
        """Canonical JSON description; composites with an identity are omitted."""
        ids = set(self.identities.values())
        comp = [
            [g, f, h]
            for (g, f), h in sorted(self.composition.items())
            if g not in ids and f not in ids
        ]
        return {
            "objects": list(self.objects),
            "morphisms": [
                {"name": m.name, "dom": m.dom, "cod": m.cod}
                for m in (self.morphisms[n] for n in self.arrows)
            ],
            "identities": {o: self.identities[o] for o in self.objects},
            "composition": comp,
        }


def category_report(raw: Mapping[str, Any]) -> tuple[FiniteCategory | None, Report]:
    """Check a raw description; return the category (if valid) and the report."""
    rep = Report("category")
    objs_list = [str(o) for o in raw.get("objects", [])]
    mor_list = list(raw.get("morphisms", []))
    identities = {str(k): str(v) for k, v in dict(raw.get("identities", {})).items()}
    comp_list = [tuple(str(x) for x in entry) for entry in raw.get("composition", [])]

    objects = set(objs_list)
    for o in sorted(objects):
        if objs_list.count(o) > 1:
            rep.add("duplicate-name", f"object {o} declared twice", o)

    morphisms: dict[str, Morphism] = {}
    for rec in mor_list:
        m = Morphism(str(rec["name"]), str(rec["dom"]), str(rec["cod"]))
        if m.name in morphisms:
            rep.add("duplicate-name", f"morphism {m.name} declared twice", witnesses={"morphism": m.name})
            continue
        morphisms[m.name] = m
        for end in (m.dom, m.cod):
            if end not in objects:
                rep.add("dangling-reference", f"morphism {m.name} refers to undeclared object {end}",
                        morphism=m.name, object=end)

    for o in sorted(identities):
        i = identities[o]
        if o not in objects:
            rep.add("dangling-reference", f"identity declared for undeclared object {o}", o)
        elif i not in morphisms:
            rep.add("dangling-reference", f"identity {i} of {o} is not a declared morphism", o, morphism=i)
        elif morphisms[i].dom != o or morphisms[i].cod != o:
            rep.add("identity-typing", f"identity {i} of {o} is not an endomorphism of {o}", o, morphism=i)
    for o in sorted(objects - set(identities)):
        rep.add("missing-identity", f"object {o} has no identity", o)

    composition: dict[tuple[str, str], str] = {}
    for entry in comp_list:
        if len(entry) != 3:
            rep.add("malformed-entry", f"composition entry {list(entry)} must be [g, f, g∘f]")
            continue
        g, f, h = entry
        missing = [x for x in (g, f, h) if x not in morphisms]
        if missing:
            rep.add("dangling-reference", f"composition entry {[g, f, h]} names undeclared morphisms",
                    entry=[g, f, h], unknown=missing)
            continue
        if morphisms[f].cod != morphisms[g].dom:
            rep.add("non-composable-entry", f"{g}∘{f} given although cod({f}) ≠ dom({g})", entry=[g, f, h])
            continue
        if morphisms[h].dom != morphisms[f].dom or morphisms[h].cod != morphisms[g].cod:
            rep.add("composite-typing", f"{g}∘{f} = {h} has the wrong domain or codomain", entry=[g, f, h])
            continue
        if (g, f) in composition and composition[g, f] != h:
            rep.add("conflicting-entry", f"{g}∘{f} given as both {composition[g, f]} and {h}",
                    entry=[g, f, h], previous=composition[g, f])
            continue
        composition[g, f] = h

    if not rep.ok:
        return None, rep

    # infer identity composites that were left out
    for o, i in identities.items():
        for m in morphisms.values():
            if m.cod == o:
                composition.setdefault((i, m.name), m.name)
            if m.dom == o:
                composition.setdefault((m.name, i), m.name)

    names = sorted(morphisms)
    for g, f in product(names, names):
        if morphisms[f].cod == morphisms[g].dom and (g, f) not in composition:
            rep.add("missing-composite", f"no entry for {g}∘{f}", entry=[g, f])
    if not rep.ok:
        return None, rep

    for f in names:
        m = morphisms[f]
        left = composition[identities[m.cod], f]
        right = composition[f, identities[m.dom]]
        if left != f:
            rep.add("identity-law", f"{identities[m.cod]}∘{f} = {left}, expected {f}",
                    entry=[identities[m.cod], f, left])
        if right != f:
            rep.add("identity-law", f"{f}∘{identities[m.dom]} = {right}, expected {f}",
                    entry=[f, identities[m.dom], right])

    for h, g, f in product(names, names, names):
        if (g, f) not in composition or (h, g) not in composition:
            continue
        lhs = composition[h, composition[g, f]]
        rhs = composition[composition[h, g], f]
        if lhs != rhs:
            rep.add("associativity", f"{h}∘({g}∘{f}) = {lhs} but ({h}∘{g})∘{f} = {rhs}",
                    triple=[h, g, f], left=lhs, right=rhs)
    if not rep.ok:
        return None, rep

    cat = FiniteCategory(
        objects=tuple(sorted(objects)),
        morphisms=morphisms,
        identities=identities,
        composition=composition,
    )
    return cat, rep


def validate_category(raw: Mapping[str, Any]) -> FiniteCategory:
    """Build a category from its JSON-style description or raise ``CategoryError``."""
    cat, rep = category_report(raw)
    if cat is None:
        raise CategoryError(rep)
    return cat


def terminal_object(cat: FiniteCategory) -> str | None:
    """The least object into which every object has exactly one morphism, if any."""
    if "terminal" not in cat._cache:
        cat._cache["terminal"] = next(
            (t for t in cat.objects if all(len(cat.hom(x, t)) == 1 for x in cat.objects)),
            None,
        )
    return cat._cache["terminal"]


def points(cat: FiniteCategory, obj: str) -> list[Point]:
    t = terminal_object(cat)
    if t is None:
        raise NoTerminalObject("category has no terminal object")
    return [Point(m, obj) for m in cat.hom(t, obj)]


def poset_arrow(x: str, y: str) -> str:
    """Name of the unique morphism ``x -> y`` in a poset category."""
    return f"{x}->{y}"


def order_closure(elements: Iterable[Any], covers: Iterable[tuple[Any, Any]]) -> set[tuple[str, str]]:
    """Reflexive-transitive closure of a covering relation."""
    elems = [str(e) for e in elements]
    rel = {(x, x) for x in elems} | {(str(a), str(b)) for a, b in covers}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def from_poset(elements: Iterable[Any], order: Iterable[tuple[Any, Any]]) -> FiniteCategory:
    """The category with one arrow ``x -> y`` exactly when ``x <= y``.

    ``order`` must already be a partial order (reflexive, antisymmetric,
    transitive); use :func:`order_closure` to build one from covers.
    """
    elems = sorted({str(e) for e in elements})
    rel = {(str(a), str(b)) for a, b in order}
    for a, b in sorted(rel):
        if a not in elems or b not in elems:
            raise PosetError("unknown-element", (a, b))
    for x in elems:
        if (x, x) not in rel:
            raise PosetError("reflexivity", (x, x))
    for a, b in sorted(rel):
        if a != b and (b, a) in rel:
            raise PosetError("antisymmetry", (a, b))
    for (a, b), (c, d) in product(sorted(rel), sorted(rel)):
        if b == c and (a, d) not in rel:
            raise PosetError("transitivity", (a, b, d))

    morphisms = {poset_arrow(a, b): Morphism(poset_arrow(a, b), a, b) for a, b in rel}
    composition = {
        (poset_arrow(b, c), poset_arrow(a, b)): poset_arrow(a, c)
        for (a, b), (b2, c) in product(rel, rel)
        if b == b2
    }
    return FiniteCategory(
        objects=tuple(elems),
        morphisms=morphisms,
        identities={x: poset_arrow(x, x) for x in elems},
        composition=composition,
    )


def _has_product(cat: FiniteCategory, x: str, y: str) -> bool:
    for p in cat.objects:
        for p1, p2 in product(cat.hom(p, x), cat.hom(p, y)):
            if all(
                sum(
                    1
                    for u in cat.hom(z, p)
                    if cat.compose(p1, u) == z1 and cat.compose(p2, u) == z2
                )
                == 1
                for z in cat.objects
                for z1, z2 in product(cat.hom(z, x), cat.hom(z, y))
            ):
                return True
    return False


def _has_equalizer(cat: FiniteCategory, f: str, g: str) -> bool:
    x = cat.dom(f)
    for e_obj in cat.objects:
        for e in cat.hom(e_obj, x):
            if cat.compose(f, e) != cat.compose(g, e):
                continue
            if all(
                sum(1 for u in cat.hom(z, e_obj) if cat.compose(e, u) == zz) == 1
                for z in cat.objects
                for zz in cat.hom(z, x)
                if cat.compose(f, zz) == cat.compose(g, zz)
            ):
                return True
    return False


def check_finite_completeness(cat: FiniteCategory) -> Report:
    """Brute-force search for a terminal object, binary products and equalizers."""
    rep = Report("finite-completeness")
    if terminal_object(cat) is None:
        rep.add("terminal", "no terminal object")
    objs = cat.objects
    for i, x in enumerate(objs):
        for y in objs[i:]:
            if not _has_product(cat, x, y):
                rep.add("product", f"no product of {x} and {y}", witnesses={"diagram": [x, y]})
    for x in objs:
        for y in objs:
            arrows = cat.hom(x, y)
            for i, f in enumerate(arrows):
                for g in arrows[i + 1:]:
                    if not _has_equalizer(cat, f, g):
                        rep.add("equalizer", f"no equalizer of {f}, {g}: {x} -> {y}",
                                witnesses={"diagram": [f, g]})
    return rep
