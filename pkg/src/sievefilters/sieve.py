"""Sieves: right ideals of morphisms sharing a codomain, and their lattice."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .fincat import FiniteCategory, UnknownMorphism

__all__ = [
    "Sieve",
    "SieveAssignment",
    "enumerate_sieves",
    "generate_sieve",
    "is_sieve",
    "maximal_sieve",
    "pullback_sieve",
    "sieve_intersection",
    "sieve_key",
    "sieve_union",
    "up_set",
]


@dataclass(frozen=True)
class Sieve:
    codomain: str
    members: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, f: str) -> bool:
        return f in self.members

    def __le__(self, other: Sieve) -> bool:
        return self.codomain == other.codomain and self.members <= other.members

    def __lt__(self, other: Sieve) -> bool:
        return self <= other and self.members != other.members

    def meets(self, other: Sieve) -> bool:
        return not self.members.isdisjoint(other.members)

    def __repr__(self) -> str:
        return f"Sieve({self.codomain}: {{{', '.join(sorted(self.members))}}})"


def sieve_key(s: Sieve) -> tuple:
    """Canonical order: codomain, then cardinality, then sorted member names."""
    return (s.codomain, len(s.members), tuple(sorted(s.members)))


def _check_known(cat: FiniteCategory, mset: Iterable[str]) -> frozenset[str]:
    ms = frozenset(mset)
    for f in sorted(ms):
        if f not in cat.morphisms:
            raise UnknownMorphism(f)
    return ms


def is_sieve(cat: FiniteCategory, obj: str, mset: Iterable[str]) -> bool:
    ms = _check_known(cat, mset)
    for f in ms:
        if cat.cod(f) != obj:
            return False
        for g in cat.arrows_into(cat.dom(f)):
            if cat.compose(f, g) not in ms:
                return False
    return True


def generate_sieve(cat: FiniteCategory, obj: str, generators: Iterable[str]) -> Sieve:
    """Least sieve on ``obj`` containing ``generators``."""
    gens = _check_known(cat, generators)
    for f in sorted(gens):
        if cat.cod(f) != obj:
            raise ValueError(f"generator {f} does not have codomain {obj}")
    members = set(gens)
    frontier = list(gens)
    while frontier:
        f = frontier.pop()
        for g in cat.arrows_into(cat.dom(f)):
            h = cat.compose(f, g)
            if h not in members:
                members.add(h)
                frontier.append(h)
    return Sieve(obj, frozenset(members))


def maximal_sieve(cat: FiniteCategory, obj: str) -> Sieve:
    return Sieve(obj, frozenset(cat.arrows_into(obj)))


def pullback_sieve(cat: FiniteCategory, h: str, s: Sieve) -> Sieve:
    """``h*(S) = {g : cod g = dom h, h∘g ∈ S}``."""
    if cat.cod(h) != s.codomain:
        raise ValueError(f"cod({h}) = {cat.cod(h)} but the sieve lives on {s.codomain}")
    d = cat.dom(h)
    out = Sieve(d, frozenset(g for g in cat.arrows_into(d) if cat.compose(h, g) in s.members))
    assert is_sieve(cat, d, out.members)
    return out


def _common_codomain(family: list[Sieve]) -> str:
    cods = {s.codomain for s in family}
    if len(cods) > 1:
        raise ValueError(f"sieves on different objects: {sorted(cods)}")
    return cods.pop()


def sieve_union(family: Iterable[Sieve], obj: str | None = None) -> Sieve:
    """Setwise union; the empty family gives the empty sieve on ``obj``."""
    fam = list(family)
    if not fam:
        if obj is None:
            raise ValueError("empty union needs an explicit object")
        return Sieve(obj, frozenset())
    c = _common_codomain(fam)
    if obj is not None and obj != c:
        raise ValueError(f"sieves live on {c}, not {obj}")
    return Sieve(c, frozenset().union(*(s.members for s in fam)))


def sieve_intersection(
    family: Iterable[Sieve], obj: str | None = None, cat: FiniteCategory | None = None
) -> Sieve:
    """Setwise intersection; the empty family gives the maximal sieve on ``obj``."""
    fam = list(family)
    if not fam:
        if obj is None or cat is None:
            raise ValueError("empty intersection needs the category and object")
        return maximal_sieve(cat, obj)
    c = _common_codomain(fam)
    if obj is not None and obj != c:
        raise ValueError(f"sieves live on {c}, not {obj}")
    return Sieve(c, frozenset.intersection(*(s.members for s in fam)))


def enumerate_sieves(cat: FiniteCategory, obj: str) -> tuple[Sieve, ...]:
    """Every sieve on ``obj`` in canonical order.

    Each sieve is the union of the principal sieves of its members, so the
    lattice is the union-closure of the principal sieves (plus the empty one).
    """
    key = ("sieves", obj)
    if key not in cat._cache:
        principal = {generate_sieve(cat, obj, [f]).members for f in cat.arrows_into(obj)}
        found = {frozenset()}
        for p in sorted(principal, key=lambda m: (len(m), sorted(m))):
            found |= {m | p for m in found}
        cat._cache[key] = tuple(sorted((Sieve(obj, m) for m in found), key=sieve_key))
    return cat._cache[key]


@dataclass(frozen=True)
class SieveAssignment:
    """A map object -> set of sieves on that object.

    Base for topologies, filters, bases and subbases, which share this
    shape and differ only in the axioms they are checked against.
    """

    assignment: dict[str, frozenset[Sieve]]

    def __post_init__(self):
        norm = {str(k): frozenset(v) for k, v in dict(self.assignment).items()}
        object.__setattr__(self, "assignment", norm)

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.assignment.items())))

    def at(self, obj: str) -> frozenset[Sieve]:
        return self.assignment.get(obj, frozenset())

    @property
    def objects(self) -> tuple[str, ...]:
        return tuple(sorted(self.assignment))

    def sorted_at(self, obj: str) -> list[Sieve]:
        return sorted(self.at(obj), key=sieve_key)

    @classmethod
    def local(cls, cat: FiniteCategory, obj: str, sieves: Iterable[Sieve]):
        """Assignment equal to ``sieves`` at ``obj`` and ``{maximal}`` elsewhere."""
        out = {o: frozenset([maximal_sieve(cat, o)]) for o in cat.objects}
        out[obj] = frozenset(sieves)
        return cls(out)

    def to_json(self) -> dict[str, list[list[str]]]:
        return {o: [sorted(s.members) for s in self.sorted_at(o)] for o in self.objects}


def up_set(cat: FiniteCategory, s: Sieve) -> frozenset[Sieve]:
    """All sieves on ``s.codomain`` containing ``s``."""
    return frozenset(r for r in enumerate_sieves(cat, s.codomain) if s.members <= r.members)
