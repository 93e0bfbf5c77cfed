"""Grothendieck topologies on finite categories and the filters they induce."""
from __future__ import annotations

from itertools import combinations

from .fincat import FiniteCategory
from .filterlib import Filter, InvalidFamily, is_filter
from .report import Report
from .sieve import (
    Sieve,
    SieveAssignment,
    enumerate_sieves,
    is_sieve,
    maximal_sieve,
    pullback_sieve,
    sieve_key,
)

__all__ = [
    "GrothendieckTopology",
    "TopologyFilterError",
    "chaotic_topology",
    "covers",
    "topology_filter_report",
    "topology_to_filter",
    "trivial_topology",
    "validate_topology",
]


class GrothendieckTopology(SieveAssignment):
    pass


class TopologyFilterError(ValueError):
    """Dropping the empty sieve left two covers whose intersection is empty."""

    def __init__(self, obj: str, pair: tuple[Sieve, Sieve]):
        self.obj = obj
        self.pair = pair
        super().__init__(
            f"at {obj}: {sorted(pair[0].members)} ∩ {sorted(pair[1].members)} is empty"
        )


def trivial_topology(cat: FiniteCategory) -> GrothendieckTopology:
    return GrothendieckTopology({o: frozenset([maximal_sieve(cat, o)]) for o in cat.objects})


def chaotic_topology(cat: FiniteCategory) -> GrothendieckTopology:
    """Every sieve covers."""
    return GrothendieckTopology({o: frozenset(enumerate_sieves(cat, o)) for o in cat.objects})


def covers(j: SieveAssignment, obj: str, s: Sieve) -> bool:
    return s.codomain == obj and s in j.at(obj)


def validate_topology(cat: FiniteCategory, j: SieveAssignment, level: str = "full") -> Report:
    """Check maximality, upward closure, pairwise meets and stability; ``full`` adds transitivity."""
    if level not in ("basic", "full"):
        raise ValueError(f"unknown level {level!r}")
    rep = Report(f"topology[{level}]")
    for o in j.objects:
        if o not in cat.objects:
            rep.add("unknown-object", f"assignment at undeclared object {o}", o)
    for o in cat.objects:
        if o not in j.assignment:
            rep.add("missing-object", f"no covering sieves given at {o}", o)
        for s in j.sorted_at(o):
            if s.codomain != o or not is_sieve(cat, o, s.members):
                rep.add("not-a-sieve", f"{sorted(s.members)} is not a sieve on {o}", o, sieve=s)
    if not rep.ok:
        return rep

    for o in cat.objects:
        top = maximal_sieve(cat, o)
        if top not in j.at(o):
            rep.add("maximality", "maximal sieve does not cover", o, sieve=top)
        lattice = enumerate_sieves(cat, o)
        here = j.sorted_at(o)
        for s in here:
            for r in lattice:
                if s.members <= r.members and r not in j.at(o):
                    rep.add("upward-closure", "a larger sieve than a cover does not cover", o, cover=s, larger=r)
        for s, t in combinations(here, 2):
            m = Sieve(o, s.members & t.members)
            if m not in j.at(o):
                rep.add("intersection", "intersection of two covers does not cover", o, left=s, right=t)
        for s in here:
            for h in cat.arrows_into(o):
                back = pullback_sieve(cat, h, s)
                if back not in j.at(cat.dom(h)):
                    rep.add("stability", f"pullback along {h} does not cover {cat.dom(h)}", o,
                            cover=s, morphism=h, pullback=back)

    if level == "full":
        for o in cat.objects:
            for r in enumerate_sieves(cat, o):
                if r in j.at(o):
                    continue
                for s in j.sorted_at(o):
                    if all(pullback_sieve(cat, h, r) in j.at(cat.dom(h)) for h in sorted(s.members)):
                        rep.add("transitivity", "sieve is locally covering along a cover but does not cover",
                                o, cover=s, sieve=r)
                        break
    return rep


def topology_filter_report(cat: FiniteCategory, j: SieveAssignment) -> tuple[Filter | None, Report]:
    """Remove the empty sieve from every ``J(C)``; report where that was needed."""
    basic = validate_topology(cat, j, "basic")
    if not basic.ok:
        raise InvalidFamily(basic)
    rep = Report("topology-to-filter")
    out = {}
    for o in cat.objects:
        empty = Sieve(o, frozenset())
        fam = j.at(o) - {empty}
        if empty in j.at(o):
            rep.notes.append(f"empty sieve covers {o}; dropped from the induced filter")
        for s, t in combinations(sorted(fam, key=sieve_key), 2):
            if not (s.members & t.members):
                rep.add("F2", "two covers intersect in the empty sieve", o, left=s, right=t)
                break
        out[o] = fam
    if not rep.ok:
        return None, rep
    f = Filter(out)
    assert is_filter(cat, f).ok
    return f, rep


def topology_to_filter(cat: FiniteCategory, j: SieveAssignment) -> Filter:
    f, rep = topology_filter_report(cat, j)
    if f is None:
        v = rep.first
        raise TopologyFilterError(v.obj, (v.witnesses["left"], v.witnesses["right"]))
    return f
