"""Finite frames (complete Heyting algebras) and their join-covering topology.

In the poset category of a frame a sieve on ``c`` is a down-closed subset
of ``↓c``, and it covers ``c`` when its join is ``c``. The empty sieve
joins to the bottom element, so it covers the bottom object.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .filterlib import DEFAULT_GUARD, enumerate_object_filters, least_member
from .fincat import FiniteCategory, Point, from_poset, poset_arrow
from .report import Report
from .sieve import Sieve, SieveAssignment, enumerate_sieves
from .topology import GrothendieckTopology, validate_topology

__all__ = [
    "Frame",
    "FrameError",
    "NotALattice",
    "NotDistributive",
    "base_covers",
    "canonical_topology",
    "compare_convergence_notions",
    "down_set_sieves",
    "frame_cover_converges",
    "frame_from_poset",
    "sieve_covers",
    "sieve_elements",
]


class FrameError(ValueError):
    def __init__(self, message: str, witness: tuple[str, ...]):
        self.witness = witness
        super().__init__(f"{message}: {witness}")


class NotALattice(FrameError):
    pass


class NotDistributive(FrameError):
    pass


@dataclass(frozen=True)
class Frame:
    elements: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    join: dict[tuple[str, str], str]
    meet: dict[tuple[str, str], str]
    implies: dict[tuple[str, str], str]
    top: str
    bottom: str

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def join_all(self, xs: Iterable[str]) -> str:
        out = self.bottom
        for x in xs:
            out = self.join[out, x]
        return out

    def down(self, c: str) -> list[str]:
        return [x for x in self.elements if self.le(x, c)]

    @cached_property
    def category(self) -> FiniteCategory:
        return from_poset(self.elements, self.leq)


def _bound(elems: list[str], leq: set, a: str, b: str, upper: bool) -> str | None:
    if upper:
        cands = [x for x in elems if (a, x) in leq and (b, x) in leq]
        best = [x for x in cands if all((x, y) in leq for y in cands)]
    else:
        cands = [x for x in elems if (x, a) in leq and (x, b) in leq]
        best = [x for x in cands if all((y, x) in leq for y in cands)]
    return best[0] if best else None


def frame_from_poset(elements: Iterable, order: Iterable[tuple]) -> Frame:
    """Compute join, meet and implication tables of a finite distributive lattice."""
    cat = from_poset(elements, order)  # validates the partial order
    elems = list(cat.objects)
    leq = {(cat.dom(m), cat.cod(m)) for m in cat.morphisms}
    join, meet = {}, {}
    for a, b in product(elems, elems):
        j = _bound(elems, leq, a, b, upper=True)
        m = _bound(elems, leq, a, b, upper=False)
        if j is None:
            raise NotALattice("not a lattice, no least upper bound", (a, b))
        if m is None:
            raise NotALattice("not a lattice, no greatest lower bound", (a, b))
        join[a, b], meet[a, b] = j, m
    for a, b, c in product(elems, elems, elems):
        if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
            raise NotDistributive("not distributive, a∧(b∨c) ≠ (a∧b)∨(a∧c) at (a, b, c)", (a, b, c))
    top = next(x for x in elems if all((y, x) in leq for y in elems))
    bottom = next(x for x in elems if all((x, y) in leq for y in elems))
    implies = {}
    for a, b in product(elems, elems):
        r = bottom
        for x in elems:
            if (meet[x, a], b) in leq:
                r = join[r, x]
        implies[a, b] = r
    for x, a, b in product(elems, elems, elems):
        assert ((x, implies[a, b]) in leq) == ((meet[x, a], b) in leq), (x, a, b)
    frame = Frame(tuple(elems), frozenset(leq), join, meet, implies, top, bottom)
    frame.__dict__["category"] = cat
    return frame


def sieve_elements(s: Sieve, frame: Frame) -> list[str]:
    """Domains of the arrows in a sieve of the frame's poset category."""
    cat = frame.category
    return sorted(cat.dom(m) for m in s.members)


def base_covers(frame: Frame, c: str, family: Iterable[str]) -> bool:
    fam = list(family)
    for a in fam:
        if not frame.le(a, c):
            raise ValueError(f"{a} is not below {c}")
    return frame.join_all(fam) == c


def sieve_covers(frame: Frame, c: str, s: Sieve) -> bool:
    return frame.join_all(sieve_elements(s, frame)) == c


def canonical_topology(frame: Frame) -> GrothendieckTopology:
    cat = frame.category
    j = GrothendieckTopology({
        c: frozenset(s for s in enumerate_sieves(cat, c) if sieve_covers(frame, c, s))
        for c in cat.objects
    })
    rep = validate_topology(cat, j, "full")
    assert rep.ok, rep.to_text()
    return j


def frame_cover_converges(frame: Frame, f: SieveAssignment, c: str) -> bool:
    """Every sieve of ``f(c)`` joins to ``c``."""
    return all(sieve_covers(frame, c, s) for s in f.at(c))


def down_set_sieves(frame: Frame, c: str) -> set[Sieve]:
    """Down-closed subsets of ``↓c``, converted to sieves on ``c``."""
    below = frame.down(c)
    out = set()
    for bits in product((False, True), repeat=len(below)):
        chosen = {x for x, keep in zip(below, bits) if keep}
        if all(y in chosen for x in chosen for y in below if frame.le(y, x)):
            out.add(Sieve(c, frozenset(poset_arrow(x, c) for x in chosen)))
    return out


def compare_convergence_notions(frame: Frame, guard: int = DEFAULT_GUARD) -> Report:
    """Join-cover convergence at the top versus point convergence to ``id_top``.

    The two notions are not equivalent; the report records, per filter at
    the top element, whether they agree. It never fails.
    """
    from .convergence import converges

    cat = frame.category
    j = canonical_topology(frame)
    top = frame.top
    p = Point(poset_arrow(top, top), top)
    rows = []
    for fam in enumerate_object_filters(cat, top, guard):
        f = SieveAssignment.local(cat, top, fam)
        rows.append({
            "filter": least_member(fam),
            "cover_converges": frame_cover_converges(frame, f, top),
            "point_converges": converges(cat, j, f, p),
        })
    rep = Report("frame-convergence-comparison")
    agree = sum(1 for r in rows if r["cover_converges"] == r["point_converges"])
    rep.data.update({"rows": rows, "agree": agree, "disagree": len(rows) - agree})
    rep.notes.append(f"{agree} of {len(rows)} filters at {top} get the same answer from both notions")
    return rep
