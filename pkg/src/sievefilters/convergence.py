"""Neighborhoods of points, convergence, closure and cluster points.

A point is a morphism out of the canonical terminal object. A covering
sieve ``V`` is a G-neighborhood of ``p`` when ``p`` factors through some
member of ``V``; since sieves are right ideals this is the same as
``p ∈ V``, and both routes are computed and compared.
"""
from __future__ import annotations

from dataclasses import dataclass

from .filterlib import (
    DEFAULT_GUARD,
    Filter,
    FilterBase,
    InvalidFamily,
    enumerate_object_filters,
    is_base,
    least_member,
    object_filter_violation,
)
from .fincat import FiniteCategory, Point, points, terminal_object
from .report import Report
from .sieve import Sieve, SieveAssignment, enumerate_sieves, sieve_key

__all__ = [
    "InternalConsistencyError",
    "NeighborhoodSystem",
    "audit_neighborhood_filters",
    "audit_theorem_closure",
    "audit_theorem_cluster",
    "closure",
    "cluster_base",
    "converges",
    "cover_neighborhoods",
    "g_neighborhood_by_factorization",
    "g_neighborhood_by_membership",
    "g_neighborhoods",
    "g_neighborhoods_of_sieve",
    "is_cluster_point",
    "is_g_neighborhood",
    "neighborhood_filter_check",
]


class InternalConsistencyError(AssertionError):
    """Two independent evaluations of the same notion disagreed."""


@dataclass(frozen=True)
class NeighborhoodSystem:
    point: Point
    object: str
    members: frozenset[Sieve]

    def sorted(self) -> list[Sieve]:
        return sorted(self.members, key=sieve_key)


def _check_point(p: Point, v: Sieve) -> None:
    if v.codomain != p.target:
        raise ValueError(f"sieve lives on {v.codomain}, point {p.carrier} on {p.target}")


def g_neighborhood_by_factorization(cat: FiniteCategory, p: Point, v: Sieve) -> bool:
    """Search for ``φ ∈ V`` and a point ``q`` of ``dom φ`` with ``φ∘q = p``."""
    _check_point(p, v)
    return any(
        cat.compose(phi, q.carrier) == p.carrier
        for phi in sorted(v.members)
        for q in points(cat, cat.dom(phi))
    )


def g_neighborhood_by_membership(p: Point, v: Sieve) -> bool:
    _check_point(p, v)
    return p.carrier in v.members


def is_g_neighborhood(cat: FiniteCategory, j: SieveAssignment, p: Point, v: Sieve) -> bool:
    _check_point(p, v)
    if terminal_object(cat) is None:
        points(cat, p.target)  # raises NoTerminalObject
    covering = v in j.at(p.target)
    by_search = covering and g_neighborhood_by_factorization(cat, p, v)
    by_member = covering and g_neighborhood_by_membership(p, v)
    if by_search != by_member:
        raise InternalConsistencyError(f"G-neighborhood routes disagree for {p.carrier} and {v!r}")
    return by_search


def g_neighborhoods(cat: FiniteCategory, j: SieveAssignment, p: Point) -> list[Sieve]:
    return [v for v in j.sorted_at(p.target) if is_g_neighborhood(cat, j, p, v)]


def g_neighborhoods_of_sieve(cat: FiniteCategory, j: SieveAssignment, t: Sieve) -> list[Sieve]:
    return [v for v in j.sorted_at(t.codomain) if t.members <= v.members]


def cover_neighborhoods(cat: FiniteCategory, j: SieveAssignment, p: Point) -> NeighborhoodSystem:
    """All sieves on ``p.target`` containing a G-neighborhood of ``p``."""
    nbhds = g_neighborhoods(cat, j, p)
    members = frozenset(
        s for s in enumerate_sieves(cat, p.target) if any(v.members <= s.members for v in nbhds)
    )
    return NeighborhoodSystem(p, p.target, members)


def _counterexample(cat: FiniteCategory, j: SieveAssignment, p: Point) -> dict:
    return {
        "category": cat.to_dict(),
        "topologies": {"J": j.to_json()},
        "queries": [{"command": "audit", "args": ["4.3", p.target], "topology": "J"}],
    }


def neighborhood_filter_check(cat: FiniteCategory, j: SieveAssignment, p: Point) -> Report:
    """Is the cover-neighborhood system of ``p`` a filter at ``p.target``?"""
    rep = Report(f"neighborhood-filter[{p.carrier}]")
    system = cover_neighborhoods(cat, j, p)
    if object_filter_violation(cat, p.target, system.members, rep):
        rep.data["counterexample"] = _counterexample(cat, j, p)
    return rep


def audit_neighborhood_filters(cat: FiniteCategory, j: SieveAssignment, obj: str) -> Report:
    rep = Report(f"audit-4.3[{obj}]")
    pts = points(cat, obj)
    for p in pts:
        rep.extend(neighborhood_filter_check(cat, j, p))
    rep.data["points"] = [p.carrier for p in pts]
    return rep


def converges(cat: FiniteCategory, j: SieveAssignment, f: SieveAssignment, p: Point) -> bool:
    return cover_neighborhoods(cat, j, p).members <= f.at(p.target)


def closure(cat: FiniteCategory, j: SieveAssignment, a: Sieve) -> list[Point]:
    """Points of ``a.codomain`` every cover-neighborhood of which meets ``a``."""
    out = []
    for p in points(cat, a.codomain):
        by_system = all(n.meets(a) for n in cover_neighborhoods(cat, j, p).members)
        by_covers = all(v.meets(a) for v in j.at(a.codomain) if p.carrier in v.members)
        if by_system != by_covers:
            raise InternalConsistencyError(f"closure routes disagree for {p.carrier} and {a!r}")
        if by_system:
            out.append(p)
    return out


def is_cluster_point(cat: FiniteCategory, j: SieveAssignment, fam: SieveAssignment, p: Point) -> bool:
    """``p`` lies in the closure of every sieve of ``fam`` at its object (filter or base)."""
    return all(p in closure(cat, j, s) for s in fam.sorted_at(p.target))


def cluster_base(cat: FiniteCategory, j: SieveAssignment, f: SieveAssignment, p: Point) -> FilterBase:
    """``{A ∩ V : A ∈ F(C), V a G-neighborhood of p}`` at ``p.target``.

    Raises ``ValueError`` if ``p`` is not a cluster point and
    ``InvalidFamily`` (carrying the report) if the family is not a base.
    """
    if not is_cluster_point(cat, j, f, p):
        raise ValueError(f"{p.carrier} is not a cluster point")
    c = p.target
    family = {Sieve(c, a.members & v.members) for a in f.at(c) for v in g_neighborhoods(cat, j, p)}
    base = FilterBase.local(cat, c, family)
    rep = is_base(cat, base)
    if not rep.ok:
        raise InvalidFamily(rep)
    return base


def _local(cat: FiniteCategory, obj: str, fam: frozenset[Sieve]) -> Filter:
    return Filter.local(cat, obj, fam)


def audit_theorem_cluster(cat: FiniteCategory, j: SieveAssignment, obj: str, guard: int = DEFAULT_GUARD) -> Report:
    """Cluster point of F  ⇔  some filter finer than F converges to the point."""
    rep = Report(f"audit-4.5[{obj}]")
    filters = enumerate_object_filters(cat, obj, guard)
    pts = points(cat, obj)
    systems = {p: cover_neighborhoods(cat, j, p).members for p in pts}
    rows = []
    for fam in filters:
        f = _local(cat, obj, fam)
        for p in pts:
            lhs = is_cluster_point(cat, j, f, p)
            witness = next((g for g in filters if fam <= g and systems[p] <= g), None)
            rhs = witness is not None
            rows.append({
                "filter": least_member(fam),
                "point": p.carrier,
                "cluster": lhs,
                "finer_convergent": rhs,
                "witness": least_member(witness) if witness is not None else None,
            })
            if lhs != rhs:
                rep.add("equivalence", "cluster point and finer convergent filter disagree", obj,
                        filter=least_member(fam), point=p, cluster=lhs, finer_convergent=rhs)
    rep.data.update(_summary(rows, "cluster", "finer_convergent"))
    return rep


def audit_theorem_closure(cat: FiniteCategory, j: SieveAssignment, obj: str, guard: int = DEFAULT_GUARD) -> Report:
    """``p`` in the closure of A  ⇔  some filter containing A converges to ``p``."""
    rep = Report(f"audit-4.6[{obj}]")
    filters = enumerate_object_filters(cat, obj, guard)
    pts = points(cat, obj)
    systems = {p: cover_neighborhoods(cat, j, p).members for p in pts}
    rows = []
    for a in enumerate_sieves(cat, obj):
        cl = closure(cat, j, a)
        for p in pts:
            lhs = p in cl
            witness = next((g for g in filters if a in g and systems[p] <= g), None)
            rhs = witness is not None
            rows.append({
                "sieve": a,
                "point": p.carrier,
                "in_closure": lhs,
                "convergent_filter": rhs,
                "witness": least_member(witness) if witness is not None else None,
            })
            if lhs != rhs:
                rep.add("equivalence", "closure membership and convergent filter disagree", obj,
                        sieve=a, point=p, in_closure=lhs, convergent_filter=rhs)
    rep.data.update(_summary(rows, "in_closure", "convergent_filter"))
    return rep


def _summary(rows: list[dict], lhs: str, rhs: str) -> dict:
    return {
        "verdict": "holds" if all(r[lhs] == r[rhs] for r in rows) else "fails",
        "cases": len(rows),
        "true_cases": sum(1 for r in rows if r[lhs]),
        "rows": rows,
    }
