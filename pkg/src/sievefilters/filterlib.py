"""Filters of sieves, filter bases and subbases, and finite ultrafilters.

Filters are checked one object at a time: the axioms impose no coherence
between objects. An empty family is never a filter here, because the
nullary intersection (the maximal sieve) must belong to it.
"""
from __future__ import annotations

from collections.abc import Iterable
from itertools import combinations, combinations_with_replacement

from .fincat import FiniteCategory
from .report import Report
from .sieve import (
    Sieve,
    SieveAssignment,
    enumerate_sieves,
    is_sieve,
    maximal_sieve,
    sieve_intersection,
    sieve_key,
    sieve_union,
    up_set,
)

DEFAULT_GUARD = 20


class Filter(SieveAssignment):
    pass


class FilterBase(SieveAssignment):
    pass


class FilterSubbase(SieveAssignment):
    pass


class InvalidFamily(ValueError):
    def __init__(self, report: Report):
        self.report = report
        first = report.first
        super().__init__(f"{report.subject}: {first.law}: {first.message}" if first else report.subject)


class SizeGuardExceeded(ValueError):
    pass


def trivial_filter(cat: FiniteCategory) -> Filter:
    return Filter({o: frozenset([maximal_sieve(cat, o)]) for o in cat.objects})


def _check_members(cat: FiniteCategory, fam: SieveAssignment, rep: Report) -> None:
    for o in fam.objects:
        if o not in cat.objects:
            rep.add("unknown-object", f"assignment at undeclared object {o}", o)
            continue
        for s in fam.sorted_at(o):
            if s.codomain != o or not is_sieve(cat, o, s.members):
                rep.add("not-a-sieve", f"{sorted(s.members)} is not a sieve on {o}", o, sieve=s)


def object_filter_violation(cat: FiniteCategory, obj: str, sieves: frozenset[Sieve], rep: Report) -> bool:
    """Append the first violated filter axiom at ``obj`` to ``rep``; True if one was found."""
    lattice = enumerate_sieves(cat, obj)
    fam = sorted(sieves, key=sieve_key)
    for s in fam:
        for r in lattice:
            if s.members <= r.members and r not in sieves:
                rep.add("F1", f"{sorted(r.members)} contains a member but is missing", obj, member=s, superset=r)
                return True
    if not fam:
        rep.add("F2", "assignment is empty but must contain the maximal sieve (nullary intersection)", obj)
        rep.notes.append(f"nullary-intersection convention applied at {obj}: an empty assignment is not a filter")
        return True
    top = maximal_sieve(cat, obj)
    if top not in sieves:
        rep.add("F2", "maximal sieve missing (nullary intersection)", obj, maximal=top)
        return True
    for s, t in combinations(fam, 2):
        m = sieve_intersection([s, t])
        if m not in sieves:
            rep.add("F2", f"intersection {sorted(m.members)} missing", obj, left=s, right=t, intersection=m)
            return True
    empty = Sieve(obj, frozenset())
    if empty in sieves:
        rep.add("F3", "the empty sieve is a member", obj, sieve=empty)
        return True
    return False


def _per_object(cat: FiniteCategory, fam: SieveAssignment, subject: str) -> Report:
    rep = Report(subject)
    _check_members(cat, fam, rep)
    for o in cat.objects:
        if o not in fam.assignment:
            rep.add("missing-object", f"no assignment at {o}", o)
    return rep


def is_filter(cat: FiniteCategory, f: SieveAssignment) -> Report:
    rep = _per_object(cat, f, "filter")
    if rep.ok:
        for o in cat.objects:
            object_filter_violation(cat, o, f.at(o), rep)
    return rep


def is_base(cat: FiniteCategory, b: SieveAssignment) -> Report:
    rep = _per_object(cat, b, "filter-base")
    if not rep.ok:
        return rep
    for o in cat.objects:
        fam = b.sorted_at(o)
        if not fam:
            rep.add("B2", "base is empty", o)
            continue
        if any(not s.members for s in fam):
            rep.add("B2", "the empty sieve is a member", o, sieve=Sieve(o, frozenset()))
            continue
        for s, t in combinations_with_replacement(fam, 2):
            m = s.members & t.members
            if not any(r.members <= m for r in fam):
                rep.add("B1", f"{sorted(m)} contains no member", o, left=s, right=t)
                break
    return rep


def is_subbase(cat: FiniteCategory, sb: SieveAssignment) -> Report:
    rep = _per_object(cat, sb, "filter-subbase")
    if not rep.ok:
        return rep
    for o in cat.objects:
        fam = sb.sorted_at(o)
        if not fam or frozenset.intersection(*(s.members for s in fam)):
            continue
        # smallest offending subcollection first
        bad = next(
            (
                sub
                for k in range(1, len(fam) + 1)
                for sub in combinations(fam, k)
                if not frozenset.intersection(*(s.members for s in sub))
            ),
            None,
        )
        if bad is not None:
            rep.add("finite-intersection", "a finite subcollection has empty intersection", o,
                    subcollection=list(bad))
    return rep


def filter_from_base(cat: FiniteCategory, b: SieveAssignment) -> Filter:
    rep = is_base(cat, b)
    if not rep.ok:
        raise InvalidFamily(rep)
    out = Filter({
        o: frozenset(s for s in enumerate_sieves(cat, o) if any(r.members <= s.members for r in b.at(o)))
        for o in cat.objects
    })
    assert is_filter(cat, out).ok
    return out


def filter_from_subbase(cat: FiniteCategory, sb: SieveAssignment) -> Filter:
    """Coarsest filter containing every member of the subbase."""
    rep = is_subbase(cat, sb)
    if not rep.ok:
        raise InvalidFamily(rep)
    base = {}
    for o in cat.objects:
        closed = {maximal_sieve(cat, o)}
        for s in sb.sorted_at(o):
            closed |= {sieve_intersection([s, c]) for c in closed}
        base[o] = frozenset(closed)
    return filter_from_base(cat, FilterBase(base))


def is_finer(f1: SieveAssignment, f2: SieveAssignment) -> bool:
    """True iff ``f1`` is finer than ``f2``, i.e. contains it at every object."""
    return all(f2.at(o) <= f1.at(o) for o in set(f1.objects) | set(f2.objects))


def meet_filters(family: Iterable[SieveAssignment]) -> Filter:
    fam = list(family)
    if not fam:
        raise ValueError("meet of an empty family of filters")
    objs = sorted(set().union(*(f.objects for f in fam)))
    return Filter({o: frozenset.intersection(*(f.at(o) for f in fam)) for o in objs})


def _guard(cat: FiniteCategory, obj: str, guard: int) -> tuple[Sieve, ...]:
    lattice = enumerate_sieves(cat, obj)
    if len(lattice) > guard:
        raise SizeGuardExceeded(f"{obj} carries {len(lattice)} sieves, guard is {guard}")
    return lattice


def enumerate_object_filters(cat: FiniteCategory, obj: str, guard: int = DEFAULT_GUARD) -> list[frozenset[Sieve]]:
    """All filters at ``obj``, ordered by their least member.

    In a finite sieve lattice a filter is closed under the intersection of
    all its members, so it is the up-set of that least member; conversely
    every up-set of a nonempty sieve is a filter.
    """
    out = []
    for s in _guard(cat, obj, guard):
        if not s.members:
            continue
        fam = up_set(cat, s)
        probe = Report("object-filter")
        assert not object_filter_violation(cat, obj, fam, probe), probe.to_text()
        out.append(fam)
    return out


def least_member(sieves: Iterable[Sieve]) -> Sieve:
    return sieve_intersection(list(sieves))


def atoms(cat: FiniteCategory, obj: str) -> list[Sieve]:
    """Minimal nonempty sieves on ``obj``, canonical order."""
    nonempty = [s for s in enumerate_sieves(cat, obj) if s.members]
    return [s for s in nonempty if not any(t < s for t in nonempty)]


def is_ultrafilter(cat: FiniteCategory, f: SieveAssignment, guard: int = DEFAULT_GUARD) -> bool:
    rep = is_filter(cat, f)
    if not rep.ok:
        raise InvalidFamily(rep)
    for o in cat.objects:
        here = f.at(o)
        if any(here < g for g in enumerate_object_filters(cat, o, guard)):
            return False
    return True


def extend_to_ultrafilter(cat: FiniteCategory, f: SieveAssignment, guard: int = DEFAULT_GUARD) -> Filter:
    """A finer ultrafilter: at each object, the up-set of the least atom below ``f``'s least member."""
    rep = is_filter(cat, f)
    if not rep.ok:
        raise InvalidFamily(rep)
    out = {}
    for o in cat.objects:
        _guard(cat, o, guard)
        low = least_member(f.at(o))
        atom = next(a for a in atoms(cat, o) if a.members <= low.members)
        out[o] = up_set(cat, atom)
    return Filter(out)


def check_prime_finite_union(cat: FiniteCategory, u: SieveAssignment, obj: str, n: int) -> Report:
    """Whenever a union of ``n`` sieves lies in ``u(obj)``, some member does.

    Tuples are drawn with repetition, so all unions of at most ``n``
    sieves are covered.
    """
    rep = Report(f"prime-union-{n}[{obj}]")
    here = u.at(obj)
    lattice = enumerate_sieves(cat, obj)
    checked = 0
    for tup in combinations_with_replacement(lattice, n):
        checked += 1
        if sieve_union(tup) in here and not any(s in here for s in tup):
            rep.add("prime", "union is a member but no part is", obj, parts=list(tup),
                    union=sieve_union(tup))
            break
    rep.data["checked"] = checked
    return rep


def check_prime(cat: FiniteCategory, u: SieveAssignment, obj: str) -> Report:
    rep = check_prime_finite_union(cat, u, obj, 2)
    rep.subject = f"prime[{obj}]"
    return rep
