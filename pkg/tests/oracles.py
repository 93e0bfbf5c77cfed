"""Brute-force reference evaluators, written against raw description dicts.

Nothing here imports the package's sieve, filter or convergence code; the
tests compare the package against these.
"""
from __future__ import annotations

from itertools import chain, combinations, product


class RawCat:
    """Category read straight from a JSON-style description (identity entries inferred)."""

    def __init__(self, raw):
        self.objects = list(raw["objects"])
        self.dom = {m["name"]: m["dom"] for m in raw["morphisms"]}
        self.cod = {m["name"]: m["cod"] for m in raw["morphisms"]}
        self.ids = dict(raw["identities"])
        self.table = {(g, f): h for g, f, h in raw.get("composition", [])}
        for o, i in self.ids.items():
            for m in self.dom:
                if self.cod[m] == o:
                    self.table.setdefault((i, m), m)
                if self.dom[m] == o:
                    self.table.setdefault((m, i), m)

    def into(self, obj):
        return [m for m in self.cod if self.cod[m] == obj]

    def hom(self, x, y):
        return [m for m in self.dom if self.dom[m] == x and self.cod[m] == y]


def powerset(xs):
    xs = list(xs)
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


def right_ideal(rc: RawCat, obj, subset) -> bool:
    s = set(subset)
    return all(rc.cod[f] == obj for f in s) and all(
        rc.table[f, g] in s for f in s for g in rc.into(rc.dom[f])
    )


def brute_sieves(rc: RawCat, obj) -> set[frozenset]:
    """Every subset of hom(-, obj) passing the right-ideal test."""
    return {frozenset(sub) for sub in powerset(rc.into(obj)) if right_ideal(rc, obj, sub)}


def terminal(rc: RawCat):
    for t in sorted(rc.objects):
        if all(len(rc.hom(x, t)) == 1 for x in rc.objects):
            return t
    return None


def raw_points(rc: RawCat, obj):
    t = terminal(rc)
    return [] if t is None else sorted(rc.hom(t, obj))


def nbhd_system(rc: RawCat, covers: set[frozenset], obj, p) -> set[frozenset]:
    """Sieves on obj containing a covering sieve through which p factors (definitional)."""
    t = terminal(rc)
    gn = [
        v for v in covers
        if any(rc.table.get((phi, q)) == p for phi in v for q in rc.hom(t, rc.dom[phi]))
    ]
    return {s for s in brute_sieves(rc, obj) if any(v <= s for v in gn)}


def raw_closure(rc: RawCat, covers: set[frozenset], obj, a: frozenset) -> list:
    return [p for p in raw_points(rc, obj) if all(n & a for n in nbhd_system(rc, covers, obj, p))]


def raw_converges(rc: RawCat, covers, obj, fam: set[frozenset], p) -> bool:
    return nbhd_system(rc, covers, obj, p) <= fam


def brute_filters(rc: RawCat, obj) -> list[set[frozenset]]:
    """Every family of sieves on obj satisfying F1-F3 (maximal sieve required), by subset search."""
    sieves = sorted(brute_sieves(rc, obj), key=lambda s: (len(s), sorted(s)))
    top = frozenset(rc.into(obj))
    out = []
    for fam in powerset(sieves):
        fs = set(fam)
        if top not in fs or frozenset() in fs:
            continue
        if any(r not in fs for s in fs for r in sieves if s <= r):
            continue
        if any(s & t not in fs for s, t in product(fs, fs)):
            continue
        out.append(fs)
    return out


def first_assoc_failure(elements, table):
    """First (h, g, f) in lexicographic order with h(gf) != (hg)f for a one-object table."""
    for h, g, f in product(sorted(elements), repeat=3):
        if table[h, table[g, f]] != table[table[h, g], f]:
            return (h, g, f)
    return None
