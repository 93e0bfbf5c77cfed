"""The corpus audit: every exhaustive check, run over every built-in instance."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import corpus
from .convergence import (
    audit_neighborhood_filters,
    audit_theorem_closure,
    audit_theorem_cluster,
    g_neighborhood_by_factorization,
    g_neighborhood_by_membership,
    is_g_neighborhood,
)
from .filterlib import (
    DEFAULT_GUARD,
    Filter,
    SizeGuardExceeded,
    check_prime,
    check_prime_finite_union,
    enumerate_object_filters,
    extend_to_ultrafilter,
    is_filter,
    is_finer,
    is_ultrafilter,
)
from .fincat import FiniteCategory, check_finite_completeness, points, terminal_object
from .frames import Frame, FrameError, compare_convergence_notions, frame_from_poset
from .report import Report
from .sieve import Sieve, SieveAssignment, enumerate_sieves, pullback_sieve
from .topology import topology_filter_report, validate_topology

SAMPLE_SUBSETS = 1000
EXHAUSTIVE_LIMIT = 64


@dataclass
class Instance:
    name: str
    category: FiniteCategory
    topologies: dict[str, SieveAssignment]
    frame: Frame | None = None
    frame_error: str | None = None
    reports: list[Report] = field(default_factory=list)


def lattice_closure(cat: FiniteCategory, obj: str, seed: int = 0) -> Report:
    """Unions and intersections of subfamilies of the sieve lattice stay in it."""
    rep = Report(f"sieve-lattice[{obj}]")
    lattice = enumerate_sieves(cat, obj)
    members = set(lattice)
    n = len(lattice)
    if 2 ** n <= EXHAUSTIVE_LIMIT:
        families = [
            [s for s, keep in zip(lattice, bits) if keep] for bits in product((False, True), repeat=n)
        ]
    else:
        rng = random.Random(seed)
        families = [[s for s in lattice if rng.random() < 0.5] for _ in range(SAMPLE_SUBSETS)]
    everything = frozenset(cat.arrows_into(obj))
    for fam in families:
        union = Sieve(obj, frozenset().union(*(s.members for s in fam)))
        inter = Sieve(obj, frozenset.intersection(everything, *(s.members for s in fam)))
        for label, s in (("union", union), ("intersection", inter)):
            if s not in members:
                rep.add(label, f"{label} of a subfamily is not an enumerated sieve", obj, family=fam)
                return rep
    rep.data.update({"sieves": n, "families": len(families), "exhaustive": 2 ** n <= EXHAUSTIVE_LIMIT})
    return rep


def pullback_checks(cat: FiniteCategory) -> Report:
    rep = Report("pullback")
    pairs = 0
    for o in cat.objects:
        for s in enumerate_sieves(cat, o):
            for h in cat.arrows_into(o):
                d = cat.dom(h)
                want = {g for g in cat.arrows if cat.cod(g) == d and cat.compose(h, g) in s.members}
                got = pullback_sieve(cat, h, s)
                pairs += 1
                if got.members != want:
                    rep.add("definition", f"pullback along {h} differs from the set-builder", o, sieve=s, morphism=h)
                for f in cat.arrows_into(d):
                    lhs = pullback_sieve(cat, cat.compose(h, f), s)
                    rhs = pullback_sieve(cat, f, got)
                    if lhs != rhs:
                        rep.add("functoriality", f"({h}∘{f})* ≠ {f}*∘{h}*", o, sieve=s, left=h, right=f)
    rep.data["pairs"] = pairs
    return rep


def filter_checks(cat: FiniteCategory, obj: str, guard: int) -> Report:
    rep = Report(f"ultrafilters[{obj}]")
    fams = enumerate_object_filters(cat, obj, guard)
    ultra = 0
    for fam in fams:
        f = Filter.local(cat, obj, fam)
        u = extend_to_ultrafilter(cat, f, guard)
        if not is_finer(u, f) or not is_ultrafilter(cat, u, guard):
            rep.add("extension", "extension is not a finer ultrafilter", obj, filter=fam)
        if is_ultrafilter(cat, f, guard):
            ultra += 1
            for r in (check_prime(cat, f, obj), check_prime_finite_union(cat, f, obj, 3)):
                rep.violations.extend(r.violations)
    rep.data.update({"filters": len(fams), "ultrafilters": ultra})
    return rep


def shortcut_checks(cat: FiniteCategory, j: SieveAssignment, obj: str) -> Report:
    rep = Report(f"g-neighborhood-shortcut[{obj}]")
    triples = 0
    for p in points(cat, obj):
        for v in enumerate_sieves(cat, obj):
            triples += 1
            covering = v in j.at(obj)
            a = covering and g_neighborhood_by_factorization(cat, p, v)
            b = covering and g_neighborhood_by_membership(p, v)
            if a != b or is_g_neighborhood(cat, j, p, v) != a:
                rep.add("shortcut", "factorization search and membership disagree", obj, point=p, sieve=v)
    rep.data["triples"] = triples
    return rep


def _summary(rep: Report) -> Report:
    out = Report(rep.subject, list(rep.violations), list(rep.notes))
    out.data = {k: v for k, v in rep.data.items() if k != "rows"}
    return out


def audit_instance(inst: Instance, guard: int = DEFAULT_GUARD) -> Instance:
    cat = inst.category
    completeness = check_finite_completeness(cat)
    diag = Report("finite-completeness-diagnostic")
    diag.data["complete"] = completeness.ok
    diag.notes.extend(f"{v.law}: {v.message}" for v in completeness.violations)
    inst.reports.append(diag)

    for o in cat.objects:
        inst.reports.append(lattice_closure(cat, o))
    inst.reports.append(pullback_checks(cat))

    for o in cat.objects:
        try:
            inst.reports.append(filter_checks(cat, o, guard))
        except SizeGuardExceeded as exc:
            skipped = Report(f"ultrafilters[{o}]")
            skipped.notes.append(f"skipped: {exc}")
            inst.reports.append(skipped)

    has_points = terminal_object(cat) is not None
    for tname, j in sorted(inst.topologies.items()):
        topo = validate_topology(cat, j, "full")
        topo.subject = f"topology[{tname}]"
        inst.reports.append(topo)
        if not topo.ok:
            continue
        f, tf = topology_filter_report(cat, j)
        tf.subject = f"topology-to-filter[{tname}]"
        # partiality is recorded, not a failure of the suite
        partial = Report(tf.subject, notes=list(tf.notes))
        partial.data["defined"] = f is not None
        if f is None:
            partial.notes.extend(f"undefined: {v.message} at {v.obj}" for v in tf.violations)
        else:
            partial.violations.extend(is_filter(cat, f).violations)
        inst.reports.append(partial)
        if not has_points:
            continue
        for o in cat.objects:
            if not points(cat, o):
                continue
            for r in (
                shortcut_checks(cat, j, o),
                audit_neighborhood_filters(cat, j, o),
                audit_theorem_cluster(cat, j, o, guard),
                audit_theorem_closure(cat, j, o, guard),
            ):
                r.subject = f"{r.subject}[{tname}]"
                inst.reports.append(_summary(r))

    if inst.frame is not None:
        inst.reports.append(_summary(compare_convergence_notions(inst.frame, guard)))
    if inst.frame_error is not None:
        neg = Report("frame-check")
        neg.notes.append(inst.frame_error)
        inst.reports.append(neg)
    return inst


def builtin_instances() -> list[Instance]:
    out = []
    for name, cat in corpus.categories().items():
        inst = Instance(name, cat, corpus.topologies(name, cat))
        if name in corpus.LATTICES:
            elems, cov = corpus.LATTICES[name]
            try:
                inst.frame = frame_from_poset(elems, corpus.order_closure(elems, cov))
            except FrameError as exc:
                inst.frame_error = f"not a frame: {exc}"
        out.append(inst)
    return out


def run_corpus(extra: list[Instance] | None = None, guard: int = DEFAULT_GUARD) -> dict:
    instances = builtin_instances() + list(extra or [])
    results = []
    ok = True
    for inst in instances:
        audit_instance(inst, guard)
        inst_ok = all(r.ok for r in inst.reports)
        ok = ok and inst_ok
        results.append({"name": inst.name, "ok": inst_ok, "checks": [r.to_json() for r in inst.reports]})
    return {"ok": ok, "guard": guard, "instances": results}

