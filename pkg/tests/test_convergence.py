import pytest

from sievefilters import corpus
from sievefilters.convergence import (
    audit_neighborhood_filters,
    audit_theorem_closure,
    audit_theorem_cluster,
    closure,
    cluster_base,
    converges,
    cover_neighborhoods,
    g_neighborhood_by_factorization,
    g_neighborhood_by_membership,
    g_neighborhoods_of_sieve,
    is_cluster_point,
    is_g_neighborhood,
    neighborhood_filter_check,
)
from sievefilters.filterlib import Filter, FilterBase, enumerate_object_filters, filter_from_base, trivial_filter
from sievefilters.fincat import NoTerminalObject, Point, points
from sievefilters.frames import canonical_topology
from sievefilters.sieve import Sieve, enumerate_sieves, maximal_sieve, up_set
from sievefilters.topology import GrothendieckTopology, chaotic_topology, trivial_topology

from conftest import make_frame
from oracles import RawCat, nbhd_system, raw_closure, raw_converges

P0, P1 = Point("p0", "C"), Point("p1", "C")
S1 = Sieve("C", frozenset({"e0", "e1", "p0", "p1"}))
GEN_P0 = Sieve("C", frozenset({"e0", "p0"}))
GEN_P1 = Sieve("C", frozenset({"e1", "p1"}))
EMPTY = Sieve("C", frozenset())


def test_g_neighborhood_examples(pt, pt_j):
    assert is_g_neighborhood(pt, pt_j, P0, S1)
    assert is_g_neighborhood(pt, pt_j, P0, maximal_sieve(pt, "C"))
    assert not is_g_neighborhood(pt, pt_j, P0, GEN_P1)
    j = GrothendieckTopology({**pt_j.assignment, "C": pt_j.at("C") | {GEN_P1}})
    assert not is_g_neighborhood(pt, j, P0, GEN_P1)
    assert not g_neighborhood_by_factorization(pt, P0, GEN_P1)
    assert g_neighborhood_by_factorization(pt, P1, GEN_P1)


def test_g_neighborhood_errors(pt, pt_j, pp):
    with pytest.raises(ValueError):
        is_g_neighborhood(pt, pt_j, P0, maximal_sieve(pt, "T"))
    with pytest.raises(NoTerminalObject):
        is_g_neighborhood(pp, trivial_topology(pp), Point("f", "Y"), maximal_sieve(pp, "Y"))


def test_neighborhoods_of_sieve(pt, pt_j):
    assert set(g_neighborhoods_of_sieve(pt, pt_j, EMPTY)) == pt_j.at("C")
    assert g_neighborhoods_of_sieve(pt, pt_j, GEN_P0) == [S1, maximal_sieve(pt, "C")]
    assert g_neighborhoods_of_sieve(pt, pt_j, maximal_sieve(pt, "C")) == [maximal_sieve(pt, "C")]


def test_cover_neighborhoods(pt, pt_j):
    assert cover_neighborhoods(pt, pt_j, P0).members == {S1, maximal_sieve(pt, "C")}
    assert cover_neighborhoods(pt, pt_j, Point("id_T", "T")).members == {maximal_sieve(pt, "T")}
    assert cover_neighborhoods(pt, trivial_topology(pt), P1).members == {maximal_sieve(pt, "C")}


def test_neighborhood_filter_check(pt, pt_j):
    assert neighborhood_filter_check(pt, pt_j, P0).ok
    assert audit_neighborhood_filters(pt, pt_j, "C").data["points"] == ["p0", "p1"]


def test_neighborhood_filter_failure_emits_counterexample(pt, pt_j, monkeypatch):
    from sievefilters import convergence

    broken = convergence.NeighborhoodSystem(P0, "C", frozenset([GEN_P0, GEN_P1, maximal_sieve(pt, "C")]))
    monkeypatch.setattr(convergence, "cover_neighborhoods", lambda cat, j, p: broken)
    rep = neighborhood_filter_check(pt, pt_j, P0)
    assert rep.first.law == "F1"
    doc = rep.data["counterexample"]
    assert doc["queries"] == [{"command": "audit", "args": ["4.3", "C"], "topology": "J"}]
    assert doc["topologies"]["J"] == pt_j.to_json()


def test_convergence_examples(pt, pt_j):
    assert not converges(pt, pt_j, trivial_filter(pt), P0)
    f = Filter.local(pt, "C", [S1, maximal_sieve(pt, "C")])
    assert converges(pt, pt_j, f, P0) and converges(pt, pt_j, f, P1)
    for fam in enumerate_object_filters(pt, "C"):
        assert converges(pt, trivial_topology(pt), Filter.local(pt, "C", fam), P0)


def test_closure_examples(pt, pt_j):
    assert closure(pt, pt_j, maximal_sieve(pt, "C")) == [P0, P1]
    assert closure(pt, pt_j, GEN_P0) == [P0, P1]
    assert closure(pt, pt_j, EMPTY) == []
    assert closure(pt, chaotic_topology(pt), GEN_P0) == [P0]


def test_objects_without_points_have_empty_closure(b2_frame):
    cat = b2_frame.category
    j = canonical_topology(b2_frame)
    assert closure(cat, j, maximal_sieve(cat, "a")) == []


def test_cluster_points(pt, pt_j):
    f = Filter.local(pt, "C", [S1, maximal_sieve(pt, "C")])
    assert is_cluster_point(pt, pt_j, f, P0)
    up_p0 = Filter.local(pt, "C", up_set(pt, GEN_P0))
    assert is_cluster_point(pt, pt_j, up_p0, P1)
    assert is_cluster_point(pt, pt_j, FilterBase.local(pt, "C", [GEN_P0]), P1)
    assert not is_cluster_point(pt, chaotic_topology(pt), up_p0, P1)
    for fam in enumerate_object_filters(pt, "C"):
        for p in (P0, P1):
            assert is_cluster_point(pt, trivial_topology(pt), Filter.local(pt, "C", fam), p)


def test_cluster_base(pt, pt_j, b2_frame):
    up_p0 = Filter.local(pt, "C", up_set(pt, GEN_P0))
    base = cluster_base(pt, pt_j, up_p0, P1)
    assert GEN_P0 in base.at("C")
    assert converges(pt, pt_j, filter_from_base(pt, base), P1)
    triv = cluster_base(pt, pt_j, trivial_filter(pt), P0)
    assert triv.at("C") == {S1, maximal_sieve(pt, "C")}
    with pytest.raises(ValueError):
        cluster_base(pt, chaotic_topology(pt), up_p0, P1)
    cat = b2_frame.category
    top = Sieve("1", frozenset({"0->1", "a->1", "b->1"}))
    f = Filter.local(cat, "1", [maximal_sieve(cat, "1"), top])
    base = cluster_base(cat, canonical_topology(b2_frame), f, Point("1->1", "1"))
    assert base.at("1") == f.at("1")


def test_audit_examples(pt, pt_j, b2_frame):
    rep = audit_theorem_cluster(pt, pt_j, "C")
    assert rep.ok and rep.data["verdict"] == "holds"
    rep = audit_theorem_closure(pt, pt_j, "C")
    rows = {(r["sieve"], r["point"]): r for r in rep.data["rows"]}
    row = rows[GEN_P0, "p1"]
    assert row["in_closure"] and row["convergent_filter"]
    assert row["witness"] == GEN_P0
    for p in ("p0", "p1"):
        assert not rows[EMPTY, p]["in_closure"] and not rows[EMPTY, p]["convergent_filter"]
        assert rows[maximal_sieve(pt, "C"), p]["in_closure"]
    rep = audit_theorem_cluster(pt, trivial_topology(pt), "C")
    assert all(r["cluster"] and r["finer_convergent"] for r in rep.data["rows"])
    cat = b2_frame.category
    rep = audit_theorem_cluster(cat, canonical_topology(b2_frame), "1")
    assert rep.data["cases"] == 5


def test_routes_agree_everywhere(cats):
    """Definitional factorization search equals the membership shortcut on the corpus."""
    for name, cat in cats.items():
        for j in corpus.topologies(name, cat).values():
            for o in cat.objects:
                try:
                    pts = points(cat, o)
                except NoTerminalObject:
                    continue
                for p in pts:
                    for v in enumerate_sieves(cat, o):
                        a = g_neighborhood_by_factorization(cat, p, v)
                        assert a == g_neighborhood_by_membership(p, v)
                        assert is_g_neighborhood(cat, j, p, v) == (a and v in j.at(o))


@pytest.mark.parametrize("tname", ["pt", "trivial", "chaotic"])
def test_against_raw_evaluator(pt, tname):
    rc = RawCat(corpus.POINTED_TWO)
    j = corpus.topologies("PT", pt)[tname]
    for o in rc.objects:
        covs = {s.members for s in j.at(o)}
        for p in points(pt, o):
            assert {s.members for s in cover_neighborhoods(pt, j, p).members} == nbhd_system(rc, covs, o, p.carrier)
            for fam in enumerate_object_filters(pt, o):
                raw_fam = {s.members for s in fam}
                assert converges(pt, j, Filter.local(pt, o, fam), p) == raw_converges(rc, covs, o, raw_fam, p.carrier)
        for a in enumerate_sieves(pt, o):
            assert [p.carrier for p in closure(pt, j, a)] == raw_closure(rc, covs, o, a.members)


def test_closure_is_monotone_and_extensive_on_points(cats):
    for name, cat in cats.items():
        for j in corpus.topologies(name, cat).values():
            for o in cat.objects:
                try:
                    points(cat, o)
                except NoTerminalObject:
                    continue
                lattice = enumerate_sieves(cat, o)
                cl = {a: set(closure(cat, j, a)) for a in lattice}
                for a in lattice:
                    assert {p for p in points(cat, o) if p.carrier in a.members} <= cl[a]
                    for b in lattice:
                        if a <= b:
                            assert cl[a] <= cl[b]


def test_frame_bottom_has_no_points_error():
    frame = make_frame("C2")
    cat = frame.category
    assert points(cat, "0") == []
