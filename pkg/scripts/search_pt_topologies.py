"""Enumerate every Grothendieck topology on the pointed two-object category
and audit the neighborhood-filter, cluster-point and closure equivalences
under each one.
"""
from itertools import combinations

from sievefilters import corpus
from sievefilters.convergence import audit_neighborhood_filters, audit_theorem_closure, audit_theorem_cluster
from sievefilters.sieve import enumerate_sieves, maximal_sieve
from sievefilters.topology import GrothendieckTopology, validate_topology


def families(cat, obj):
    top = maximal_sieve(cat, obj)
    rest = [s for s in enumerate_sieves(cat, obj) if s != top]
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            yield frozenset((top, *extra))


def fmt(fam):
    return " ".join("{" + ",".join(sorted(s.members)) + "}" for s in sorted(fam, key=lambda s: (len(s), sorted(s.members))))


def main() -> None:
    cat = corpus.pointed_two()
    valid = 0
    candidates = 0
    for jt in families(cat, "T"):
        for jc in families(cat, "C"):
            candidates += 1
            j = GrothendieckTopology({"T": jt, "C": jc})
            if not validate_topology(cat, j, "full").ok:
                continue
            valid += 1
            verdicts = []
            for o in ("T", "C"):
                r43 = audit_neighborhood_filters(cat, j, o)
                r45 = audit_theorem_cluster(cat, j, o)
                r46 = audit_theorem_closure(cat, j, o)
                verdicts.append(f"{o}: 4.3={'ok' if r43.ok else 'FAIL'} "
                                f"4.5={r45.data['verdict']} 4.6={r46.data['verdict']}")
            print(f"J(T)=[{fmt(jt)}]  J(C)=[{fmt(jc)}]")
            print("    " + " | ".join(verdicts))
    print(f"{valid} topologies among {candidates} candidate assignments")


if __name__ == "__main__":
    main()
