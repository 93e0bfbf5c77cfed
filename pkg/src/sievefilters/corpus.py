"""Built-in small categories, lattices and topologies used by the audits."""
from __future__ import annotations

from typing import Any

from .fincat import FiniteCategory, from_poset, order_closure, validate_category
from .sieve import Sieve, maximal_sieve
from .topology import GrothendieckTopology, chaotic_topology, trivial_topology

# name -> (elements, covering pairs)
LATTICES: dict[str, tuple[list[str], list[tuple[str, str]]]] = {
    "C2": (["0", "1"], [("0", "1")]),
    "C3": (["0", "m", "1"], [("0", "m"), ("m", "1")]),
    "B2": (["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]),
    "N5": (["0", "a", "b", "c", "1"], [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]),
}

PARALLEL_PAIR: dict[str, Any] = {
    "objects": ["X", "Y"],
    "morphisms": [
        {"name": "f", "dom": "X", "cod": "Y"},
        {"name": "g", "dom": "X", "cod": "Y"},
        {"name": "id_X", "dom": "X", "cod": "X"},
        {"name": "id_Y", "dom": "Y", "cod": "Y"},
    ],
    "identities": {"X": "id_X", "Y": "id_Y"},
    "composition": [],
}

IDEMPOTENT_MONOID: dict[str, Any] = {
    "objects": ["*"],
    "morphisms": [{"name": "e", "dom": "*", "cod": "*"}, {"name": "s", "dom": "*", "cod": "*"}],
    "identities": {"*": "e"},
    "composition": [["s", "s", "s"]],
}

# terminal T with two points p0, p1 of C and a retraction c: C -> T
POINTED_TWO: dict[str, Any] = {
    "objects": ["C", "T"],
    "morphisms": [
        {"name": "c", "dom": "C", "cod": "T"},
        {"name": "e0", "dom": "C", "cod": "C"},
        {"name": "e1", "dom": "C", "cod": "C"},
        {"name": "id_C", "dom": "C", "cod": "C"},
        {"name": "id_T", "dom": "T", "cod": "T"},
        {"name": "p0", "dom": "T", "cod": "C"},
        {"name": "p1", "dom": "T", "cod": "C"},
    ],
    "identities": {"C": "id_C", "T": "id_T"},
    "composition": [
        ["c", "e0", "c"], ["c", "e1", "c"], ["c", "p0", "id_T"], ["c", "p1", "id_T"],
        ["e0", "e0", "e0"], ["e0", "e1", "e0"], ["e0", "p0", "p0"], ["e0", "p1", "p0"],
        ["e1", "e0", "e1"], ["e1", "e1", "e1"], ["e1", "p0", "p1"], ["e1", "p1", "p1"],
        ["p0", "c", "e0"], ["p1", "c", "e1"],
    ],
}


def lattice_category(name: str) -> FiniteCategory:
    elems, cov = LATTICES[name]
    return from_poset(elems, order_closure(elems, cov))


def monoid_category(elements: list[str], identity: str, table: list[list[str]]) -> dict[str, Any]:
    """One-object category description of a finite monoid (object ``*``)."""
    return {
        "objects": ["*"],
        "morphisms": [{"name": str(m), "dom": "*", "cod": "*"} for m in elements],
        "identities": {"*": str(identity)},
        "composition": [[str(x) for x in row] for row in table],
    }


def pointed_two() -> FiniteCategory:
    return validate_category(POINTED_TWO)


def pt_topology(cat: FiniteCategory) -> GrothendieckTopology:
    """``J(T) = {max}``, ``J(C) = {max, {e0, e1, p0, p1}}``."""
    s1 = Sieve("C", frozenset({"e0", "e1", "p0", "p1"}))
    return GrothendieckTopology({"T": {maximal_sieve(cat, "T")}, "C": {maximal_sieve(cat, "C"), s1}})


def categories() -> dict[str, FiniteCategory]:
    out = {name: lattice_category(name) for name in LATTICES}
    out["PP"] = validate_category(PARALLEL_PAIR)
    out["M1"] = validate_category(IDEMPOTENT_MONOID)
    out["PT"] = pointed_two()
    return out


def topologies(name: str, cat: FiniteCategory) -> dict[str, GrothendieckTopology]:
    """Topologies audited on a corpus category, by name."""
    from .frames import canonical_topology, frame_from_poset

    out = {"chaotic": chaotic_topology(cat), "trivial": trivial_topology(cat)}
    if name == "PT":
        out["pt"] = pt_topology(cat)
    if name in LATTICES and name != "N5":
        elems, cov = LATTICES[name]
        out["canonical"] = canonical_topology(frame_from_poset(elems, order_closure(elems, cov)))
    return out
