"""Workspace documents: one category plus named topologies, filters and queries.

The on-disk form is a single JSON object::

    {"category": {...} | {"preset": NAME, "params": {...}},
     "topologies": {NAME: {OBJ: [[MOR, ...], ...]}},
     "filters": {NAME: {OBJ: [...]} | {"base": {...}, "generate": BOOL}
                                     | {"subbase": {...}, "generate": BOOL}},
     "queries": [{"command": CMD, "args": [...], ...}]}

Objects omitted from a topology, filter or base get ``{maximal sieve}``;
objects omitted from a subbase get no sieves.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from . import corpus
from .fincat import FiniteCategory, PosetError, category_report, order_closure
from .filterlib import Filter, FilterBase, FilterSubbase, filter_from_base, filter_from_subbase
from .frames import Frame, FrameError, canonical_topology, frame_from_poset
from .sieve import Sieve, SieveAssignment, is_sieve, maximal_sieve, sieve_key
from .topology import GrothendieckTopology

__all__ = [
    "InputError",
    "NamedFilter",
    "Workspace",
    "dump_document",
    "load_document",
    "load_preset",
    "parse_document",
]

PRESETS = ("poset", "frame", "monoid", "parallel-pair", "pointed-two")

_sieve_map = {
    "type": "object",
    "additionalProperties": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["category"],
    "additionalProperties": False,
    "properties": {
        "category": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["objects", "morphisms", "identities"],
                    "additionalProperties": False,
                    "properties": {
                        "objects": {"type": "array", "items": {"type": "string"}},
                        "morphisms": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["name", "dom", "cod"],
                                "additionalProperties": False,
                                "properties": {
                                    "name": {"type": "string"},
                                    "dom": {"type": "string"},
                                    "cod": {"type": "string"},
                                },
                            },
                        },
                        "identities": {"type": "object", "additionalProperties": {"type": "string"}},
                        "composition": {
                            "type": "array",
                            "items": {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3},
                        },
                    },
                },
                {
                    "type": "object",
                    "required": ["preset"],
                    "additionalProperties": False,
                    "properties": {"preset": {"type": "string"}, "params": {"type": "object"}},
                },
            ]
        },
        "topologies": {"type": "object", "additionalProperties": _sieve_map},
        "filters": {
            "type": "object",
            "additionalProperties": {
                "oneOf": [
                    {
                        "type": "object",
                        "required": ["base"],
                        "additionalProperties": False,
                        "properties": {"base": _sieve_map, "generate": {"type": "boolean"}},
                    },
                    {
                        "type": "object",
                        "required": ["subbase"],
                        "additionalProperties": False,
                        "properties": {"subbase": _sieve_map, "generate": {"type": "boolean"}},
                    },
                    {**_sieve_map, "not": {"anyOf": [{"required": ["base"]}, {"required": ["subbase"]}]}},
                ]
            },
        },
        "queries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["command"],
                "properties": {"command": {"type": "string"}, "args": {"type": "array", "items": {"type": "string"}}},
            },
        },
    },
}


class InputError(ValueError):
    """Malformed or inconsistent input; ``pointer`` locates it in the document."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        self.message = message
        super().__init__(f"{pointer or '/'}: {message}")


def _ptr(*parts: Any) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


@dataclass(frozen=True)
class NamedFilter:
    """A declared filter entry: the family as written plus what it denotes."""

    kind: str  # "filter" | "base" | "subbase"
    family: SieveAssignment
    generate: bool = False

    def resolve(self, cat: FiniteCategory) -> SieveAssignment:
        """The generated filter when ``generate`` is set, otherwise the family itself."""
        if self.kind == "base" and self.generate:
            return filter_from_base(cat, self.family)
        if self.kind == "subbase" and self.generate:
            return filter_from_subbase(cat, self.family)
        return self.family


@dataclass
class Workspace:
    category: FiniteCategory
    category_source: dict[str, Any]
    topologies: dict[str, GrothendieckTopology] = field(default_factory=dict)
    filters: dict[str, NamedFilter] = field(default_factory=dict)
    queries: list[dict[str, Any]] = field(default_factory=list)
    frame: Frame | None = None
    preset_topologies: tuple[str, ...] = ()


def load_preset(name: str, params: dict[str, Any] | None = None) -> dict[str, Any]:
    """Expand a preset to ``{"category": raw, "topologies": {...}, "frame": Frame|None}``."""
    params = dict(params or {})
    ptr = _ptr("category", "params")
    if name not in PRESETS:
        raise InputError(_ptr("category", "preset"), f"unknown preset {name!r}; expected one of {list(PRESETS)}")
    if name == "parallel-pair":
        return {"category": corpus.PARALLEL_PAIR, "topologies": {}, "frame": None}
    if name == "pointed-two":
        return {"category": corpus.POINTED_TWO, "topologies": {}, "frame": None}
    if name == "monoid":
        if not params:
            return {"category": corpus.IDEMPOTENT_MONOID, "topologies": {}, "frame": None}
        try:
            raw = corpus.monoid_category(params["elements"], params["identity"], params.get("table", []))
        except KeyError as exc:
            raise InputError(ptr, f"monoid preset needs {exc.args[0]!r}") from None
        return {"category": raw, "topologies": {}, "frame": None}

    elems, order = _poset_params(params, ptr)
    if name == "poset":
        from .fincat import from_poset

        try:
            cat = from_poset(elems, order)
        except PosetError as exc:
            raise InputError(ptr, str(exc)) from None
        return {"category": cat.to_dict(), "topologies": {}, "frame": None}
    try:
        frame = frame_from_poset(elems, order)
    except (PosetError, FrameError) as exc:
        raise InputError(ptr, f"not a frame: {exc}") from None
    return {
        "category": frame.category.to_dict(),
        "topologies": {"canonical": canonical_topology(frame)},
        "frame": frame,
    }


def _poset_params(params: dict[str, Any], ptr: str) -> tuple[list[str], set[tuple[str, str]]]:
    if "name" in params:
        if params["name"] not in corpus.LATTICES:
            raise InputError(ptr + "/name", f"unknown lattice {params['name']!r}")
        elems, cov = corpus.LATTICES[params["name"]]
        return elems, order_closure(elems, cov)
    if "elements" not in params:
        raise InputError(ptr, "poset presets need 'name' or 'elements'")
    elems = [str(e) for e in params["elements"]]
    if "covers" in params:
        return elems, order_closure(elems, [tuple(p) for p in params["covers"]])
    if "order" in params:
        return elems, {(str(a), str(b)) for a, b in params["order"]}
    raise InputError(ptr, "poset presets need 'covers' or 'order'")


def _sieve(cat: FiniteCategory, obj: str, names: list[str], ptr: str) -> Sieve:
    for i, m in enumerate(names):
        if m not in cat.morphisms:
            raise InputError(f"{ptr}/{i}", f"unknown morphism {m!r}")
    if not is_sieve(cat, obj, names):
        raise InputError(ptr, f"{sorted(names)} is not a sieve on {obj}")
    return Sieve(obj, frozenset(names))


def _family(cat: FiniteCategory, raw: dict[str, Any], ptr: str, default_max: bool) -> dict[str, frozenset[Sieve]]:
    out = {}
    for obj, sieves in raw.items():
        if obj not in cat.objects:
            raise InputError(_ptr_join(ptr, obj), f"unknown object {obj!r}")
        out[obj] = frozenset(_sieve(cat, obj, s, _ptr_join(ptr, obj, i)) for i, s in enumerate(sieves))
    for o in cat.objects:
        out.setdefault(o, frozenset([maximal_sieve(cat, o)]) if default_max else frozenset())
    return out


def _ptr_join(base: str, *parts: Any) -> str:
    return base + _ptr(*parts)


def parse_document(data: Any) -> Workspace:
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InputError(_ptr(*e.absolute_path), e.message)

    src = data["category"]
    frame = None
    extra: dict[str, GrothendieckTopology] = {}
    if "preset" in src:
        expanded = load_preset(src["preset"], src.get("params"))
        raw, extra, frame = expanded["category"], expanded["topologies"], expanded["frame"]
    else:
        raw = src
    cat, rep = category_report(raw)
    if cat is None:
        v = rep.first
        raise InputError(_ptr("category"), f"{v.law}: {v.message}")
    if frame is not None:
        # share one category instance so sieves and caches line up
        cat = frame.category

    ws = Workspace(cat, src, frame=frame)
    ws.topologies.update(extra)
    ws.preset_topologies = tuple(sorted(extra))
    for name, fam in data.get("topologies", {}).items():
        ws.topologies[name] = GrothendieckTopology(_family(cat, fam, _ptr("topologies", name), True))
    for name, entry in data.get("filters", {}).items():
        ptr = _ptr("filters", name)
        if "base" in entry:
            ws.filters[name] = NamedFilter(
                "base", FilterBase(_family(cat, entry["base"], ptr + "/base", True)), entry.get("generate", False))
        elif "subbase" in entry:
            ws.filters[name] = NamedFilter(
                "subbase", FilterSubbase(_family(cat, entry["subbase"], ptr + "/subbase", False)),
                entry.get("generate", False))
        else:
            ws.filters[name] = NamedFilter("filter", Filter(_family(cat, entry, ptr, True)))
    ws.queries = [dict(q) for q in data.get("queries", [])]
    return ws


def load_document(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError("", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError("", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return parse_document(data)


def _family_json(fam: SieveAssignment) -> dict[str, list[list[str]]]:
    return {o: [sorted(s.members) for s in sorted(fam.at(o), key=sieve_key)] for o in fam.objects}


def document_json(ws: Workspace) -> dict[str, Any]:
    out: dict[str, Any] = {
        "category": ws.category_source if "preset" in ws.category_source else ws.category.to_dict(),
    }
    tops = {n: _family_json(j) for n, j in ws.topologies.items() if n not in ws.preset_topologies}
    if tops:
        out["topologies"] = tops
    if ws.filters:
        filters: dict[str, Any] = {}
        for n, nf in ws.filters.items():
            if nf.kind == "filter":
                filters[n] = _family_json(nf.family)
            else:
                filters[n] = {nf.kind: _family_json(nf.family), "generate": nf.generate}
        out["filters"] = filters
    if ws.queries:
        out["queries"] = ws.queries
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump_document(ws: Workspace) -> str:
    """Canonical serialization; ``dump_document(parse_document(json.loads(s))) == s`` for canonical ``s``."""
    return dumps(document_json(ws))
