"""Command-line interface.

Exit status: 0 when every check passes, 1 when a check fails or an audit
finds a counterexample, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .audit import Instance, run_corpus
from .convergence import (
    audit_neighborhood_filters,
    audit_theorem_closure,
    audit_theorem_cluster,
    closure,
    cluster_base,
    converges,
    cover_neighborhoods,
    is_cluster_point,
)
from .document import SCHEMA, InputError, Workspace, dumps, parse_document
from .filterlib import (
    DEFAULT_GUARD,
    InvalidFamily,
    SizeGuardExceeded,
    check_prime,
    check_prime_finite_union,
    enumerate_object_filters,
    extend_to_ultrafilter,
    filter_from_base,
    filter_from_subbase,
    is_base,
    is_filter,
    is_subbase,
    is_ultrafilter,
)
from .fincat import NoTerminalObject, Point, UnknownMorphism, category_report, terminal_object
from .report import Report, to_jsonable
from .sieve import Sieve, SieveAssignment, enumerate_sieves, generate_sieve, is_sieve, pullback_sieve, sieve_key
from .topology import trivial_topology, validate_topology

AUDITS = ("4.3", "4.5", "4.6", "prime", "corollary")


class Outcome:
    def __init__(self, payload: dict[str, Any], lines: list[str], code: int = 0):
        self.payload = payload
        self.lines = lines
        self.code = code


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError("", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError("", f"invalid JSON: {exc.msg} at line {exc.lineno}") from None


def _load(args) -> Workspace:
    if not args.input:
        raise InputError("", "this command needs --input DOCUMENT")
    return parse_document(_read_json(args.input))


def _topology(ws: Workspace, name: str | None):
    if name is not None:
        if name not in ws.topologies:
            raise InputError(f"/topologies/{name}", f"no topology named {name!r}")
        return name, ws.topologies[name]
    if len(ws.topologies) == 1:
        return next(iter(ws.topologies.items()))
    if "canonical" in ws.topologies:
        return "canonical", ws.topologies["canonical"]
    if not ws.topologies:
        return "trivial", trivial_topology(ws.category)
    raise InputError("/topologies", "several topologies declared; pick one with --topology")


def _filter(ws: Workspace, name: str):
    if name not in ws.filters:
        raise InputError(f"/filters/{name}", f"no filter named {name!r}")
    return ws.filters[name]


def _point(ws: Workspace, carrier: str) -> Point:
    cat = ws.category
    t = terminal_object(cat)
    if t is None:
        raise InputError("/category", "category has no terminal object, so it has no points")
    if carrier not in cat.morphisms:
        raise InputError("", f"unknown morphism {carrier!r}")
    if cat.dom(carrier) != t:
        raise InputError("", f"{carrier} does not start at the terminal object {t}")
    return Point(carrier, cat.cod(carrier))


def _sieve_arg(ws: Workspace, text: str, obj: str | None) -> Sieve:
    text = text.strip()
    names = json.loads(text) if text.startswith("[") else [t for t in text.split(",") if t]
    cat = ws.category
    for n in names:
        if n not in cat.morphisms:
            raise InputError("", f"unknown morphism {n!r}")
    cods = {cat.cod(n) for n in names}
    if obj is None:
        if len(cods) != 1:
            raise InputError("", "cannot infer the object of the sieve; pass --object")
        obj = cods.pop()
    elif obj not in cat.objects:
        raise InputError("", f"unknown object {obj!r}")
    if not is_sieve(cat, obj, names):
        raise InputError("", f"{sorted(names)} is not a sieve on {obj}; its generated sieve is "
                         f"{sorted(generate_sieve(cat, obj, names).members) if cods <= {obj} else '-'}")
    return Sieve(obj, frozenset(names))


def _object(ws: Workspace, obj: str) -> str:
    if obj not in ws.category.objects:
        raise InputError("", f"unknown object {obj!r}")
    return obj


def _fmt(s: Sieve) -> str:
    return "{" + ", ".join(sorted(s.members)) + "}"


def _report_lines(rep: Report) -> list[str]:
    return rep.to_text().splitlines()


# -- commands ---------------------------------------------------------------

def cmd_validate(args) -> Outcome:
    data = _read_json(args.input) if args.input else None
    if data is None:
        raise InputError("", "validate needs --input DOCUMENT")
    reports: list[Report] = []
    src = data.get("category") if isinstance(data, dict) else None
    if isinstance(src, dict) and "preset" not in src:
        import jsonschema

        errs = sorted(jsonschema.Draft7Validator(SCHEMA).iter_errors(data), key=lambda e: list(e.absolute_path))
        if errs:
            parse_document(data)  # raises InputError with the pointer
        cat, rep = category_report(src)
        if cat is None:
            return _finish("validate", [rep])
    ws = parse_document(data)
    reports.append(Report("category"))
    for name, j in sorted(ws.topologies.items()):
        r = validate_topology(ws.category, j, args.level)
        r.subject = f"topology[{name}]"
        reports.append(r)
    for name, nf in sorted(ws.filters.items()):
        checker = {"filter": is_filter, "base": is_base, "subbase": is_subbase}[nf.kind]
        r = checker(ws.category, nf.family)
        r.subject = f"{nf.kind}[{name}]"
        reports.append(r)
        if r.ok and nf.generate:
            g = is_filter(ws.category, nf.resolve(ws.category))
            g.subject = f"generated-filter[{name}]"
            reports.append(g)
    return _finish("validate", reports)


def _finish(command: str, reports: list[Report]) -> Outcome:
    ok = all(r.ok for r in reports)
    lines = [ln for r in reports for ln in _report_lines(r)]
    return Outcome({"command": command, "ok": ok, "reports": [r.to_json() for r in reports]}, lines, 0 if ok else 1)


def cmd_sieves(args) -> Outcome:
    ws = _load(args)
    obj = _object(ws, args.obj)
    sieves = enumerate_sieves(ws.category, obj)
    lines = [f"{len(sieves)} sieves on {obj}"] + [f"  {_fmt(s)}" for s in sieves]
    return Outcome({"command": "sieves", "object": obj, "count": len(sieves), "sieves": to_jsonable(list(sieves))}, lines)


def cmd_pullback(args) -> Outcome:
    ws = _load(args)
    cat = ws.category
    if args.h not in cat.morphisms:
        raise InputError("", f"unknown morphism {args.h!r}")
    s = _sieve_arg(ws, args.sieve, cat.cod(args.h))
    out = pullback_sieve(cat, args.h, s)
    return Outcome(
        {"command": "pullback", "morphism": args.h, "sieve": to_jsonable(s), "object": out.codomain,
         "pullback": to_jsonable(out)},
        [f"{args.h}*{_fmt(s)} = {_fmt(out)} on {out.codomain}"],
    )


def cmd_filter(args) -> Outcome:
    ws = _load(args)
    nf = _filter(ws, args.name)
    cat = ws.category
    try:
        if nf.kind == "base":
            f = filter_from_base(cat, nf.family)
        elif nf.kind == "subbase":
            f = filter_from_subbase(cat, nf.family)
        else:
            f = nf.family
    except InvalidFamily as exc:
        return _finish("filter gen", [exc.report])
    rep = is_filter(cat, f)
    lines = [f"filter generated from {nf.kind} {args.name}:"]
    for o in f.objects:
        lines.append(f"  {o}: " + ", ".join(_fmt(s) for s in f.sorted_at(o)))
    lines += _report_lines(rep)
    return Outcome({"command": "filter gen", "name": args.name, "kind": nf.kind, "filter": f.to_json(),
                    "ok": rep.ok, "report": rep.to_json()}, lines, 0 if rep.ok else 1)


def cmd_ultra(args) -> Outcome:
    ws = _load(args)
    cat = ws.category
    try:
        f = _filter(ws, args.name).resolve(cat)
        u = extend_to_ultrafilter(cat, f, args.guard)
    except InvalidFamily as exc:
        return _finish("ultra", [exc.report])
    reports = []
    for o in cat.objects:
        reports.append(check_prime(cat, u, o))
        reports.append(check_prime_finite_union(cat, u, o, args.n))
    ultra = is_ultrafilter(cat, u, args.guard)
    ok = ultra and all(r.ok for r in reports)
    lines = [f"ultrafilter extending {args.name}:"]
    lines += [f"  {o}: " + ", ".join(_fmt(s) for s in u.sorted_at(o)) for o in u.objects]
    lines.append(f"maximal: {ultra}")
    lines += [ln for r in reports for ln in _report_lines(r)]
    payload = {"command": "ultra", "name": args.name, "ultrafilter": u.to_json(), "is_ultrafilter": ultra,
               "ok": ok, "reports": [r.to_json() for r in reports]}
    return Outcome(payload, lines, 0 if ok else 1)


def cmd_converge(args) -> Outcome:
    ws = _load(args)
    tname, j = _topology(ws, args.topology)
    f = _filter(ws, args.filter).resolve(ws.category)
    p = _point(ws, args.point)
    system = cover_neighborhoods(ws.category, j, p)
    result = converges(ws.category, j, f, p)
    missing = sorted(system.members - f.at(p.target), key=sieve_key)
    lines = [f"{args.filter} {'converges' if result else 'does not converge'} to {p.carrier} under {tname}"]
    lines += [f"  missing neighborhood {_fmt(s)}" for s in missing]
    return Outcome({"command": "converge", "topology": tname, "filter": args.filter, "point": p.carrier,
                    "converges": result, "neighborhoods": to_jsonable(system.members),
                    "missing": to_jsonable(missing)}, lines)


def cmd_closure(args) -> Outcome:
    ws = _load(args)
    tname, j = _topology(ws, args.topology)
    a = _sieve_arg(ws, args.sieve, args.object)
    pts = closure(ws.category, j, a)
    lines = [f"closure of {_fmt(a)} on {a.codomain} under {tname}: " + (", ".join(p.carrier for p in pts) or "(none)")]
    return Outcome({"command": "closure", "topology": tname, "sieve": to_jsonable(a), "object": a.codomain,
                    "points": [p.carrier for p in pts]}, lines)


def cmd_cluster(args) -> Outcome:
    ws = _load(args)
    tname, j = _topology(ws, args.topology)
    nf = _filter(ws, args.filter)
    fam = nf.resolve(ws.category)
    p = _point(ws, args.point)
    result = is_cluster_point(ws.category, j, fam, p)
    payload: dict[str, Any] = {"command": "cluster", "topology": tname, "filter": args.filter, "point": p.carrier,
                               "cluster": result}
    lines = [f"{p.carrier} {'is' if result else 'is not'} a cluster point of {args.filter} under {tname}"]
    if result:
        try:
            base = cluster_base(ws.category, j, fam, p)
            payload["cluster_base"] = to_jsonable(base.at(p.target))
            lines.append("  base: " + ", ".join(_fmt(s) for s in base.sorted_at(p.target)))
        except InvalidFamily as exc:
            payload["cluster_base_failure"] = exc.report.to_json()
            lines += _report_lines(exc.report)
            return Outcome(payload, lines, 1)
    return Outcome(payload, lines)


def cmd_audit(args) -> Outcome:
    ws = _load(args)
    cat = ws.category
    obj = _object(ws, args.obj)
    if args.theorem not in AUDITS:
        raise InputError("", f"unknown audit {args.theorem!r}; expected one of {list(AUDITS)}")
    if args.theorem in ("prime", "corollary"):
        rep = Report(f"audit-{args.theorem}[{obj}]")
        n = 2 if args.theorem == "prime" else args.n
        count = 0
        for fam in enumerate_object_filters(cat, obj, args.guard):
            u = SieveAssignment.local(cat, obj, fam)
            if not is_ultrafilter(cat, u, args.guard):
                continue
            count += 1
            rep.extend(check_prime_finite_union(cat, u, obj, n))
        rep.data.update({"ultrafilters": count, "n": n})
        return _finish(f"audit {args.theorem}", [rep])
    tname, j = _topology(ws, args.topology)
    fn = {"4.3": audit_neighborhood_filters, "4.5": audit_theorem_cluster, "4.6": audit_theorem_closure}[args.theorem]
    rep = fn(cat, j, obj) if args.theorem == "4.3" else fn(cat, j, obj, args.guard)
    rep.subject += f"[{tname}]"
    out = _finish(f"audit {args.theorem}", [rep])
    if "verdict" in rep.data:
        out.lines.append(f"verdict: {rep.data['verdict']} ({rep.data['true_cases']}/{rep.data['cases']} cases true)")
    return out


def cmd_corpus(args) -> Outcome:
    extra = []
    if args.seed_corpus:
        for path in sorted(Path(args.seed_corpus).glob("*.json")):
            try:
                ws = parse_document(_read_json(str(path)))
            except InputError as exc:
                raise InputError(exc.pointer, f"{path.name}: {exc.message}") from None
            tops = dict(ws.topologies) or {"trivial": trivial_topology(ws.category)}
            extra.append(Instance(path.stem, ws.category, tops, frame=ws.frame))
    result = run_corpus(extra, args.guard)
    lines = []
    for inst in result["instances"]:
        lines.append(f"{inst['name']}: {'PASS' if inst['ok'] else 'FAIL'}")
        for chk in inst["checks"]:
            if not chk["ok"]:
                lines.append(f"  FAIL {chk['subject']}: {chk['violations'][0]['message']}")
    lines.append(f"corpus: {'PASS' if result['ok'] else 'FAIL'}")
    return Outcome({"command": "corpus", **result}, lines, 0 if result["ok"] else 1)


def cmd_run(args) -> Outcome:
    """Run every query recorded in the document."""
    ws = _load(args)
    outcomes = []
    for i, q in enumerate(ws.queries):
        argv = [q["command"], *q.get("args", []), "--input", args.input]
        for flag in ("topology", "object", "level", "guard", "n"):
            if flag in q:
                argv += [f"--{flag}", str(q[flag])]
        try:
            sub = build_parser().parse_args(argv)
        except SystemExit:
            raise InputError(f"/queries/{i}", "query does not parse as a command") from None
        if sub.func is cmd_run:
            raise InputError(f"/queries/{i}", "queries cannot recurse into run")
        outcomes.append(sub.func(sub))
    code = max((o.code for o in outcomes), default=0)
    lines = [ln for o in outcomes for ln in o.lines]
    return Outcome({"command": "run", "results": [o.payload for o in outcomes]}, lines, code)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", help="workspace document (JSON)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--level", choices=("basic", "full"), default="full", help="topology validation level")
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="max sieves per object for enumeration")
    common.add_argument("--topology", help="topology name (default: the only one, or 'canonical')")
    common.add_argument("--object", help="object of a sieve argument when it cannot be inferred")
    common.add_argument("--n", type=int, default=3, help="number of union members for the corollary audit")

    parser = argparse.ArgumentParser(prog="sievefilters", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positionals, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate)
    add("sieves", cmd_sieves, "obj")
    add("pullback", cmd_pullback, "h", "sieve")
    fp = add("filter", cmd_filter, "action", "name")
    fp.set_defaults(func=cmd_filter)
    add("ultra", cmd_ultra, "name")
    add("converge", cmd_converge, "filter", "point")
    add("closure", cmd_closure, "sieve")
    add("cluster", cmd_cluster, "filter", "point")
    add("audit", cmd_audit, "theorem", "obj")
    cp = add("corpus", cmd_corpus)
    cp.add_argument("--seed-corpus", help="directory of extra documents to audit")
    add("run", cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "filter" and args.action != "gen":
        parser.error("filter supports only: filter gen NAME")
    try:
        out = args.func(args)
    except (InputError, UnknownMorphism, NoTerminalObject, SizeGuardExceeded) as exc:
        pointer = getattr(exc, "pointer", "")
        message = getattr(exc, "message", str(exc))
        if args.format == "json":
            sys.stdout.write(dumps({"error": message, "pointer": pointer}))
        else:
            print(f"error: {pointer or '/'}: {message}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(dumps(out.payload))
    else:
        print("\n".join(out.lines))
    return out.code


if __name__ == "__main__":
    sys.exit(main())
