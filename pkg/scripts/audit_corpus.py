"""Run the built-in audit over the corpus and write the JSON report.

    python scripts/audit_corpus.py [--out results/corpus.json] [--guard 20]
"""
import argparse
import sys
from pathlib import Path

from sievefilters.audit import run_corpus
from sievefilters.document import dumps


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/corpus.json"))
    ap.add_argument("--guard", type=int, default=20)
    args = ap.parse_args()

    result = run_corpus(guard=args.guard)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(dumps(result), encoding="utf-8")
    for inst in result["instances"]:
        failed = [c["subject"] for c in inst["checks"] if not c["ok"]]
        verdicts = [
            f"{c['subject']}={c['data']['verdict']}"
            for c in inst["checks"]
            if "verdict" in c.get("data", {})
        ]
        print(f"{inst['name']:>3}  {'ok' if inst['ok'] else 'FAIL'}  checks={len(inst['checks'])}"
              + (f"  failed={failed}" if failed else ""))
        for v in verdicts:
            print(f"       {v}")
    print(f"wrote {args.out}")
    return 0 if result["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
