import json
import subprocess
import sys
from pathlib import Path

import pytest

from sievefilters import corpus
from sievefilters.cli import main
from sievefilters.convergence import neighborhood_filter_check
from sievefilters.document import InputError, dump_document, dumps, load_preset, parse_document
from sievefilters.fincat import Point
from sievefilters.frames import NotDistributive
from sievefilters.sieve import Sieve

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_validate_pt(capsys):
    code, out, _ = run(capsys, "validate", "-i", str(FIX / "pt.json"))
    assert code == 0
    assert "topology[pt]: PASS" in out


def test_validate_reports_invalid_base(capsys):
    code, payload = run_json(capsys, "validate", "-i", str(FIX / "pp.json"))
    assert code == 1
    bad = [r for r in payload["reports"] if not r["ok"]]
    assert [r["subject"] for r in bad] == ["base[fg]"]
    assert bad[0]["violations"][0]["law"] == "B1"


def test_closure_of_p0(capsys):
    code, payload = run_json(capsys, "closure", '["p0","e0"]', "-i", str(FIX / "pt.json"))
    assert code == 0
    assert payload["points"] == ["p0", "p1"]


def test_sieves_on_b2(capsys):
    code, payload = run_json(capsys, "sieves", "1", "-i", str(FIX / "b2.json"))
    assert code == 0 and payload["count"] == 6
    assert payload["sieves"][0] == [] and payload["sieves"][-1] == ["0->1", "1->1", "a->1", "b->1"]


def test_pullback(capsys):
    code, payload = run_json(capsys, "pullback", "p0", "e0,e1,p0,p1", "-i", str(FIX / "pt.json"))
    assert code == 0
    assert payload["pullback"] == ["c", "id_T"]


def test_filter_gen_and_ultra(capsys):
    code, payload = run_json(capsys, "filter", "gen", "up_p0", "-i", str(FIX / "pt.json"))
    assert code == 0
    assert payload["filter"]["C"] == [["e0", "p0"], ["e0", "e1", "p0", "p1"], ["e0", "e1", "id_C", "p0", "p1"]]
    code, payload = run_json(capsys, "ultra", "coarse", "-i", str(FIX / "pt.json"))
    assert code == 0 and payload["is_ultrafilter"]


def test_converge_and_cluster(capsys):
    code, payload = run_json(capsys, "converge", "coarse", "p0", "-i", str(FIX / "pt.json"))
    assert code == 0 and not payload["converges"]
    assert payload["missing"] == [["e0", "e1", "p0", "p1"]]
    code, payload = run_json(capsys, "cluster", "up_p0", "p1", "-i", str(FIX / "pt.json"))
    assert code == 0 and payload["cluster"]


@pytest.mark.parametrize("theorem", ["4.3", "4.5", "4.6", "prime", "corollary"])
def test_audits_pass_on_pt(capsys, theorem):
    code, payload = run_json(capsys, "audit", theorem, "C", "-i", str(FIX / "pt.json"))
    assert code == 0 and payload["ok"]


def test_frame_preset_has_canonical_topology(capsys):
    code, payload = run_json(capsys, "audit", "4.5", "1", "-i", str(FIX / "b2.json"), "--topology", "canonical")
    assert code == 0
    assert payload["reports"][0]["data"]["cases"] == 5


def test_input_errors_exit_2(capsys, tmp_path):
    code, payload = run_json(capsys, "validate", "-i", str(FIX / "n5.json"))
    assert code == 2 and "distributive" in payload["error"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"category": {"preset": "pointed-two"}, "filters": {"f": {"C": [["p9"]]}}}))
    code, payload = run_json(capsys, "validate", "-i", str(bad))
    assert code == 2 and payload["pointer"].startswith("/filters/f/C")
    code, _, err = run(capsys, "sieves", "Q", "-i", str(FIX / "pt.json"))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "audit", "4.5", "1", "-i", str(FIX / "b2.json"), "--guard", "3")
    assert code == 2


def test_presets():
    pp = parse_document({"category": {"preset": "parallel-pair"}})
    assert sorted(pp.category.morphisms) == ["f", "g", "id_X", "id_Y"]
    b2 = parse_document({"category": {"preset": "frame", "params": {"name": "B2"}}})
    assert "canonical" in b2.topologies
    with pytest.raises(InputError):
        load_preset("klein-bottle")
    with pytest.raises((InputError, NotDistributive)):
        parse_document({"category": {"preset": "frame", "params": {"name": "N5"}}})


def test_round_trip_is_byte_identical():
    for path in sorted(FIX.glob("*.json")):
        if path.stem == "n5":
            continue
        once = dump_document(parse_document(json.loads(path.read_text())))
        twice = dump_document(parse_document(json.loads(once)))
        assert once == twice, path.name


def test_inline_category_round_trip():
    doc = {"category": corpus.POINTED_TWO}
    once = dump_document(parse_document(doc))
    assert dump_document(parse_document(json.loads(once))) == once


def test_counterexample_document_can_be_rerun(capsys, tmp_path, pt, pt_j, monkeypatch):
    from sievefilters import convergence

    real = convergence.cover_neighborhoods
    members = frozenset([Sieve("C", frozenset({"e0", "p0"})), Sieve("C", frozenset({"e1", "p1"})), pt_j.sorted_at("C")[-1]])
    broken = convergence.NeighborhoodSystem(Point("p0", "C"), "C", members)
    monkeypatch.setattr(convergence, "cover_neighborhoods", lambda cat, j, p: broken)
    rep = neighborhood_filter_check(pt, pt_j, Point("p0", "C"))
    monkeypatch.setattr(convergence, "cover_neighborhoods", real)
    doc = tmp_path / "cx.json"
    doc.write_text(dumps(rep.data["counterexample"]))
    code, payload = run_json(capsys, "run", "-i", str(doc))
    assert code == 0
    assert payload["results"][0]["command"] == "audit 4.3"


def test_run_executes_queries(capsys):
    code, payload = run_json(capsys, "run", "-i", str(FIX / "pt.json"))
    assert code == 0
    assert [r["command"] for r in payload["results"]] == ["closure", "converge", "cluster", "audit 4.5"]


def test_corpus_is_deterministic():
    cmd = [sys.executable, "-m", "sievefilters", "corpus", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_seed_corpus(capsys):
    code, payload = run_json(capsys, "corpus", "--seed-corpus", str(FIX / "seed"))
    assert code == 0
    assert [i["name"] for i in payload["instances"]][-1] == "pt_copy"
