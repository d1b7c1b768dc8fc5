import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from pantscurves.cli import run

SCHEMA = json.loads(resources.files("pantscurves").joinpath("schema/output-record.schema.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def record(*argv):
    code, out, _ = call(*argv, "--format", "json")
    rec = json.loads(out)
    jsonschema.validate(rec, SCHEMA)
    return code, rec


def test_si_text():
    assert call("si", "aB") == (0, "1\n", "")


def test_int_text():
    assert call("int", "a", "aB") == (0, "0\n", "")


def test_shorthand_input():
    assert call("si", "aC")[1] == "1\n"


def test_si_oracle():
    code, rec = record("si", "aaB", "--oracle")
    assert code == 0
    assert rec["payload"] == {"word": "aaB", "si": 2, "oracle_si": 2, "agree": True}


def test_int_oracle():
    code, rec = record("int", "aB", "aab", "--oracle")
    assert code == 0 and rec["payload"]["i"] == rec["payload"]["oracle_i"] == 2


def test_si_classes_json():
    code, rec = record("si-classes", "2")
    assert code == 0
    assert rec["payload"]["classes"] == ["aaB", "aBB", "aaab", "aabb", "abaB", "abAb", "abbb", "aabab", "ababb"]
    assert rec["payload"]["count"] == 9


def test_si_classes_pretty():
    _, rec = record("si-classes", "1", "--pretty")
    assert rec["payload"]["pretty"] == ["aB", "aC", "Cb"]


def test_si_classes_cap_too_small_exits_3():
    code, out, err = call("si-classes", "2", "--cap", "3")
    assert code == 3 and out == ""
    assert "si-classes" in err and "CapUnverifiedError" in err


def test_length_cap_from_env(monkeypatch):
    monkeypatch.setenv("PANTSCURVES_LENGTH_CAP", "3")
    assert call("si-classes", "2")[0] == 3


def test_canon():
    _, rec = record("canon", "(aB)^2")
    p = rec["payload"]
    assert (p["word"], p["root"], p["exponent"], p["is_power"], p["boundary_parallel"]) == ("aBaB", "aB", 2, True, False)


def test_canon_oriented():
    _, rec = record("canon", "c", "--oriented")
    assert rec["payload"]["word"] == "AB"
    assert rec["settings"]["orientation"] == "oriented"


def test_triple():
    assert call("triple", "aB")[1] == "(2, 2, 2)\n"
    assert call("triple", "aB", "--format", "csv")[1] == "word,vAB,vCb,vAC\naB,2,2,2\n"


def test_enum_csv():
    code, out, _ = call("enum", "--max-len", "2", "--format", "csv", "--include-boundary")
    assert code == 0
    assert out == "word\na\nb\nab\naB\n"
    assert "\r" not in out


def test_enum_options():
    _, rec = record("enum", "--max-len", "2", "--powers", "--include-boundary")
    assert rec["payload"]["classes"] == ["a", "b", "aa", "ab", "aB", "bb"]
    _, rec = record("enum", "--max-len", "2", "--oriented")
    assert rec["payload"]["classes"] == ["aB", "Ab"]


def test_kequiv():
    code, rec = record("kequiv", "abAbaB", "abAbAB", "--k", "2")
    assert code == 0 and rec["payload"]["equivalent"] is True
    assert rec["payload"]["vector1"] == rec["payload"]["vector2"]
    _, rec = record("kequiv", "abAbaB", "abAbAB", "--k", "1")
    assert rec["payload"]["equivalent"] is False


def test_scan_triples_round_trip():
    code, out, _ = call("scan-triples", "--max-len", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    _, rec = record("scan-triples", "--max-len", "5")
    assert [r["word"] for r in rows] == [d["word"] for d in rec["payload"]["dataset"]]
    observed = sorted({tuple(sorted(int(r[k]) for k in ("vAB", "vCb", "vAC"))) for r in rows})
    assert [list(t) for t in observed] == rec["payload"]["observed_sorted"]
    text = call("scan-triples", "--max-len", "5")[1]
    assert "observed sorted triples: " + ", ".join(str(t) for t in observed) in text


def test_classify_two():
    code, rec = record("classify-two", "--max-len", "5")
    assert code == 0 and rec["payload"]["non_members"] == []


def test_class_222():
    code, rec = record("class-222", "--max-len", "4")
    assert code == 0
    assert {"aB", "aab", "abb", "aBB"} <= set(rec["payload"]["classes"])


@pytest.mark.parametrize(
    "argv",
    [[], ["nope"], ["si"], ["si", "x"], ["si", "aA"], ["si", "a^0"], ["enum"], ["enum", "--max-len", "0"],
     ["si-classes", "-1"], ["si", "aB", "--format", "xml"]],
)
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == "" and err


def test_verify_small_record_is_valid():
    code, rec = record("verify-paper", "--max-len", "5", "--max-exp", "2")
    names = [c["claim"] for c in rec["payload"]["claims"]]
    assert names[0] == "si=1 census"
    assert code == (0 if rec["payload"]["all_passed"] else 1)


def test_deterministic_output():
    a = call("scan-triples", "--max-len", "6", "--format", "json")
    b = call("scan-triples", "--max-len", "6", "--format", "json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pantscurves", "si", "aB"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
