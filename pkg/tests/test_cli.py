import json
from pathlib import Path

import pytest

from gradedproj.cli import main
from gradedproj.problem import InputError, parse_document, parse_text

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDEN = Path(__file__).resolve().parent / "golden"

EXPECTED_EXIT = {
    "p1_relevance": 0,
    "z2_not_relevant": 1,
    "torsion_relevance": 0,
    "p1_potion_eq": 0,
    "quotient_potion_eq": 0,
    "p1_magic2": 0,
    "weighted_magic2": 0,
    "p1_magic4": 0,
    "p1_atlas": 0,
    "p1xp1_atlas": 0,
    "p1_functorial": 0,
    "p1_closed_immersion": 0,
    "p1xp1_product": 0,
    "weighted_twist": 0,
    "p1_twist": 0,
    "p1_negligible": 0,
    "p1_not_negligible": 1,
}

CORPUS_FILES = sorted(CORPUS.glob("*.json"))


def run(tmp_path, *args):
    report = tmp_path / "report.json"
    code = main([*args, "--report", str(report), "--quiet"])
    return code, report.read_text() if report.exists() else None


def test_corpus_is_covered():
    assert {p.stem for p in CORPUS_FILES} == set(EXPECTED_EXIT)


@pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda p: p.stem)
def test_corpus_exit_codes_and_golden(path, tmp_path):
    code, text = run(tmp_path, "--input", str(path))
    assert code == EXPECTED_EXIT[path.stem]
    assert text == (GOLDEN / f"{path.stem}.report.json").read_text()


@pytest.mark.parametrize("path", sorted((CORPUS / "invalid").glob("*.json")), ids=lambda p: p.stem)
def test_invalid_inputs(path, tmp_path, capsys):
    code, text = run(tmp_path, "--input", str(path))
    assert code == 3 and text is None
    assert "input error" in capsys.readouterr().err


def test_error_messages_name_the_entity(capsys):
    main(["--input", str(CORPUS / "invalid" / "inhomogeneous_ideal.json")])
    assert "ring.ideal[0]" in capsys.readouterr().err
    main(["--input", str(CORPUS / "invalid" / "dangling_member.json")])
    assert "'Nope'" in capsys.readouterr().err


def test_minimal_document():
    prob = parse_text('{"group": {"rank": 1}, "ring": {"variables": [{"name": "x", "degree": [1]}]}}')
    assert prob.ring.vars == ("x",)


def test_schema_rejects_unknown_fields():
    with pytest.raises(InputError):
        parse_document({"group": {"rank": 1}, "ring": {"variables": []}, "bogus": 1})


def test_command_override_and_flags(tmp_path, capsys, monkeypatch):
    path = str(CORPUS / "p1_magic2.json")
    code, text = run(tmp_path, "magic2", "--input", path, "--seed", "5", "--samples", "4")
    report = json.loads(text)
    assert code == 0 and report["seed"] == 5 and report["samples"] == 4
    assert report["verdicts"][0]["round_trips"]["forward_backward"] == "4/4"
    monkeypatch.setenv("GRADEDPROJ_SEED", "9")
    code, text = run(tmp_path, "--input", path, "--samples", "2")
    assert json.loads(text)["seed"] == 9
    code, text = run(tmp_path, "--input", path, "--samples", "2", "--seed", "1")
    assert json.loads(text)["seed"] == 1


def test_command_from_cli_beats_document(tmp_path):
    code, text = run(tmp_path, "check-relevance", "--input", str(CORPUS / "p1_atlas.json"))
    assert code == 0 and json.loads(text)["command"] == "check-relevance"


def test_missing_target(tmp_path):
    code, _ = run(tmp_path, "functorial", "--input", str(CORPUS / "p1_atlas.json"))
    assert code == 3


def test_inconclusive_exit(tmp_path):
    code, text = run(tmp_path, "--input", str(CORPUS / "p1_closed_immersion.json"), "--degree-bound", "0")
    assert code == 2
    assert json.loads(text)["verdicts"][0]["status"] == "inconclusive"


def test_human_output(capsys):
    code = main(["--input", str(CORPUS / "z2_not_relevant.json")])
    out = capsys.readouterr().out
    assert code == 1 and "[FAIL] relevance X: not relevant" in out


def test_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO((CORPUS / "p1_relevance.json").read_text()))
    assert main(["--input", "-", "--quiet"]) == 0


def test_atlas_with_irrelevant_member_fails(tmp_path):
    doc = json.loads((CORPUS / "z2_not_relevant.json").read_text())
    doc["families"] = [{"name": "F", "members": ["X"]}]
    doc["command"] = "atlas"
    path = tmp_path / "in.json"
    path.write_text(json.dumps(doc))
    code, text = run(tmp_path, "--input", str(path))
    assert code == 1 and "not relevant" in json.loads(text)["verdicts"][0]["result"]


def test_report_has_no_timings(tmp_path):
    _, text = run(tmp_path, "--input", str(CORPUS / "p1_atlas.json"))
    assert list(json.loads(text)) == ["command", "input_digest", "seed", "samples", "degree_bound",
                                      "verdicts", "certificates", "warnings"]
    assert "seconds" not in text
