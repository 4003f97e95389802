import io
import json
import subprocess
import sys

from possreason import cli, crosscheck
from possreason.cli import main
from possreason.fuzzy import FuzzySet


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_yale_headline():
    code, text = run("run", "--builtin", "yale", "--query", "alive@3")
    assert code == 0
    assert text.splitlines()[0] == "alive@3: REFUTED (poss(true)=0, cert(false)=1)"


def test_nixon_all_unknown():
    code, text = run("run", "--builtin", "nixon", "--query", "all")
    assert code == 0
    heads = [line for line in text.splitlines() if not line.startswith(" ")]
    assert [h.split(":")[0] for h in heads] == ["V", "U", "W"]
    assert all(": UNKNOWN " in h for h in heads)


def test_kb_queries_used_by_default():
    _, text = run("run", "--builtin", "nixon-quaker-only")
    assert text.splitlines()[0] == "U: ENTAILED (poss(pacifist)=1, cert(pacifist)=1)"


def test_missing_file(tmp_path, capsys):
    code, _ = run("run", str(tmp_path / "nonexistent.kb"))
    assert code == cli.EXIT_USAGE
    assert "cannot read" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run("run")[0] == cli.EXIT_USAGE
    assert run("run", "--builtin", "tweety")[0] == cli.EXIT_USAGE
    assert run("run", "--builtin", "yale", "--threshold", "0.2")[0] == cli.EXIT_USAGE
    assert run("run", "--builtin", "yale", "--query", "nobody")[0] == cli.EXIT_USAGE
    assert run("frobnicate")[0] == cli.EXIT_USAGE


def test_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.kb"
    f.write_text("universe B = { t, f }\nvar p : B\nfact F: p is {t/2}\n")
    assert run("run", str(f))[0] == cli.EXIT_PARSE
    assert "3:" in capsys.readouterr().err


def test_schedule_error(tmp_path, capsys):
    f = tmp_path / "cycle.kb"
    f.write_text(
        "universe B = { t, f }\n"
        "var p : B\nvar r : B\nvar s : B\nvar x : B\nvar q@1 : B\nvar q@2 : B\n"
        "default R1: if p is {t} then q@1 is {t}\n"
        "default R2: if p is {t} and r is {t} and s is {t} then q@2 is {t}\n"
        "default R3: if p is {t} and r is {t} then x is {t}\n"
    )
    assert run("run", str(f))[0] == cli.EXIT_SCHEDULE
    assert "R1" in capsys.readouterr().err


def test_resource_error(capsys):
    assert run("run", "--builtin", "yale", "--max-cells", "16")[0] == cli.EXIT_RESOURCE


UNCONDITIONAL = """\
universe C = { red, green, blue }
var colour : C
fact F: colour is {red, green}
default T: typically colour is {green, blue}
query colour
"""


def test_oracle_check_ok(tmp_path):
    f = tmp_path / "u.kb"
    f.write_text(UNCONDITIONAL)
    code, text = run("run", str(f), "--oracle-check")
    assert code == 0
    assert "layer 1 T: ok" in text
    assert "  green: poss=1 cert=1 ENTAILED" in text


def test_oracle_check_without_applicable_steps():
    code, text = run("run", "--builtin", "yale", "--oracle-check")
    assert code == 0
    assert "no applicable steps" in text


def test_oracle_mismatch_exit(tmp_path, monkeypatch):
    f = tmp_path / "u.kb"
    f.write_text(UNCONDITIONAL)
    monkeypatch.setattr(crosscheck, "default_combine_oracle", lambda a, b, limit: FuzzySet.full(a.universe))
    code, text = run("run", str(f), "--oracle-check")
    assert code == cli.EXIT_ORACLE
    assert "mismatch" in text


def test_machine_output_matches_text():
    _, text = run("run", "--builtin", "nixon-republican-only", "--query", "all")
    code, raw = run("run", "--builtin", "nixon-republican-only", "--query", "all", "--format", "machine")
    assert code == 0
    doc = json.loads(raw)
    assert doc["input"] == "builtin:nixon-republican-only"
    assert doc["schedule"] == [["F1"], ["P1", "P2"]]
    for q in doc["queries"]:
        for r in q["results"]:
            line = f"  {r['label']}: poss={r['poss']} cert={r['cert']} {r['classification']}"
            assert line in text
    u = next(q for q in doc["queries"] if q["variable"] == "U")
    assert u["projected"] == {"pacifist": 0, "non-pacifist": 1}


def test_machine_trace():
    _, raw = run("run", "--builtin", "yale", "--trace", "--format", "machine", "--oracle-check")
    doc = json.loads(raw)
    assert [rec["layer"] for rec in doc["trace"]] == [0, 1, 2, 3]
    assert doc["trace"][3]["h"]["alive@3"] == {"true": 0, "false": 1}
    assert doc["oracle_checks"] == []


def test_graded_output(tmp_path):
    f = tmp_path / "g.kb"
    f.write_text("universe B = { t, f }\nvar p : B\nfact F: p is {t, f/0.25}\n")
    _, text = run("run", str(f))
    assert "  f: poss=0.250000 cert=0 REFUTED" not in text
    assert "  f: poss=0.250000 cert=0 UNKNOWN" in text
    _, text = run("run", str(f), "--threshold", "0.75")
    assert "  f: poss=0.250000 cert=0 REFUTED" in text
    assert "p: ENTAILED (poss(t)=1, cert(t)=0.750000)" in text


def test_trace_is_deterministic():
    first = run("run", "--builtin", "yale", "--trace")[1]
    assert first == run("run", "--builtin", "yale", "--trace")[1]
    assert "layer 2: introduce {D3, D4}" in first
    assert "schedule:" in first and "  layer 3: {D2}" in first


def test_show():
    code, text = run("show", "--builtin", "yale")
    assert code == 0
    assert "default D1: if loaded@1 is {true} then loaded@2 is {true}" in text
    assert text.rstrip().endswith("layer 3: {D2}")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "possreason", "run", "--builtin", "yale"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("alive@3: REFUTED")
